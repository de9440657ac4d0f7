use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use fusionquiver::quiver::{enumerate_paths, scc, tilde, ExtNat, Path, PathElement, Quiver};

fn adjacency(max_n: usize, max_entry: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1..=max_n).prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(0..=max_entry, n), n))
}

/// Paths of each length by repeated multiplication with the adjacency matrix.
fn brute_force_tilde(adj: &[Vec<u32>]) -> Vec<Vec<ExtNat>> {
    let n = adj.len();
    let mul = |a: &Vec<Vec<u128>>| -> Vec<Vec<u128>> {
        (0..n)
            .map(|w| (0..n).map(|v| (0..n).map(|u| adj[w][u] as u128 * a[u][v]).sum()).collect())
            .collect()
    };
    let mut power: Vec<Vec<u128>> = (0..n).map(|w| (0..n).map(|v| (w == v) as u128).collect()).collect();
    let mut short = vec![vec![0u128; n]; n];
    for _ in 0..n {
        for w in 0..n {
            for v in 0..n {
                short[w][v] += power[w][v];
            }
        }
        power = mul(&power);
    }
    // a path of length >= n repeats a vertex, and one exists iff one of length n..2n exists
    let mut long = vec![vec![false; n]; n];
    for _ in n..2 * n {
        for w in 0..n {
            for v in 0..n {
                long[w][v] |= power[w][v] > 0;
            }
        }
        power = mul(&power);
    }
    (0..n)
        .map(|w| {
            (0..n)
                .map(|v| if long[w][v] { ExtNat::Infinite } else { ExtNat::Finite(short[w][v] as u64) })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn tilde_matches_path_counting(adj in adjacency(5, 2)) {
        let q = Quiver::from_matrix(adj.clone()).unwrap();
        prop_assert_eq!(tilde(&q).unwrap().entries, brute_force_tilde(&adj));
    }

    #[test]
    fn condensation_is_topological(adj in adjacency(6, 1)) {
        let q = Quiver::from_matrix(adj.clone()).unwrap();
        let c = scc(&q);
        for (w, row) in adj.iter().enumerate() {
            for (v, &a) in row.iter().enumerate() {
                if a > 0 {
                    prop_assert!(c.component_of[v] <= c.component_of[w]);
                }
            }
        }
    }

    #[test]
    fn path_count_matches_tilde_on_acyclic(adj in adjacency(5, 2)) {
        // keep only arrows going up so the quiver is acyclic
        let upper: Vec<Vec<u32>> = adj
            .iter()
            .enumerate()
            .map(|(w, row)| row.iter().enumerate().map(|(v, &a)| if v < w { a } else { 0 }).collect())
            .collect();
        let q = Quiver::from_matrix(upper).unwrap();
        let t = tilde(&q).unwrap();
        let paths: Vec<Path> = enumerate_paths(&q, q.vertex_count()).into_iter().flatten().collect();
        let total: u64 = t.entries.iter().flatten().map(|e| e.finite().unwrap()).sum();
        prop_assert_eq!(paths.len() as u64, total);
    }

    #[test]
    fn multiplication_is_associative(adj in adjacency(3, 2), picks in proptest::collection::vec((0usize..64, -3i64..=3), 9)) {
        let q = Arc::new(Quiver::from_matrix(adj).unwrap());
        let basis: Vec<Path> = enumerate_paths(&q, 3).into_iter().flatten().collect();
        let element = |chunk: &[(usize, i64)]| {
            PathElement::from_terms(&q, chunk.iter().map(|&(i, c)| (basis[i % basis.len()].clone(), BigRational::from_integer(c.into()))))
        };
        let (a, b, c) = (element(&picks[0..3]), element(&picks[3..6]), element(&picks[6..9]));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let unit = PathElement::unit(&q);
        prop_assert_eq!(unit.multiply(&a).unwrap(), a.clone());
        prop_assert_eq!(a.multiply(&unit).unwrap(), a);
    }
}

#[test]
fn elements_from_different_quivers_do_not_mix() {
    let a = Arc::new(Quiver::from_matrix(vec![vec![0]]).unwrap());
    let same = Arc::new(Quiver::from_matrix(vec![vec![0]]).unwrap());
    let other = Arc::new(Quiver::from_matrix(vec![vec![1]]).unwrap());
    assert!(PathElement::unit(&a).multiply(&PathElement::unit(&same)).is_ok());
    assert!(PathElement::unit(&a).multiply(&PathElement::unit(&other)).is_err());
}
