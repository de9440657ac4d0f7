use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fusionquiver::classify::{
    check_witness, classify, decompose_over_basis, ActionWitness, Labeling, WitnessDocument,
};
use fusionquiver::fusion::FusionRing;
use fusionquiver::quiver::Quiver;

fn combination(ring: &FusionRing, n: &[u32]) -> Vec<Vec<u32>> {
    let r = ring.rank();
    let mut m = vec![vec![0; r]; r];
    for (x, &c) in n.iter().enumerate() {
        let f = ring.fusion_matrix(x).unwrap().entries;
        for a in 0..r {
            for b in 0..r {
                m[a][b] += c * f[a][b];
            }
        }
    }
    m
}

/// Assemble a quiver from random coefficients on a random labeling.
fn build(rng: &mut StdRng, ring: &FusionRing, groups: usize) -> (Quiver, ActionWitness) {
    let r = ring.rank();
    let n = r * groups;
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut partition: Vec<Vec<usize>> = order.chunks(r).map(|c| {
        let mut g = c.to_vec();
        g.sort_unstable();
        g
    }).collect();
    partition.sort();
    let bijections: Vec<Vec<usize>> = (0..groups)
        .map(|_| {
            let mut psi: Vec<usize> = (0..r).collect();
            for i in (1..r).rev() {
                psi.swap(i, rng.gen_range(0..=i));
            }
            psi
        })
        .collect();
    let labeling = Labeling { partition, bijections };
    let z: Vec<Vec<Vec<u32>>> = (0..groups)
        .map(|_| (0..groups).map(|_| (0..r).map(|_| rng.gen_range(0..=1)).collect()).collect())
        .collect();
    let slots = labeling.slots();
    let mut adj = vec![vec![0; n]; n];
    for v in 0..n {
        for w in 0..n {
            let ((i, a), (j, b)) = (slots[v], slots[w]);
            adj[w][v] = combination(ring, &z[i][j])[b][a];
        }
    }
    (Quiver::from_matrix(adj).unwrap(), ActionWitness { labeling, z })
}

#[test]
fn decomposition_round_trips() {
    for p in [5u64, 7, 11, 13] {
        let ring = FusionRing::psu2(p).unwrap();
        let r = ring.rank();
        let mut rng = StdRng::seed_from_u64(p);
        for _ in 0..200 {
            let n: Vec<u32> = (0..r).map(|_| rng.gen_range(0..=3)).collect();
            assert_eq!(decompose_over_basis(&combination(&ring, &n), &ring).unwrap(), Some(n.clone()), "p = {p}");
        }
        let mut off = combination(&ring, &vec![1; r]);
        off[0][r - 1] += 1;
        assert_eq!(decompose_over_basis(&off, &ring).unwrap(), None, "perturbed at p = {p}");
    }
}

#[test]
fn built_actions_are_recovered() {
    let mut rng = StdRng::seed_from_u64(3);
    for (p, groups) in [(5u64, 1), (5, 2), (5, 3), (7, 1), (7, 2), (11, 1)] {
        let ring = FusionRing::psu2(p).unwrap();
        for _ in 0..5 {
            let (q, witness) = build(&mut rng, &ring, groups);
            assert!(check_witness(&q, &ring, &witness).unwrap());
            let found = classify(&q, &ring);
            assert!(found.contains(&witness), "p = {p}, groups = {groups}");
            assert!(found.iter().all(|w| check_witness(&q, &ring, w).unwrap()));
        }
    }
}

#[test]
fn classification_is_invariant_under_relabeling() {
    let ring = FusionRing::psu2(5).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let (q, _) = build(&mut rng, &ring, 2);
        let perm = vec![2, 0, 3, 1];
        let moved = q.permute(&perm).unwrap();
        let transport = |w: &ActionWitness| {
            // move each group's vertices, then restore the canonical group order
            let mut groups: Vec<(Vec<usize>, Vec<usize>, usize)> = w
                .labeling
                .partition
                .iter()
                .zip(&w.labeling.bijections)
                .enumerate()
                .map(|(k, (g, psi))| {
                    let mut pairs: Vec<(usize, usize)> = g.iter().map(|&v| perm[v]).zip(psi.iter().copied()).collect();
                    pairs.sort_unstable();
                    (pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect(), k)
                })
                .collect();
            groups.sort();
            let order: Vec<usize> = groups.iter().map(|g| g.2).collect();
            let z = order.iter().map(|&i| order.iter().map(|&j| w.z[i][j].clone()).collect()).collect();
            ActionWitness {
                labeling: Labeling {
                    partition: groups.iter().map(|g| g.0.clone()).collect(),
                    bijections: groups.iter().map(|g| g.1.clone()).collect(),
                },
                z,
            }
        };
        let before: BTreeSet<ActionWitness> = classify(&q, &ring).iter().map(transport).collect();
        let after: BTreeSet<ActionWitness> = classify(&moved, &ring).into_iter().collect();
        assert_eq!(before, after);
    }
}

#[test]
fn single_edge_has_no_action() {
    let q = Quiver::from_matrix(vec![vec![0, 0], vec![1, 0]]).unwrap();
    assert!(classify(&q, &FusionRing::psu2(5).unwrap()).is_empty());
    // over the trivial ring every vertex is its own group, so exactly one action exists
    assert_eq!(classify(&q, &FusionRing::trivial()).len(), 1);
}

#[test]
fn witness_documents_accept_any_group_order() {
    let ring = FusionRing::psu2(5).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    let (q, witness) = build(&mut rng, &ring, 3);
    let doc = witness.to_document(&q, &ring);
    let mut value = serde_json::to_value(&doc).unwrap();
    // reverse the group order and renumber the Z keys to match
    let groups = 3;
    let obj = value.as_object_mut().unwrap();
    for key in ["partition", "bijections"] {
        obj[key].as_array_mut().unwrap().reverse();
    }
    let z = obj["Z"].as_object().unwrap().clone();
    let renamed: serde_json::Map<String, serde_json::Value> = z
        .into_iter()
        .map(|(k, v)| {
            let (i, j) = k.split_once(',').unwrap();
            let flip = |s: &str| groups - 1 - s.parse::<usize>().unwrap();
            (format!("{},{}", flip(i), flip(j)), v)
        })
        .collect();
    obj["Z"] = serde_json::Value::Object(renamed);
    let reordered: WitnessDocument = serde_json::from_value(value).unwrap();
    assert_eq!(ActionWitness::from_document(&reordered, &q, &ring).unwrap(), witness);
}

#[test]
fn malformed_witnesses_are_rejected() {
    let ring = FusionRing::psu2(5).unwrap();
    let q = Quiver::from_matrix(vec![vec![0, 1], vec![1, 1]]).unwrap();
    let bad = ActionWitness {
        labeling: Labeling { partition: vec![vec![0, 1]], bijections: vec![vec![0, 0]] },
        z: vec![vec![vec![0, 1]]],
    };
    assert!(check_witness(&q, &ring, &bad).is_err());
    let good = ActionWitness {
        labeling: Labeling::single(vec![0, 1]),
        z: vec![vec![vec![0, 1]]],
    };
    assert!(check_witness(&q, &ring, &good).unwrap());
}
