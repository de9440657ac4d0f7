use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Quiver;
use crate::error::{Error, Result};

/// A value in `ℕ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);
    pub const ONE: ExtNat = ExtNat::Finite(1);

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Infinite
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    /// `∞ + x = ∞`; `None` on `u64` overflow.
    pub fn checked_add(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.checked_add(b).map(ExtNat::Finite),
            _ => Some(ExtNat::Infinite),
        }
    }

    /// `∞ · 0 = 0`, `∞ · x = ∞` for `x ≥ 1`.
    pub fn checked_mul(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.checked_mul(b).map(ExtNat::Finite),
            (ExtNat::Finite(0), _) | (_, ExtNat::Finite(0)) => Some(ExtNat::ZERO),
            _ => Some(ExtNat::Infinite),
        }
    }

    pub fn add(self, other: ExtNat) -> Result<ExtNat> {
        self.checked_add(other).ok_or(Error::Overflow)
    }

    pub fn mul(self, other: ExtNat) -> Result<ExtNat> {
        self.checked_mul(other).ok_or(Error::Overflow)
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("∞"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u64(*n),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(ExtNat::Finite(n)),
            Repr::S(s) if s == "inf" || s == "∞" => Ok(ExtNat::Infinite),
            Repr::S(s) => Err(serde::de::Error::custom(format!("expected integer or \"inf\", got {s:?}"))),
        }
    }
}

/// Strongly connected components in topological order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condensation {
    /// Components in topological order, ties broken by smallest vertex; each sorted.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// `successors[c]`: components reachable from `c` by one arrow, sorted.
    pub successors: Vec<Vec<usize>>,
    /// Whether the component carries a directed cycle (size > 1 or a loop).
    pub cyclic: Vec<bool>,
}

impl Condensation {
    pub fn is_acyclic(&self) -> bool {
        !self.cyclic.iter().any(|&c| c)
    }
}

fn reachability(adj: &[Vec<u32>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            seen[v] = true;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if adj[w][u] > 0 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn scc(q: &Quiver) -> Condensation {
    let adj = q.adjacency();
    let n = adj.len();
    let reach = reachability(adj);
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut raw_of = vec![usize::MAX; n];
    for v in 0..n {
        if raw_of[v] != usize::MAX {
            continue;
        }
        let comp: Vec<usize> = (v..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
        for &w in &comp {
            raw_of[w] = raw.len();
        }
        raw.push(comp);
    }

    let m = raw.len();
    let mut succ = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for u in 0..n {
        for w in 0..n {
            let (cu, cw) = (raw_of[u], raw_of[w]);
            if adj[w][u] > 0 && cu != cw && !succ[cu].contains(&cw) {
                succ[cu].push(cw);
                indeg[cw] += 1;
            }
        }
    }

    // raw components are already numbered by smallest vertex
    let mut heap: BinaryHeap<Reverse<usize>> = (0..m).filter(|&c| indeg[c] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse(c)) = heap.pop() {
        order.push(c);
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                heap.push(Reverse(d));
            }
        }
    }
    let mut rank = vec![0; m];
    for (i, &c) in order.iter().enumerate() {
        rank[c] = i;
    }

    let components: Vec<Vec<usize>> = order.iter().map(|&c| raw[c].clone()).collect();
    let component_of = raw_of.iter().map(|&c| rank[c]).collect();
    let successors = order
        .iter()
        .map(|&c| {
            let mut s: Vec<usize> = succ[c].iter().map(|&d| rank[d]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let cyclic = components.iter().map(|c| c.len() > 1 || adj[c[0]][c[0]] > 0).collect();
    Condensation { components, component_of, successors, cyclic }
}

/// The generated quiver: entry `(w, v)` counts paths `v → w` of every length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeMatrix {
    pub entries: Vec<Vec<ExtNat>>,
}

impl TildeMatrix {
    pub fn get(&self, w: usize, v: usize) -> ExtNat {
        self.entries[w][v]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Every nonzero entry is infinite.
    pub fn all_nonzero_infinite(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero() || e.is_infinite())
    }
}

fn paths_from(adj: &[Vec<u32>], cond: &Condensation, v: usize) -> Result<Vec<ExtNat>> {
    let n = adj.len();
    let mut count = vec![ExtNat::ZERO; n];
    for (c, comp) in cond.components.iter().enumerate() {
        let mut incoming = if comp.contains(&v) { ExtNat::ONE } else { ExtNat::ZERO };
        if cond.cyclic[c] {
            for &w in comp {
                for u in (0..n).filter(|&u| cond.component_of[u] != c) {
                    let term = ExtNat::from(adj[w][u] as u64).mul(count[u])?;
                    incoming = incoming.add(term)?;
                }
            }
            let value = if incoming.is_zero() { ExtNat::ZERO } else { ExtNat::Infinite };
            for &w in comp {
                count[w] = value;
            }
        } else {
            let w = comp[0];
            for u in (0..n).filter(|&u| u != w) {
                incoming = incoming.add(ExtNat::from(adj[w][u] as u64).mul(count[u])?)?;
            }
            count[w] = incoming;
        }
    }
    Ok(count)
}

/// Path counts by dynamic programming over the condensation.
///
/// Fails with [`Error::Overflow`] if a finite count exceeds `u64`.
pub fn tilde(q: &Quiver) -> Result<TildeMatrix> {
    let cond = scc(q);
    let adj = q.adjacency();
    let n = adj.len();
    let columns: Vec<Vec<ExtNat>> =
        (0..n).into_par_iter().map(|v| paths_from(adj, &cond, v)).collect::<Result<_>>()?;
    let entries = (0..n).map(|w| (0..n).map(|v| columns[v][w]).collect()).collect();
    Ok(TildeMatrix { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(adj: Vec<Vec<u32>>) -> Quiver {
        Quiver::from_matrix(adj).unwrap()
    }

    #[test]
    fn two_cycle_is_one_component_and_all_infinite() {
        let q2 = q(vec![vec![0, 1], vec![1, 0]]);
        let c = scc(&q2);
        assert_eq!(c.components, vec![vec![0, 1]]);
        assert!(c.cyclic[0]);
        let t = tilde(&q2).unwrap();
        assert!(t.entries.iter().flatten().all(|e| e.is_infinite()));
    }

    #[test]
    fn triangle() {
        // a -> b -> c, a -> c
        let tri = q(vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0]]);
        let c = scc(&tri);
        assert_eq!(c.components, vec![vec![0], vec![1], vec![2]]);
        assert!(c.is_acyclic());
        let t = tilde(&tri).unwrap();
        assert_eq!(t.get(2, 0), ExtNat::Finite(2));
        assert_eq!(t.get(1, 0), ExtNat::Finite(1));
        assert_eq!(t.get(0, 2), ExtNat::ZERO);
        for v in 0..3 {
            assert_eq!(t.get(v, v), ExtNat::ONE);
        }
    }

    #[test]
    fn edgeless_gives_identity() {
        let t = tilde(&q(vec![vec![0; 3]; 3])).unwrap();
        for w in 0..3 {
            for v in 0..3 {
                assert_eq!(t.get(w, v), ExtNat::from((w == v) as u64));
            }
        }
        assert_eq!(scc(&q(vec![vec![0]])).components, vec![vec![0]]);
    }

    #[test]
    fn topological_order_breaks_ties_by_smallest_vertex() {
        // 2 -> 0, 1 isolated
        let g = q(vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(scc(&g).components, vec![vec![1], vec![2], vec![0]]);
    }

    #[test]
    fn loop_downstream_makes_infinite() {
        // 0 -> 1, loop at 1, 1 -> 2
        let g = q(vec![vec![0, 0, 0], vec![1, 1, 0], vec![0, 1, 0]]);
        let t = tilde(&g).unwrap();
        assert_eq!(t.get(0, 0), ExtNat::ONE);
        assert!(t.get(1, 0).is_infinite());
        assert!(t.get(2, 0).is_infinite());
        assert!(t.get(1, 1).is_infinite());
        assert_eq!(t.get(2, 2), ExtNat::ONE);
        assert_eq!(t.get(0, 2), ExtNat::ZERO);
    }

    #[test]
    fn extnat_rules() {
        let inf = ExtNat::Infinite;
        assert_eq!(inf.checked_mul(ExtNat::ZERO), Some(ExtNat::ZERO));
        assert_eq!(inf.checked_mul(ExtNat::Finite(3)), Some(inf));
        assert_eq!(inf.checked_add(ExtNat::ZERO), Some(inf));
        assert_eq!(ExtNat::Finite(u64::MAX).checked_add(ExtNat::ONE), None);
        assert_eq!(serde_json::to_string(&vec![inf, ExtNat::Finite(2)]).unwrap(), "[\"inf\",2]");
        let back: Vec<ExtNat> = serde_json::from_str("[\"inf\",2]").unwrap();
        assert_eq!(back, vec![inf, ExtNat::Finite(2)]);
    }
}
