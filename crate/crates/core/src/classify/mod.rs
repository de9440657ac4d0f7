//! Based actions of a fusion ring on a quiver path algebra.
//!
//! A witness splits the vertices into groups of `rank` vertices, labels each
//! group by the simples through a bijection `ψ_k`, and assigns to each ordered
//! pair of groups a multiplicity vector `Z_ij`. It is valid when every block
//! of the adjacency matrix is the matching combination of fusion matrices:
//! `adj[w][v] = Σ_X Z_ij[X] · N_{X, ψ_i(v)}^{ψ_j(w)}` for `v` in group `i`
//! and `w` in group `j`.

mod count;
mod oracle;

pub use count::{count_decompositions, BlockCount, CountReport, DecompCount, DualBasis};
pub use oracle::{
    conjugation_oracle, spectral_oracle, OracleReport, OracleViolation, SpectralProjector,
    SpectralReport, spectral_oracle_with, DEFAULT_ORACLE_STEPS, EXTENDED_ORACLE_STEPS,
};

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::quiver::Quiver;

/// Vertex groups and the bijection labelling each group by simples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    /// Groups sorted by smallest vertex; vertices inside a group ascending.
    pub partition: Vec<Vec<usize>>,
    /// `bijections[k][t]` is the simple assigned to `partition[k][t]`.
    pub bijections: Vec<Vec<usize>>,
}

impl Labeling {
    /// One group holding every vertex, labelled by `perm`.
    pub fn single(perm: Vec<usize>) -> Self {
        Labeling { partition: vec![(0..perm.len()).collect()], bijections: vec![perm] }
    }

    pub fn group_count(&self) -> usize {
        self.partition.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.partition.iter().map(Vec::len).sum()
    }

    /// `(group, simple)` for every vertex.
    pub fn slots(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); self.vertex_count()];
        for (k, (group, psi)) in self.partition.iter().zip(&self.bijections).enumerate() {
            for (&v, &x) in group.iter().zip(psi) {
                out[v] = (k, x);
            }
        }
        out
    }

    /// Check shape against `n` vertices and `rank` simples.
    pub fn validate(&self, n: usize, rank: usize) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedWitness(m));
        if self.partition.len() != self.bijections.len() {
            return bad("partition and bijections differ in length".into());
        }
        let mut seen = vec![false; n];
        for (k, (group, psi)) in self.partition.iter().zip(&self.bijections).enumerate() {
            if group.len() != rank || psi.len() != rank {
                return bad(format!("group {k} must have exactly {rank} vertices"));
            }
            for &v in group {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return bad(format!("vertex {v} is out of range or repeated"));
                }
            }
            let mut labels = psi.clone();
            labels.sort_unstable();
            if labels != (0..rank).collect::<Vec<_>>() {
                return bad(format!("bijection {k} is not a permutation of the simples"));
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("groups do not cover every vertex".into());
        }
        Ok(())
    }

    /// Adjacency block from group `i` to group `j`, indexed by simples:
    /// `block[ψ_j(w)][ψ_i(v)] = adj[w][v]`.
    pub fn block(&self, adj: &[Vec<u32>], i: usize, j: usize) -> Vec<Vec<u32>> {
        let r = self.partition[i].len();
        let mut block = vec![vec![0; r]; r];
        for (&v, &x) in self.partition[i].iter().zip(&self.bijections[i]) {
            for (&w, &y) in self.partition[j].iter().zip(&self.bijections[j]) {
                block[y][x] = adj[w][v];
            }
        }
        block
    }
}

/// A based action: labeling plus `z[i][j][X]`, the multiplicity of `X` in
/// the block from group `i` to group `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionWitness {
    pub labeling: Labeling,
    pub z: Vec<Vec<Vec<u32>>>,
}

/// Read `n` off the unit column of `m`, then check `m = Σ n[X] F_X`.
pub fn decompose_over_basis(m: &[Vec<u32>], ring: &FusionRing) -> Result<Option<Vec<u32>>> {
    let r = ring.rank();
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(Error::DimensionMismatch(format!("expected a {r}x{r} matrix")));
    }
    let unit = ring.unit();
    let n: Vec<u32> = (0..r).map(|x| m[x][unit]).collect();
    Ok(is_combination(m, ring, &n).then_some(n))
}

fn is_combination(m: &[Vec<u32>], ring: &FusionRing, n: &[u32]) -> bool {
    let r = ring.rank();
    (0..r).all(|row| {
        (0..r).all(|col| {
            let sum: u64 = (0..r).map(|x| n[x] as u64 * ring.n(x, col, row) as u64).sum();
            sum == m[row][col] as u64
        })
    })
}

/// Every way to split `0..n` into groups of `r`, each group listed by its
/// smallest vertex first.
pub fn partitions(n: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: &[usize], r: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, others)) = rest.split_first() else {
            out.push(current.clone());
            return;
        };
        for chosen in combinations(others, r - 1) {
            let mut group = vec![first];
            group.extend(&chosen);
            let remaining: Vec<usize> = others.iter().copied().filter(|v| !chosen.contains(v)).collect();
            current.push(group);
            go(&remaining, r, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 && n % r == 0 {
        go(&(0..n).collect::<Vec<_>>(), r, &mut Vec::new(), &mut out);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let (head, tail) = items.split_first().unwrap();
    let mut out: Vec<Vec<usize>> = combinations(tail, k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, *head);
            c
        })
        .collect();
    out.extend(combinations(tail, k));
    out
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..r).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

fn search_partition(
    adj: &[Vec<u32>],
    ring: &FusionRing,
    partition: &[Vec<usize>],
    perms: &[Vec<usize>],
) -> Vec<ActionWitness> {
    let g = partition.len();
    let mut out = Vec::new();
    let mut labeling = Labeling { partition: partition.to_vec(), bijections: Vec::with_capacity(g) };
    let mut z = vec![vec![Vec::new(); g]; g];

    fn dfs(
        k: usize,
        adj: &[Vec<u32>],
        ring: &FusionRing,
        perms: &[Vec<usize>],
        labeling: &mut Labeling,
        z: &mut Vec<Vec<Vec<u32>>>,
        out: &mut Vec<ActionWitness>,
    ) {
        let g = labeling.partition.len();
        if k == g {
            out.push(ActionWitness { labeling: labeling.clone(), z: z.clone() });
            return;
        }
        'perm: for psi in perms {
            labeling.bijections.push(psi.clone());
            // blocks between the new group and every group already labelled
            for other in 0..=k {
                for (i, j) in [(other, k), (k, other)] {
                    match decompose_over_basis(&labeling.block(adj, i, j), ring) {
                        Ok(Some(n)) => z[i][j] = n,
                        _ => {
                            labeling.bijections.pop();
                            continue 'perm;
                        }
                    }
                }
            }
            dfs(k + 1, adj, ring, perms, labeling, z, out);
            labeling.bijections.pop();
        }
    }

    dfs(0, adj, ring, perms, &mut labeling, &mut z, &mut out);
    out
}

/// Exhaustive search for based actions, sorted canonically.
///
/// Each partition is searched independently; a labeling is abandoned as soon
/// as one of its blocks is not a nonnegative combination of fusion matrices.
pub fn classify(q: &Quiver, ring: &FusionRing) -> Vec<ActionWitness> {
    let (n, r) = (q.vertex_count(), ring.rank());
    if n % r != 0 {
        return Vec::new();
    }
    let perms = permutations(r);
    let adj = q.adjacency();
    let mut out: Vec<ActionWitness> = partitions(n, r)
        .par_iter()
        .flat_map_iter(|p| search_partition(adj, ring, p, &perms))
        .collect();
    out.sort();
    out
}

/// Exact validity test for a witness.
pub fn check_witness(q: &Quiver, ring: &FusionRing, w: &ActionWitness) -> Result<bool> {
    let r = ring.rank();
    w.labeling.validate(q.vertex_count(), r)?;
    let g = w.labeling.group_count();
    if w.z.len() != g || w.z.iter().any(|row| row.len() != g || row.iter().any(|z| z.len() != r)) {
        return Err(Error::MalformedWitness(format!("Z must be {g}x{g} vectors of length {r}")));
    }
    let adj = q.adjacency();
    for i in 0..g {
        for j in 0..g {
            if !is_combination(&w.labeling.block(adj, i, j), ring, &w.z[i][j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimensions `dim(p_w V_X p_v)` of the bimodule attached to `x`: block
/// diagonal, with `N_{X, ψ_k(v)}^{ψ_k(w)}` in group `k`.
pub fn based_space_dims(labeling: &Labeling, ring: &FusionRing, x: usize) -> Result<Vec<Vec<u32>>> {
    let r = ring.rank();
    if x >= r {
        return Err(Error::IndexOutOfRange { what: "simple", index: x, size: r });
    }
    let n = labeling.vertex_count();
    labeling.validate(n, r)?;
    let mut dims = vec![vec![0; n]; n];
    for (group, psi) in labeling.partition.iter().zip(&labeling.bijections) {
        for (&v, &a) in group.iter().zip(psi) {
            for (&w, &b) in group.iter().zip(psi) {
                dims[w][v] = ring.n(x, a, b);
            }
        }
    }
    Ok(dims)
}

/// Indices of witnesses grouped by shared partition and `Z`: members of a
/// class differ only by a relabeling that fixes every block matrix.
pub fn relabeling_classes(witnesses: &[ActionWitness]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<(&Vec<Vec<usize>>, &Vec<Vec<Vec<u32>>>), Vec<usize>> = BTreeMap::new();
    for (idx, w) in witnesses.iter().enumerate() {
        classes.entry((&w.labeling.partition, &w.z)).or_default().push(idx);
    }
    classes.into_values().collect()
}

/// JSON form of a labeling, by vertex and simple names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    pub partition: Vec<Vec<String>>,
    pub bijections: Vec<BTreeMap<String, String>>,
}

/// JSON form of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    #[serde(flatten)]
    pub labeling: LabelingDocument,
    /// Keyed by `"i,j"`: source group `i`, target group `j`, in document order.
    #[serde(rename = "Z")]
    pub z: BTreeMap<String, BTreeMap<String, u32>>,
}

impl Labeling {
    pub fn to_document(&self, q: &Quiver, ring: &FusionRing) -> LabelingDocument {
        let vname = |v: usize| q.vertices()[v].clone();
        LabelingDocument {
            partition: self.partition.iter().map(|g| g.iter().map(|&v| vname(v)).collect()).collect(),
            bijections: self
                .partition
                .iter()
                .zip(&self.bijections)
                .map(|(g, psi)| g.iter().zip(psi).map(|(&v, &x)| (vname(v), ring.labels()[x].clone())).collect())
                .collect(),
        }
    }

    /// Parse and canonicalize; also returns where each document group landed.
    pub fn from_document(doc: &LabelingDocument, q: &Quiver, ring: &FusionRing) -> Result<(Self, Vec<usize>)> {
        let bad = |m: String| Error::MalformedWitness(m);
        if doc.partition.len() != doc.bijections.len() {
            return Err(bad("partition and bijections differ in length".into()));
        }
        let mut groups = Vec::new();
        for (group, map) in doc.partition.iter().zip(&doc.bijections) {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for name in group {
                let v = q.vertex_index(name).ok_or_else(|| bad(format!("unknown vertex `{name}`")))?;
                let label = map.get(name).ok_or_else(|| bad(format!("vertex `{name}` has no label")))?;
                let x = ring.label_index(label).ok_or_else(|| bad(format!("unknown simple `{label}`")))?;
                pairs.push((v, x));
            }
            if map.len() != group.len() {
                return Err(bad("bijection mentions vertices outside its group".into()));
            }
            pairs.sort_unstable();
            groups.push(pairs);
        }
        let firsts: Vec<Option<usize>> = groups.iter().map(|g| g.first().map(|p| p.0)).collect();
        groups.sort_by_key(|g| g.first().map(|p| p.0));
        let labeling = Labeling {
            partition: groups.iter().map(|g| g.iter().map(|p| p.0).collect()).collect(),
            bijections: groups.iter().map(|g| g.iter().map(|p| p.1).collect()).collect(),
        };
        labeling.validate(q.vertex_count(), ring.rank())?;
        let order = firsts
            .iter()
            .map(|f| labeling.partition.iter().position(|h| h.first().copied() == *f).expect("group present"))
            .collect();
        Ok((labeling, order))
    }
}

impl ActionWitness {
    pub fn to_document(&self, q: &Quiver, ring: &FusionRing) -> WitnessDocument {
        let mut z = BTreeMap::new();
        for (i, row) in self.z.iter().enumerate() {
            for (j, mult) in row.iter().enumerate() {
                let entry = mult.iter().enumerate().map(|(x, &m)| (ring.labels()[x].clone(), m)).collect();
                z.insert(format!("{i},{j}"), entry);
            }
        }
        WitnessDocument { labeling: self.labeling.to_document(q, ring), z }
    }

    pub fn from_document(doc: &WitnessDocument, q: &Quiver, ring: &FusionRing) -> Result<Self> {
        let bad = |m: String| Error::MalformedWitness(m);
        let (labeling, order) = Labeling::from_document(&doc.labeling, q, ring)?;
        let g = labeling.group_count();
        let mut z = vec![vec![vec![0u32; ring.rank()]; g]; g];
        let mut given = HashSet::new();
        for (key, entry) in &doc.z {
            let (i, j) = key
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
                .filter(|&(i, j)| i < g && j < g)
                .ok_or_else(|| bad(format!("bad Z key `{key}`")))?;
            let (i, j) = (order[i], order[j]);
            for (label, &m) in entry {
                let x = ring.label_index(label).ok_or_else(|| bad(format!("unknown simple `{label}`")))?;
                z[i][j][x] = m;
            }
            given.insert((i, j));
        }
        if given.len() != g * g {
            return Err(bad(format!("Z must list all {} group pairs", g * g)));
        }
        Ok(ActionWitness { labeling, z })
    }
}
