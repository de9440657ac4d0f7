//! Counting decompositions of `Q̃` over a dual basis with `ℕ ∪ {∞}` coefficients.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::quiver::{ExtNat, TildeMatrix};

/// Matrices of the simple dual functors acting on the module's simples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    pub labels: Vec<String>,
    /// `matrices[X][m][l]`: multiplicity of simple `m` in `X(l)`.
    pub matrices: Vec<Vec<Vec<u32>>>,
}

impl DualBasis {
    pub fn new(labels: Vec<String>, matrices: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let r = matrices.first().map_or(0, Vec::len);
        if r == 0 || labels.len() != matrices.len() {
            return Err(Error::DimensionMismatch("dual basis needs one label per nonempty matrix".into()));
        }
        if matrices.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::DimensionMismatch(format!("dual basis matrices must all be {r}x{r}")));
        }
        Ok(DualBasis { labels, matrices })
    }

    /// A ring acting on itself; the dual is the opposite ring, acting by
    /// right multiplication.
    pub fn regular(ring: &FusionRing) -> Self {
        let matrices = (0..ring.rank())
            .map(|x| ring.right_fusion_matrix(x).expect("index in range").entries)
            .collect();
        DualBasis { labels: ring.labels().to_vec(), matrices }
    }

    /// A module category with one simple: each dual simple of dimension `d`
    /// is the `1x1` matrix `[d]` (for `Vec(G)` on `Vec`, the irreducible
    /// representations of `G`).
    pub fn fiber(dims: &[u32]) -> Result<Self> {
        let labels = (0..dims.len()).map(|i| format!("V{i}")).collect();
        Self::new(labels, dims.iter().map(|&d| vec![vec![d]]).collect())
    }

    /// Number of simples in the module category.
    pub fn module_rank(&self) -> usize {
        self.matrices[0].len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompCount {
    Zero,
    One,
    /// Several decompositions, all with finite coefficients.
    Finitely(u64),
    Infinite,
}

impl fmt::Display for DecompCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompCount::Zero => f.write_str("0"),
            DecompCount::One => f.write_str("1"),
            DecompCount::Finitely(n) => write!(f, "{n}"),
            DecompCount::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    pub source: usize,
    pub target: usize,
    pub count: DecompCount,
    /// The coefficients when the decomposition is unique.
    pub coefficients: Option<Vec<ExtNat>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub count: DecompCount,
    /// Every nonzero entry of `Q̃` is infinite, so only 0, 1 or ∞ can occur.
    pub dichotomy_applies: bool,
    pub blocks: Vec<BlockCount>,
}

fn count_finite(
    members: &[usize],
    basis: &DualBasis,
    finite: &[(usize, usize)],
    residual: &mut [i64],
    chosen: &mut Vec<u64>,
    first: &mut Option<Vec<u64>>,
) -> u64 {
    let Some((&x, rest)) = members.split_first() else {
        if residual.iter().all(|&r| r == 0) {
            first.get_or_insert_with(|| chosen.clone());
            return 1;
        }
        return 0;
    };
    let m = &basis.matrices[x];
    let weights: Vec<i64> = finite.iter().map(|&(a, b)| m[a][b] as i64).collect();
    let mut total = 0;
    let mut n = 0u64;
    loop {
        chosen.push(n);
        total += count_finite(rest, basis, finite, residual, chosen, first);
        chosen.pop();
        // members reach at least one finite entry, so this terminates
        for (r, w) in residual.iter_mut().zip(&weights) {
            *r -= w;
        }
        n += 1;
        if residual.iter().any(|&r| r < 0) {
            break;
        }
    }
    for (r, w) in residual.iter_mut().zip(&weights) {
        *r += w * n as i64;
    }
    total
}

fn count_block(block: &[Vec<ExtNat>], basis: &DualBasis) -> (DecompCount, Option<Vec<ExtNat>>) {
    let r = block.len();
    let entries: Vec<(usize, usize)> = (0..r).flat_map(|a| (0..r).map(move |b| (a, b))).collect();
    let (infinite, finite): (Vec<_>, Vec<_>) = entries.iter().partition(|&&(a, b)| block[a][b].is_infinite());
    let support = |x: usize| entries.iter().filter(move |&&(a, b)| basis.matrices[x][a][b] > 0);

    let free: Vec<usize> = (0..basis.matrices.len())
        .filter(|&x| support(x).all(|&(a, b)| block[a][b].is_infinite()))
        .collect();
    let bounded: Vec<usize> = (0..basis.matrices.len()).filter(|x| !free.contains(x)).collect();

    let covers = |x: usize, e: &(usize, usize)| basis.matrices[x][e.0][e.1] > 0;
    if !infinite.iter().all(|e| free.iter().any(|&x| covers(x, e))) {
        return (DecompCount::Zero, None);
    }

    let mut residual: Vec<i64> = finite
        .iter()
        .map(|&(a, b)| block[a][b].finite().expect("finite entry") as i64)
        .collect();
    let mut first = None;
    let solutions = count_finite(&bounded, basis, &finite, &mut residual, &mut Vec::new(), &mut first);
    if solutions == 0 {
        return (DecompCount::Zero, None);
    }

    // every free member must be the only free member reaching some infinite entry
    let forced = free.iter().all(|&x| {
        infinite.iter().any(|e| covers(x, e) && free.iter().all(|&y| y == x || !covers(y, e)))
    });
    if !forced {
        return (DecompCount::Infinite, None);
    }
    if solutions > 1 {
        return (DecompCount::Finitely(solutions), None);
    }
    let finite_part = first.expect("one solution recorded");
    let mut coefficients = vec![ExtNat::Infinite; basis.matrices.len()];
    for (&x, &n) in bounded.iter().zip(&finite_part) {
        coefficients[x] = ExtNat::Finite(n);
    }
    (DecompCount::One, Some(coefficients))
}

/// Count the decompositions of every group block of `tm`.
///
/// Vertices are taken in contiguous groups of the module rank; block
/// `(i, j)` holds the entries from group `i` to group `j`.
pub fn count_decompositions(tm: &TildeMatrix, basis: &DualBasis, groups: usize) -> Result<CountReport> {
    let r = basis.module_rank();
    if groups == 0 || tm.size() != groups * r {
        return Err(Error::DimensionMismatch(format!(
            "Q̃ is {0}x{0}, not {groups} blocks of size {r}",
            tm.size()
        )));
    }
    let mut blocks = Vec::new();
    for i in 0..groups {
        for j in 0..groups {
            let block: Vec<Vec<ExtNat>> =
                (0..r).map(|m| (0..r).map(|l| tm.get(j * r + m, i * r + l)).collect()).collect();
            let (count, coefficients) = count_block(&block, basis);
            blocks.push(BlockCount { source: i, target: j, count, coefficients });
        }
    }
    let count = if blocks.iter().any(|b| b.count == DecompCount::Zero) {
        DecompCount::Zero
    } else if blocks.iter().any(|b| b.count == DecompCount::Infinite) {
        DecompCount::Infinite
    } else {
        let mut total = 1u64;
        for b in &blocks {
            if let DecompCount::Finitely(n) = b.count {
                total = total.checked_mul(n).ok_or(Error::Overflow)?;
            }
        }
        if total == 1 {
            DecompCount::One
        } else {
            DecompCount::Finitely(total)
        }
    };
    Ok(CountReport { count, dichotomy_applies: tm.all_nonzero_infinite(), blocks })
}
