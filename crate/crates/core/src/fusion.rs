//! Fusion rings: labels, structure constants `N_{i,j}^k`, fusion matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::check_prime;
use crate::error::{Error, Result};

/// Grothendieck data of a fusion category.
///
/// `n[i][j][k]` is the multiplicity of simple `k` in `i ⊗ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    n: Vec<Vec<Vec<u32>>>,
}

/// Matrix of left multiplication by a simple object.
///
/// `entries[m][l] = N_{X,l}^m`: rows are output simples, columns input
/// simples, so the column at the unit is the basis vector `e_X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionMatrix {
    pub object: usize,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A failed fusion ring axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `N[unit][j][k]` (left) or `N[j][unit][k]` (right) differs from `δ_{jk}`.
    Unit { side: Side, j: usize, k: usize, value: u32 },
    /// `(i ⊗ j) ⊗ k` and `i ⊗ (j ⊗ k)` disagree on the multiplicity of `l`.
    Associativity { i: usize, j: usize, k: usize, l: usize, lhs: u64, rhs: u64 },
    /// `N[i][j][unit]` differs from `δ_{j, dual(i)}`.
    Dual { i: usize, j: usize, value: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unit { side, j, k, value } => {
                let (a, b) = match side {
                    Side::Left => ("unit".to_string(), j.to_string()),
                    Side::Right => (j.to_string(), "unit".to_string()),
                };
                write!(f, "unit axiom: N[{a}][{b}][{k}] = {value}, expected {}", u32::from(j == k))
            }
            Violation::Associativity { i, j, k, l, lhs, rhs } => write!(
                f,
                "associativity fails at (i,j,k,l) = ({i},{j},{k},{l}): {lhs} != {rhs}"
            ),
            Violation::Dual { i, j, value } => {
                write!(f, "dual axiom: N[{i}][{j}][unit] = {value}")
            }
        }
    }
}

/// On-disk ring format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingDocument {
    pub rank: usize,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
}

impl FusionRing {
    /// Assemble a ring after checking shapes only; axioms are not checked.
    pub fn from_parts(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        n: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::Schema("rank must be positive".into()));
        }
        if unit >= rank {
            return Err(Error::IndexOutOfRange { what: "unit", index: unit, size: rank });
        }
        if dual.len() != rank {
            return Err(Error::Schema(format!("dual has length {}, rank is {rank}", dual.len())));
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::IndexOutOfRange { what: "dual", index: d, size: rank });
        }
        let shape_ok = n.len() == rank
            && n.iter().all(|a| a.len() == rank && a.iter().all(|b| b.len() == rank));
        if !shape_ok {
            return Err(Error::Schema(format!("N must be a {rank}x{rank}x{rank} tensor")));
        }
        Ok(FusionRing { labels, unit, dual, n })
    }

    /// Assemble and validate; any axiom violation is an error.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        n: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let ring = Self::from_parts(labels, unit, dual, n)?;
        let violations = ring.validate();
        if violations.is_empty() {
            Ok(ring)
        } else {
            let shown: Vec<String> = violations.iter().take(5).map(|v| v.to_string()).collect();
            Err(Error::Axiom(shown.join("; ")))
        }
    }

    /// The rank-one ring of `Vec`.
    pub fn trivial() -> Self {
        FusionRing {
            labels: vec!["1".into()],
            unit: 0,
            dual: vec![0],
            n: vec![vec![vec![1]]],
        }
    }

    /// Fusion rules of `PSU(2)_{p-2}`: simples `X_0, X_2, ..., X_{p-3}` with
    /// `N_{2i,2j}^{2m} = 1` iff `|2i-2j| <= 2m <= min(2i+2j, 2(p-2)-2i-2j)`.
    pub fn psu2(p: u64) -> Result<Self> {
        let p = check_prime(p)? as i64;
        let rank = ((p - 1) / 2) as usize;
        let n = (0..rank as i64)
            .map(|i| {
                (0..rank as i64)
                    .map(|j| {
                        (0..rank as i64)
                            .map(|m| {
                                let lo = (2 * i - 2 * j).abs();
                                let hi = (2 * i + 2 * j).min(2 * (p - 2) - 2 * i - 2 * j);
                                u32::from(lo <= 2 * m && 2 * m <= hi)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(FusionRing {
            labels: (0..rank).map(|j| format!("X_{}", 2 * j)).collect(),
            unit: 0,
            dual: (0..rank).collect(),
            n,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    /// `N_{i,j}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[i][j][k]
    }

    pub fn tensor(&self) -> &[Vec<Vec<u32>>] {
        &self.n
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolve a simple given either by label or by numeric index.
    pub fn resolve_simple(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.label_index(key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(i) if i < self.rank() => Ok(i),
            Ok(i) => Err(Error::IndexOutOfRange { what: "simple", index: i, size: self.rank() }),
            Err(_) => Err(Error::InvalidArgument(format!("unknown simple object `{key}`"))),
        }
    }

    /// Same unit, duals and structure constants, ignoring labels.
    pub fn same_structure(&self, other: &FusionRing) -> bool {
        self.unit == other.unit && self.dual == other.dual && self.n == other.n
    }

    /// If this ring is `PSU(2)_{p-2}` for some prime `p`, return `p`.
    pub fn psu2_prime(&self) -> Option<u32> {
        let p = 2 * self.rank() as u64 + 1;
        let reference = FusionRing::psu2(p).ok()?;
        self.same_structure(&reference).then_some(p as u32)
    }

    pub fn fusion_matrix(&self, x: usize) -> Result<FusionMatrix> {
        let r = self.rank();
        if x >= r {
            return Err(Error::IndexOutOfRange { what: "simple", index: x, size: r });
        }
        let entries = (0..r)
            .map(|m| (0..r).map(|l| self.n[x][l][m]).collect())
            .collect();
        Ok(FusionMatrix { object: x, entries })
    }

    /// Matrix of right multiplication by `x`: `entries[m][l] = N_{l,X}^m`.
    pub fn right_fusion_matrix(&self, x: usize) -> Result<FusionMatrix> {
        let r = self.rank();
        if x >= r {
            return Err(Error::IndexOutOfRange { what: "simple", index: x, size: r });
        }
        let entries = (0..r)
            .map(|m| (0..r).map(|l| self.n[l][x][m]).collect())
            .collect();
        Ok(FusionMatrix { object: x, entries })
    }

    pub fn fusion_matrices(&self) -> Vec<FusionMatrix> {
        (0..self.rank())
            .map(|x| self.fusion_matrix(x).expect("index in range"))
            .collect()
    }

    /// Exhaustive axiom check: unit, then associativity, then duality.
    pub fn validate(&self) -> Vec<Violation> {
        let r = self.rank();
        let u = self.unit;
        let mut out = Vec::new();
        for j in 0..r {
            for k in 0..r {
                let expected = u32::from(j == k);
                if self.n[u][j][k] != expected {
                    out.push(Violation::Unit { side: Side::Left, j, k, value: self.n[u][j][k] });
                }
                if self.n[j][u][k] != expected {
                    out.push(Violation::Unit { side: Side::Right, j, k, value: self.n[j][u][k] });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|m| self.n[i][j][m] as u64 * self.n[m][k][l] as u64)
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|m| self.n[j][k][m] as u64 * self.n[i][m][l] as u64)
                            .sum();
                        if lhs != rhs {
                            out.push(Violation::Associativity { i, j, k, l, lhs, rhs });
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let expected = u32::from(j == self.dual[i]);
                if self.n[i][j][u] != expected {
                    out.push(Violation::Dual { i, j, value: self.n[i][j][u] });
                }
            }
        }
        out
    }

    pub fn to_document(&self) -> RingDocument {
        RingDocument {
            rank: self.rank(),
            labels: self.labels.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            n: self.n.clone(),
        }
    }

    pub fn from_document(doc: RingDocument) -> Result<Self> {
        if doc.rank != doc.labels.len() {
            return Err(Error::Schema(format!(
                "rank {} does not match {} labels",
                doc.rank,
                doc.labels.len()
            )));
        }
        Self::new(doc.labels, doc.unit, doc.dual, doc.n)
    }
}

/// Parse and validate a ring document.
pub fn load_ring(json: &str) -> Result<FusionRing> {
    let doc: RingDocument =
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    FusionRing::from_document(doc)
}

pub fn save_ring(ring: &FusionRing) -> String {
    serde_json::to_string_pretty(&ring.to_document()).expect("ring document serializes")
}

pub fn mat_mul_u32(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}
