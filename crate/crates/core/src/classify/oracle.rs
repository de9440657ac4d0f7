//! Two independent checks of the classifier.
//!
//! The conjugation oracle iterates `M ↦ D⁻¹ M D`, where `D` is block diagonal
//! with a relabeled copy of `F_X` in each group, and watches for entries that
//! stop being nonnegative integers. The spectral oracle instead moves each
//! block to the eigenbasis given by the S-matrix and reads the fusion
//! coefficients off the diagonal.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::Labeling;
use crate::cyclo::CycloReal;
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::linalg::{self, Matrix};
use crate::modular::{smatrix, ModularData};
use crate::numjson::{rational_string, RationalJson};
use crate::quiver::Quiver;

pub const DEFAULT_ORACLE_STEPS: u32 = 50;
/// How far past the requested horizon a non-fixed orbit is followed.
pub const EXTENDED_ORACLE_STEPS: u32 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleViolation {
    pub step: u32,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// Every iterate up to the requested step count is a nonnegative integer matrix.
    pub survived: bool,
    pub steps_checked: u32,
    pub first_violation: Option<OracleViolation>,
    /// The first iterate equals the input, so the orbit is constant.
    pub fixed_point: bool,
    /// The verdict holds for every step: a fixed point or an observed violation.
    pub certified: bool,
    /// A violation found after the requested horizon, for uncertified survivals.
    pub beyond_horizon: Option<OracleViolation>,
}

fn first_bad_entry(m: &Matrix<BigRational>, step: u32) -> Option<OracleViolation> {
    for (row, r) in m.iter().enumerate() {
        for (col, x) in r.iter().enumerate() {
            if !linalg::is_nonneg_integer(x) {
                return Some(OracleViolation { step, row, col, value: rational_string(x) });
            }
        }
    }
    None
}

/// Iterate conjugation by the relabeled block-diagonal `F_X` for `steps` steps.
pub fn conjugation_oracle(
    q: &Quiver,
    ring: &FusionRing,
    x: usize,
    labeling: &Labeling,
    steps: u32,
) -> Result<OracleReport> {
    if steps < 1 {
        return Err(Error::InvalidArgument("the oracle needs at least one step".into()));
    }
    let r = ring.rank();
    if x >= r {
        return Err(Error::IndexOutOfRange { what: "simple", index: x, size: r });
    }
    if x == ring.unit() {
        return Err(Error::InvalidArgument("conjugating by the unit is trivial".into()));
    }
    let n = q.vertex_count();
    labeling.validate(n, r)?;

    let slots = labeling.slots();
    let fx = ring.fusion_matrix(x)?.entries;
    let d: Matrix<BigRational> = (0..n)
        .map(|w| {
            (0..n)
                .map(|v| {
                    let ((gw, a), (gv, b)) = (slots[w], slots[v]);
                    let e = if gw == gv { fx[a][b] } else { 0 };
                    BigRational::from_integer(e.into())
                })
                .collect()
        })
        .collect();
    let d_inv = linalg::inverse(&d)
        .ok_or_else(|| Error::InvalidArgument(format!("F_{} is singular", ring.labels()[x])))?;

    let start = linalg::rational_matrix(q.adjacency());
    let step = |m: &Matrix<BigRational>| linalg::mat_mul(&d_inv, &linalg::mat_mul(m, &d));

    let first = step(&start);
    if first == start {
        return Ok(OracleReport {
            survived: true,
            steps_checked: steps,
            first_violation: None,
            fixed_point: true,
            certified: true,
            beyond_horizon: None,
        });
    }
    let mut current = first;
    for k in 1..=steps.max(EXTENDED_ORACLE_STEPS) {
        if k > 1 {
            current = step(&current);
        }
        if let Some(v) = first_bad_entry(&current, k) {
            let within = k <= steps;
            return Ok(OracleReport {
                survived: !within,
                steps_checked: if within { k } else { steps },
                first_violation: within.then(|| v.clone()),
                fixed_point: false,
                certified: within,
                beyond_horizon: (!within).then_some(v),
            });
        }
    }
    Ok(OracleReport {
        survived: true,
        steps_checked: steps,
        first_violation: None,
        fixed_point: false,
        certified: false,
        beyond_horizon: None,
    })
}

/// Precomputed change of basis for a `PSU(2)_{p-2}` ring.
///
/// For a block `B`, `C = S⁻¹ B S` is accumulated from the rank-one pieces
/// `S⁻¹ e_m e_lᵀ S`. `B` is a combination of fusion matrices exactly when `C`
/// is diagonal, and then `C_jj = Σ_X n_X S_{X,j}/d_j`.
#[derive(Debug, Clone)]
pub struct SpectralProjector {
    pub modular: ModularData,
    pieces: Vec<Vec<Matrix<CycloReal>>>,
    /// Inverse of the character table `A[j][X] = S_{X,j}/d_j`.
    characters_inv: Matrix<CycloReal>,
}

impl SpectralProjector {
    pub fn new(ring: &FusionRing) -> Result<Self> {
        let p = ring.psu2_prime().ok_or(Error::NotPsu2)?;
        let modular = smatrix(p as u64)?;
        let r = modular.rank();
        let s = &modular.s;
        let s_inv = modular.inverse_s()?;
        let pieces = (0..r)
            .map(|m| {
                (0..r)
                    .map(|l| {
                        (0..r)
                            .map(|a| (0..r).map(|b| &s_inv[a][m] * &s[l][b]).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let table: Matrix<CycloReal> =
            (0..r).map(|j| (0..r).map(|x| modular.character(x, j)).collect()).collect();
        let characters_inv = linalg::inverse(&table)
            .ok_or_else(|| Error::DimensionMismatch("character table is singular".into()))?;
        Ok(SpectralProjector { modular, pieces, characters_inv })
    }

    pub fn rank(&self) -> usize {
        self.modular.rank()
    }

    /// `S⁻¹ B S`.
    pub fn transform(&self, block: &[Vec<u32>]) -> Matrix<CycloReal> {
        let r = self.rank();
        let zero = CycloReal::zero(self.modular.p).expect("valid prime");
        let mut c = vec![vec![zero; r]; r];
        for (m, row) in block.iter().enumerate() {
            for (l, &e) in row.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let piece = &self.pieces[m][l];
                for a in 0..r {
                    for b in 0..r {
                        c[a][b] = &c[a][b] + &piece[a][b].scale_by(e as i64);
                    }
                }
            }
        }
        c
    }

    /// Fusion coefficients of `block`, or `None` when the off-diagonal
    /// residual is nonzero or a coefficient is irrational.
    pub fn coefficients(&self, block: &[Vec<u32>]) -> Option<Vec<BigRational>> {
        let r = self.rank();
        let c = self.transform(block);
        if (0..r).any(|a| (0..r).any(|b| a != b && !c[a][b].is_zero())) {
            return None;
        }
        (0..r)
            .map(|x| {
                let mut acc = CycloReal::zero(self.modular.p).ok()?;
                for (j, cj) in c.iter().enumerate() {
                    acc = &acc + &(&self.characters_inv[x][j] * &cj[j]);
                }
                acc.as_rational()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub passed: bool,
    /// `coefficients[i][j]`: fusion coefficients of the block from group `i`
    /// to group `j`, absent when the residual is nonzero.
    pub coefficients: Vec<Vec<Option<Vec<RationalJson>>>>,
    pub first_failure: Option<(usize, usize)>,
}

/// Spectral test of every block under a labeling.
pub fn spectral_oracle(q: &Quiver, ring: &FusionRing, labeling: &Labeling) -> Result<SpectralReport> {
    let projector = SpectralProjector::new(ring)?;
    spectral_oracle_with(&projector, q, labeling)
}

/// As [`spectral_oracle`], reusing a projector across many calls.
pub fn spectral_oracle_with(
    projector: &SpectralProjector,
    q: &Quiver,
    labeling: &Labeling,
) -> Result<SpectralReport> {
    labeling.validate(q.vertex_count(), projector.rank())?;
    let g = labeling.group_count();
    let mut first_failure = None;
    let mut coefficients = vec![vec![None; g]; g];
    for i in 0..g {
        for j in 0..g {
            let coeffs = projector.coefficients(&labeling.block(q.adjacency(), i, j));
            let ok = coeffs
                .as_ref()
                .is_some_and(|n| n.iter().all(|c| c.is_integer() && !c.is_negative()));
            if !ok && first_failure.is_none() {
                first_failure = Some((i, j));
            }
            coefficients[i][j] = coeffs.map(|n| n.into_iter().map(RationalJson).collect());
        }
    }
    Ok(SpectralReport { passed: first_failure.is_none(), coefficients, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn setup() -> (FusionRing, Vec<Vec<u32>>) {
        let ring = FusionRing::psu2(7).unwrap();
        let f2 = ring.fusion_matrix(1).unwrap().entries;
        (ring, f2)
    }

    #[test]
    fn fusion_matrix_survives_forever() {
        let (ring, f2) = setup();
        let q = Quiver::from_matrix(f2).unwrap();
        let report = conjugation_oracle(&q, &ring, 1, &Labeling::single(vec![0, 1, 2]), 50).unwrap();
        assert!(report.survived && report.fixed_point && report.certified);
    }

    #[test]
    fn extra_loop_is_violated_quickly() {
        let (ring, mut f2) = setup();
        f2[0][0] += 1;
        let q = Quiver::from_matrix(f2).unwrap();
        let report = conjugation_oracle(&q, &ring, 1, &Labeling::single(vec![0, 1, 2]), 50).unwrap();
        assert!(!report.survived);
        assert!(report.certified);
        assert!(report.first_violation.unwrap().step <= 3);
    }

    #[test]
    fn zero_quiver_survives() {
        let (ring, _) = setup();
        let q = Quiver::from_matrix(vec![vec![0; 3]; 3]).unwrap();
        let report = conjugation_oracle(&q, &ring, 2, &Labeling::single(vec![1, 2, 0]), 50).unwrap();
        assert!(report.survived && report.certified);
    }

    #[test]
    fn oracle_argument_errors() {
        let (ring, f2) = setup();
        let q = Quiver::from_matrix(f2).unwrap();
        let lab = Labeling::single(vec![0, 1, 2]);
        assert!(conjugation_oracle(&q, &ring, 1, &lab, 0).is_err());
        assert!(conjugation_oracle(&q, &ring, 0, &lab, 5).is_err());
    }

    #[test]
    fn spectral_examples() {
        let (ring, f2) = setup();
        let lab = Labeling::single(vec![0, 1, 2]);
        let q = Quiver::from_matrix(f2).unwrap();
        let report = spectral_oracle(&q, &ring, &lab).unwrap();
        assert!(report.passed);
        let coeffs: Vec<BigRational> = report.coefficients[0][0].clone().unwrap().into_iter().map(|c| c.0).collect();
        let expect: Vec<BigRational> = [0, 1, 0].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        assert_eq!(coeffs, expect);

        let zero = Quiver::from_matrix(vec![vec![0; 3]; 3]).unwrap();
        let report = spectral_oracle(&zero, &ring, &lab).unwrap();
        assert!(report.passed);
        assert!(report.coefficients[0][0].as_ref().unwrap().iter().all(|c| c.0.is_zero()));

        let random = Quiver::from_matrix(vec![vec![2, 0, 1], vec![1, 0, 0], vec![0, 2, 1]]).unwrap();
        let report = spectral_oracle(&random, &ring, &lab).unwrap();
        assert!(!report.passed);
        assert!(report.coefficients[0][0].is_none());
    }

    #[test]
    fn spectral_needs_psu2() {
        let q = Quiver::from_matrix(vec![vec![0]]).unwrap();
        assert!(matches!(
            spectral_oracle(&q, &FusionRing::trivial(), &Labeling::single(vec![0])),
            Err(Error::NotPsu2)
        ));
    }
}
