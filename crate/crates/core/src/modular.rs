//! Modular data of `PSU(2)_{p-2}`: the unnormalized S-matrix, quantum
//! dimensions, eigen-systems of conjugation by fusion matrices, and exact
//! checks of the spectral properties the classification relies on.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cyclo::{check_prime, quantum_integer, CycloReal};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::linalg::{self, Matrix, Scalar as _};

/// S-matrix and dimensions, both exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularData {
    pub p: u32,
    /// `s[j][k] = [(2j+1)(2k+1)]_q`.
    pub s: Matrix<CycloReal>,
    /// `dims[j] = [2j+1]_q`.
    pub dims: Vec<CycloReal>,
}

/// One Kronecker eigenpair of `T_X(M) = F_X⁻¹ M F_X`.
///
/// Matrices are identified with vectors by stacking columns, so the vector
/// `S_i ⊗ S_j` is the matrix `S_j S_iᵀ` and its eigenvalue is
/// `λ_ij = (S_{X,i}/d_i) / (S_{X,j}/d_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KronPair {
    pub i: usize,
    pub j: usize,
    pub eigenvalue: CycloReal,
    pub vector: Vec<CycloReal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub eigenvalue: CycloReal,
    pub vector: Vec<CycloReal>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub object: usize,
    /// Eigenpairs of `F_X`: eigenvalue `S_{X,j}/d_j`, eigenvector column `j` of `S`.
    pub single: Vec<EigenPair>,
    /// All `rank²` eigenpairs of `T_X`, ordered by `(i, j)`.
    pub kron: Vec<KronPair>,
}

fn rank_of(p: u32) -> usize {
    ((p - 1) / 2) as usize
}

/// The Lemma's case split: `(2j+1)(2k+1) mod 2p = 2i+1` gives `+d_{X_{2i}}`
/// when `2i+1 <= p-2` and `-d_{X_{2p-2i-2}}` when `2i+1 >= p+1`.
fn lifted_index(p: u32, j: usize, k: usize) -> (i8, usize) {
    let p = p as usize;
    let r = ((2 * j + 1) * (2 * k + 1)) % (2 * p);
    let i = (r - 1) / 2;
    if r <= p - 2 {
        (1, i)
    } else {
        (-1, p - i - 1)
    }
}

/// Unnormalized S-matrix and quantum dimensions of `PSU(2)_{p-2}`.
pub fn smatrix(p: u64) -> Result<ModularData> {
    let p = check_prime(p)?;
    let rank = rank_of(p);
    let dims: Vec<CycloReal> = (0..rank)
        .map(|j| quantum_integer(2 * j as i64 + 1, p))
        .collect::<Result<_>>()?;
    let s = (0..rank)
        .map(|j| {
            (0..rank)
                .map(|k| {
                    let (sign, idx) = lifted_index(p, j, k);
                    if sign > 0 {
                        dims[idx].clone()
                    } else {
                        -&dims[idx]
                    }
                })
                .collect()
        })
        .collect();
    Ok(ModularData { p, s, dims })
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn column(&self, j: usize) -> Vec<CycloReal> {
        self.s.iter().map(|row| row[j].clone()).collect()
    }

    /// `S_{X,j} / d_j`: the eigenvalue of `F_X` on column `j`.
    pub fn character(&self, x: usize, j: usize) -> CycloReal {
        self.s[x][j]
            .try_div(&self.dims[j])
            .expect("quantum dimensions are nonzero")
    }

    pub fn inverse_s(&self) -> Result<Matrix<CycloReal>> {
        linalg::inverse(&self.s).ok_or_else(|| Error::DimensionMismatch("S-matrix is singular".into()))
    }
}

fn ring_matches(ring: &FusionRing, md: &ModularData) -> Result<()> {
    if ring.psu2_prime() == Some(md.p) {
        Ok(())
    } else {
        Err(Error::NotPsu2)
    }
}

/// `S⁻¹ F_X S` is diagonal with entries `S_{X,j}/d_j`, for every simple `X`.
pub fn verlinde_check(ring: &FusionRing, md: &ModularData) -> Result<bool> {
    ring_matches(ring, md)?;
    let s_inv = md.inverse_s()?;
    for x in 0..ring.rank() {
        let f = ring.fusion_matrix(x)?;
        let fs = linalg::int_mat_mul(&f.entries, &md.s);
        let d = linalg::mat_mul(&s_inv, &fs);
        for (a, row) in d.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let ok = if a == b { *v == md.character(x, a) } else { v.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Eigen-system of `F_X` and of the conjugation operator `T_X`.
///
/// The unit object gives the identity operator; it is rejected unless
/// `allow_trivial` is set.
pub fn conj_eigensystem(md: &ModularData, x: usize, allow_trivial: bool) -> Result<EigenSystem> {
    let r = md.rank();
    if x >= r {
        return Err(Error::IndexOutOfRange { what: "simple", index: x, size: r });
    }
    if x == 0 && !allow_trivial {
        return Err(Error::InvalidArgument(
            "conjugation by the unit is the identity operator".into(),
        ));
    }
    let chars: Vec<CycloReal> = (0..r).map(|j| md.character(x, j)).collect();
    let inv_chars: Vec<CycloReal> = chars
        .iter()
        .map(|c| c.inverse())
        .collect::<Result<_>>()?;
    let cols: Vec<Vec<CycloReal>> = (0..r).map(|j| md.column(j)).collect();
    let single = (0..r)
        .map(|j| EigenPair { eigenvalue: chars[j].clone(), vector: cols[j].clone() })
        .collect();
    let mut kron = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let vector = cols[i]
                .iter()
                .flat_map(|a| cols[j].iter().map(move |b| a * b))
                .collect();
            kron.push(KronPair { i, j, eigenvalue: &chars[i] * &inv_chars[j], vector });
        }
    }
    Ok(EigenSystem { object: x, single, kron })
}

/// Column-stacked vector back to a square matrix.
pub fn unvec(v: &[CycloReal], n: usize) -> Matrix<CycloReal> {
    (0..n).map(|row| (0..n).map(|col| v[col * n + row].clone()).collect()).collect()
}

impl EigenSystem {
    /// Check `F_X v = λ v` for the single pairs and `F_X⁻¹ M F_X = λ M` for
    /// every Kronecker pair, exactly.
    pub fn verify(&self, ring: &FusionRing) -> Result<bool> {
        let f = ring.fusion_matrix(self.object)?.entries;
        let f_inv = linalg::inverse(&linalg::rational_matrix(&f))
            .ok_or_else(|| Error::DimensionMismatch("fusion matrix is singular".into()))?;
        if !f_inv.iter().flatten().all(|x| x.is_integer()) {
            return Err(Error::DimensionMismatch("fusion matrix inverse is not integral".into()));
        }
        let f_inv: Vec<Vec<i64>> = f_inv
            .iter()
            .map(|row| row.iter().map(|x| i64::try_from(x.numer()).expect("small entry")).collect())
            .collect();
        for pair in &self.single {
            let col: Matrix<CycloReal> = pair.vector.iter().map(|v| vec![v.clone()]).collect();
            let lhs = linalg::int_mat_mul(&f, &col);
            if lhs.iter().zip(&pair.vector).any(|(l, v)| l[0] != &pair.eigenvalue * v) {
                return Ok(false);
            }
        }
        let n = f.len();
        for pair in &self.kron {
            let m = unvec(&pair.vector, n);
            let mf = linalg::mat_mul_int(&m, &f);
            // F⁻¹ (M F) with signed integer entries.
            for r in 0..n {
                for c in 0..n {
                    let mut acc = m[0][0].zero_like();
                    for k in 0..n {
                        if f_inv[r][k] != 0 {
                            acc = &acc + &mf[k][c].scale_by(f_inv[r][k]);
                        }
                    }
                    if acc != &pair.eigenvalue * &m[r][c] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn unit_eigenvalue_count(&self) -> usize {
        self.kron.iter().filter(|k| k.eigenvalue.is_one()).count()
    }
}

fn x2_system(p: u64) -> Result<(ModularData, EigenSystem)> {
    let md = smatrix(p)?;
    let es = conj_eigensystem(&md, 1, false)?;
    Ok((md, es))
}

/// No eigenvalue of `T_{X_2}` equals `-1`.
pub fn prop_no_minus_one(p: u64) -> Result<bool> {
    let (_, es) = x2_system(p)?;
    Ok(es.kron.iter().all(|k| !(&k.eigenvalue + &k.eigenvalue.one_like()).is_zero()))
}

/// Eigenvalues of `T_{X_2}` with `|λ| ≠ 1` have pairwise distinct magnitudes.
///
/// In a real field `|a| = |b|` iff `a² = b²`, so distinctness is decided by
/// exact equality of squares.
pub fn prop_distinct_magnitudes(p: u64) -> Result<bool> {
    let (_, es) = x2_system(p)?;
    let mut seen = HashSet::new();
    for k in &es.kron {
        let sq = k.eigenvalue.square();
        if sq.is_one() {
            continue;
        }
        if !seen.insert(sq) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every non-unit S column has a strictly negative and a strictly positive
/// entry, and so every Kronecker vector other than `S_0 ⊗ S_0` is mixed.
pub fn prop_mixed_signs(p: u64) -> Result<bool> {
    let md = smatrix(p)?;
    let r = md.rank();
    let signs: Vec<Vec<i8>> = (0..r)
        .map(|j| md.column(j).iter().map(CycloReal::sign).collect())
        .collect();
    if signs[0].iter().any(|&s| s <= 0) {
        return Ok(false);
    }
    let mixed = |v: &[i8]| v.contains(&1) && v.contains(&-1);
    if !signs[1..].iter().all(|col| mixed(col)) {
        return Ok(false);
    }
    for i in 0..r {
        for j in 0..r {
            if i == 0 && j == 0 {
                continue;
            }
            let kron: Vec<i8> = signs[i]
                .iter()
                .flat_map(|a| signs[j].iter().map(move |b| a * b))
                .collect();
            if !mixed(&kron) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Each row and column of `S` is a signed permutation of the dimensions.
pub fn cor_pm_d_once(p: u64) -> Result<bool> {
    let md = smatrix(p)?;
    let r = md.rank();
    let which = |v: &CycloReal| md.dims.iter().position(|d| d == v || *d == -v);
    let is_perm = |vals: Vec<&CycloReal>| {
        let mut hit = vec![false; r];
        for v in vals {
            match which(v) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => return false,
            }
        }
        true
    };
    for a in 0..r {
        if !is_perm(md.s[a].iter().collect()) || !is_perm(md.s.iter().map(|row| &row[a]).collect()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All four spectral properties for one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionFlags {
    pub no_minus_one: bool,
    pub distinct_magnitudes: bool,
    pub mixed_signs: bool,
    pub pm_d_once: bool,
}

impl PropositionFlags {
    pub fn all(&self) -> bool {
        self.no_minus_one && self.distinct_magnitudes && self.mixed_signs && self.pm_d_once
    }
}

pub fn check_propositions(p: u64) -> Result<PropositionFlags> {
    Ok(PropositionFlags {
        no_minus_one: prop_no_minus_one(p)?,
        distinct_magnitudes: prop_distinct_magnitudes(p)?,
        mixed_signs: prop_mixed_signs(p)?,
        pm_d_once: cor_pm_d_once(p)?,
    })
}

/// Exact value with its float rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedValue {
    pub exact: CycloReal,
    pub notation: String,
    pub approx: f64,
}

impl RenderedValue {
    pub fn new(v: &CycloReal) -> Self {
        RenderedValue { exact: v.clone(), notation: v.notation(), approx: v.to_f64() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub i: usize,
    pub j: usize,
    pub eigenvalue: RenderedValue,
}

/// Per-prime report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularReport {
    pub p: u32,
    pub rank: usize,
    pub s: Vec<Vec<RenderedValue>>,
    pub dims: Vec<RenderedValue>,
    pub eigenvalues: Vec<EigenRow>,
    pub propositions: PropositionFlags,
}

pub fn modular_report(p: u64) -> Result<ModularReport> {
    let (md, es) = x2_system(p)?;
    Ok(ModularReport {
        p: md.p,
        rank: md.rank(),
        s: md.s.iter().map(|row| row.iter().map(RenderedValue::new).collect()).collect(),
        dims: md.dims.iter().map(RenderedValue::new).collect(),
        eigenvalues: es
            .kron
            .iter()
            .map(|k| EigenRow { i: k.i, j: k.j, eigenvalue: RenderedValue::new(&k.eigenvalue) })
            .collect(),
        propositions: check_propositions(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64, p: u32) -> CycloReal {
        quantum_integer(n, p).unwrap()
    }

    #[test]
    fn smatrix_seven_display() {
        let md = smatrix(7).unwrap();
        let notation: Vec<Vec<String>> =
            md.s.iter().map(|r| r.iter().map(CycloReal::notation).collect()).collect();
        assert_eq!(
            notation,
            vec![vec!["[1]", "[3]", "[5]"], vec!["[3]", "-[5]", "[1]"], vec!["[5]", "[1]", "-[3]"]]
        );
    }

    #[test]
    fn smatrix_five() {
        let md = smatrix(5).unwrap();
        assert!(md.s[0][0].is_one());
        assert_eq!(md.s[1][1], CycloReal::from_integer(5, -1).unwrap());
        assert_eq!(md.s[0][1], qi(3, 5));
    }

    #[test]
    fn lemma_lift_agrees_with_direct_quantum_integer() {
        for p in [5u32, 7, 11, 13, 17, 19, 23] {
            let md = smatrix(p as u64).unwrap();
            for j in 0..md.rank() {
                for k in 0..md.rank() {
                    let direct = qi(((2 * j + 1) * (2 * k + 1)) as i64, p);
                    assert_eq!(md.s[j][k], direct, "p={p} ({j},{k})");
                }
            }
        }
    }

    #[test]
    fn first_column_is_dims() {
        let md = smatrix(11).unwrap();
        assert_eq!(md.column(0), md.dims);
    }

    #[test]
    fn verlinde_small() {
        for p in [5u64, 7, 11] {
            let ring = FusionRing::psu2(p).unwrap();
            assert!(verlinde_check(&ring, &smatrix(p).unwrap()).unwrap());
        }
        assert!(matches!(
            verlinde_check(&FusionRing::psu2(5).unwrap(), &smatrix(7).unwrap()),
            Err(Error::NotPsu2)
        ));
    }

    #[test]
    fn fib_eigenvalues() {
        let md = smatrix(5).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e0 = md.character(1, 0).to_f64();
        let e1 = md.character(1, 1).to_f64();
        assert!((e0 - phi).abs() < 1e-12);
        assert!((e1 + 1.0 / phi).abs() < 1e-12);
        // x² - x - 1 annihilates both.
        for e in [md.character(1, 0), md.character(1, 1)] {
            let one = CycloReal::one(5).unwrap();
            assert!((&(&e.square() - &e) - &one).is_zero());
        }
        for j in 0..2 {
            assert!(md.character(0, j).is_one());
        }
    }

    #[test]
    fn eigensystem_seven() {
        let md = smatrix(7).unwrap();
        let es = conj_eigensystem(&md, 1, false).unwrap();
        let mut evs: Vec<f64> = es.single.iter().map(|e| e.eigenvalue.to_f64()).collect();
        evs.sort_by(f64::total_cmp);
        let want = [-0.8019377358, 0.5549581321, 2.2469796037];
        for (a, b) in evs.iter().zip(want) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(es.kron.len(), 9);
        assert_eq!(es.unit_eigenvalue_count(), 3);
        for k in &es.kron {
            let want = es.single[k.i].eigenvalue.to_f64() / es.single[k.j].eigenvalue.to_f64();
            assert!((k.eigenvalue.to_f64() - want).abs() < 1e-9);
            if k.i == k.j {
                assert!(k.eigenvalue.is_one());
            }
        }
        assert!(es.verify(&FusionRing::psu2(7).unwrap()).unwrap());
        assert!(conj_eigensystem(&md, 0, false).is_err());
        assert_eq!(conj_eigensystem(&md, 0, true).unwrap().unit_eigenvalue_count(), 9);
    }

    #[test]
    fn propositions_small_primes() {
        for p in [5u64, 7, 11, 13] {
            assert!(check_propositions(p).unwrap().all(), "p={p}");
        }
    }

    #[test]
    fn fib_magnitudes_by_enumeration() {
        // λ ∈ {1, 1, φ/(-1/φ), (-1/φ)/φ} = {1, 1, -φ², -1/φ²}.
        let md = smatrix(5).unwrap();
        let es = conj_eigensystem(&md, 1, false).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut mags: Vec<f64> = es.kron.iter().map(|k| k.eigenvalue.to_f64()).collect();
        mags.sort_by(f64::total_cmp);
        let want = [-phi * phi, -1.0 / (phi * phi), 1.0, 1.0];
        for (a, b) in mags.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn x2_column_signs_at_seven() {
        let md = smatrix(7).unwrap();
        let signs: Vec<i8> = md.column(1).iter().map(CycloReal::sign).collect();
        assert_eq!(signs, vec![1, -1, 1]);
        assert!(md.column(0).iter().all(|d| d.sign() == 1));
    }
}
