//! Exact arithmetic in the maximal real subfield `Q(q + q⁻¹)` of the `2p`-th
//! cyclotomic field, `q = e^{iπ/p}`, `p` an odd prime.
//!
//! Elements are stored in the basis
//!
//! ```text
//! e_0 = 1,  e_k = q^k + q^{-k}   (1 <= k < h),   h = (p - 1) / 2
//! ```
//!
//! which is the conjugation-invariant part of the power basis modulo the
//! `2p`-th cyclotomic polynomial. Coefficients are kept as an integer vector
//! over a single positive denominator in lowest terms, so two values are equal
//! exactly when their stored data are equal.
//!
//! Products `e_j e_k = e_{j+k} + e_{|j-k|}` may land on `q^m + q^{-m}` with
//! `m >= h`; those are rewritten with `q^p = -1` and the palindromic relation
//! `Σ_{k=0}^{p-1} (-q)^k = 0`.

mod embed;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Scalar};
use crate::numjson::RationalJson;

const START_BITS: u32 = 64;

/// Check that `p` is an odd prime `>= 5`.
pub fn check_prime(p: u64) -> Result<u32> {
    if p < 5 || p % 2 == 0 || p > u32::MAX as u64 {
        return Err(Error::InvalidPrime(p));
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::InvalidPrime(p));
        }
        d += 2;
    }
    Ok(p as u32)
}

/// Odd primes `5 <= p <= max`.
pub fn primes_up_to(max: u64) -> Vec<u32> {
    (5..=max).filter_map(|p| check_prime(p).ok()).collect()
}

/// Reduction data for one conductor.
#[derive(Debug)]
struct Table {
    h: usize,
    /// `reduce[m]` = coordinates of `q^m + q^{-m}` for `0 <= m <= p`.
    reduce: Vec<Vec<i64>>,
}

impl Table {
    fn build(p: u32) -> Self {
        let h = ((p - 1) / 2) as usize;
        let pu = p as usize;
        let mut reduce = vec![vec![0i64; h]; pu + 1];
        reduce[0][0] = 2;
        for (m, row) in reduce.iter_mut().enumerate().take(h).skip(1) {
            row[m] = 1;
        }
        // Σ_{m=1}^{h} (-1)^{h-m} c_m + (-1)^h = 0, solved for c_h.
        let sign = |e: usize| if e % 2 == 0 { 1i64 } else { -1 };
        reduce[h][0] = -sign(h);
        for m in 1..h {
            reduce[h][m] = -sign(h - m);
        }
        // c_m = -c_{p-m}.
        for m in h + 1..=pu {
            let mirrored: Vec<i64> = reduce[pu - m].iter().map(|x| -x).collect();
            reduce[m] = mirrored;
        }
        Table { h, reduce }
    }

    fn get(p: u32) -> Arc<Table> {
        static TABLES: OnceLock<RwLock<HashMap<u32, Arc<Table>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(t) = tables.read().expect("table lock poisoned").get(&p) {
            return Arc::clone(t);
        }
        let t = Arc::new(Table::build(p));
        tables
            .write()
            .expect("table lock poisoned")
            .entry(p)
            .or_insert(t)
            .clone()
    }
}

/// Closed interval `[mid - radius, mid + radius]` containing a real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub mid: f64,
    pub radius: f64,
}

impl Enclosure {
    pub fn contains(&self, x: f64) -> bool {
        (x - self.mid).abs() <= self.radius
    }
}

/// An exact element of `Q(q + q⁻¹)`, `q = e^{iπ/p}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloReal {
    p: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloReal {
    fn raw(p: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut v = CycloReal { p, num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in &mut self.num {
                *x = -&*x;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            self.den /= &g;
            for x in &mut self.num {
                *x /= &g;
            }
        }
    }

    fn degree_of(p: u32) -> usize {
        ((p - 1) / 2) as usize
    }

    pub fn zero(p: u32) -> Result<Self> {
        let p = check_prime(p as u64)?;
        Ok(Self::zero_unchecked(p))
    }

    fn zero_unchecked(p: u32) -> Self {
        CycloReal {
            p,
            num: vec![BigInt::zero(); Self::degree_of(p)],
            den: BigInt::one(),
        }
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: u32, n: i64) -> Result<Self> {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u32, r: BigRational) -> Result<Self> {
        let p = check_prime(p as u64)?;
        let mut v = Self::zero_unchecked(p);
        v.num[0] = r.numer().clone();
        v.den = r.denom().clone();
        Ok(v)
    }

    /// Build from rational coordinates in the canonical basis.
    pub fn from_coeffs(p: u32, coeffs: &[BigRational]) -> Result<Self> {
        let p = check_prime(p as u64)?;
        let h = Self::degree_of(p);
        if coeffs.len() != h {
            return Err(Error::DimensionMismatch(format!(
                "expected {h} coefficients for p = {p}, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::raw(p, num, den))
    }

    /// `q^k + q^{-k}` for any integer `k`.
    pub fn cos_basis(p: u32, k: i64) -> Result<Self> {
        let p = check_prime(p as u64)?;
        Ok(Self::cos_unchecked(p, k))
    }

    fn cos_unchecked(p: u32, k: i64) -> Self {
        let two_p = 2 * p as i64;
        let mut m = k.rem_euclid(two_p);
        if m > p as i64 {
            m = two_p - m;
        }
        let table = Table::get(p);
        CycloReal {
            p,
            num: table.reduce[m as usize].iter().map(|&x| BigInt::from(x)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree of the field over `Q`, `(p - 1) / 2`.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    /// Rational coordinates in the canonical basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let combine = |a: &BigInt, b: &BigInt| if subtract { a - b } else { a + b };
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| combine(a, b)).collect();
            return Self::raw(self.p, num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| combine(&(a * &other.den), &(b * &self.den)))
            .collect();
        Self::raw(self.p, num, &self.den * &other.den)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let h = self.num.len();
        // raw[0] is the constant term, raw[m] the coefficient of q^m + q^-m.
        let mut raw = vec![BigInt::zero(); 2 * h.max(1) - 1];
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                match (j, k) {
                    (0, _) => raw[k] += t,
                    (_, 0) => raw[j] += t,
                    _ => {
                        if j == k {
                            raw[0] += &t * 2;
                        } else {
                            raw[j.abs_diff(k)] += &t;
                        }
                        raw[j + k] += t;
                    }
                }
            }
        }
        let table = Table::get(self.p);
        let mut num: Vec<BigInt> = raw[..h].to_vec();
        for (m, coeff) in raw.iter().enumerate().skip(h) {
            if coeff.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&table.reduce[m]) {
                if r != 0 {
                    *slot += coeff * r;
                }
            }
        }
        Self::raw(self.p, num, &self.den * &other.den)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let num = self.num.iter().map(|x| x * k.numer()).collect();
        Self::raw(self.p, num, &self.den * k.denom())
    }

    pub fn scale_by(&self, k: i64) -> Self {
        match k {
            0 => Self::zero_unchecked(self.p),
            1 => self.clone(),
            _ => {
                let num = self.num.iter().map(|x| x * k).collect();
                Self::raw(self.p, num, self.den.clone())
            }
        }
    }

    pub fn square(&self) -> Self {
        self.mul_unchecked(self)
    }

    /// Multiplicative inverse, solving `a · x = 1` in coordinates.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Self::from_rational(self.p, r.recip());
        }
        let h = self.num.len();
        // Column k holds the coordinates of self · e_k.
        let columns: Vec<Vec<BigRational>> = (0..h)
            .map(|k| {
                let basis = if k == 0 {
                    Self::from_integer(self.p, 1).expect("valid p")
                } else {
                    Self::cos_unchecked(self.p, k as i64)
                };
                self.mul_unchecked(&basis).coeffs()
            })
            .collect();
        let matrix: Vec<Vec<BigRational>> = (0..h)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut rhs = vec![BigRational::zero(); h];
        rhs[0] = BigRational::one();
        let x = linalg::solve(&matrix, &rhs).ok_or(Error::DivisionByZero)?;
        Self::from_coeffs(self.p, &x)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_integer(self.p, 1).expect("valid p");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Fixed-point enclosure: returns `(s, err)` with
    /// `|value · den · 2^bits - s| <= err`.
    fn fixed_point(&self, bits: u32) -> (BigInt, BigInt) {
        let table = embed::cos_table(self.p, bits);
        let mut s = &self.num[0] << bits;
        let mut err = BigInt::zero();
        for (k, n) in self.num.iter().enumerate().skip(1) {
            if n.is_zero() {
                continue;
            }
            s += n * &table[k];
            err += n.abs() * 2;
        }
        (s, err)
    }

    /// Exact sign, refining precision until the enclosure excludes zero.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = START_BITS;
        loop {
            let (s, err) = self.fixed_point(bits);
            if s > err {
                return 1;
            }
            if s < -err {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Compare `|self|` with `|other|`.
    pub fn cmp_abs(&self, other: &Self) -> Result<Ordering> {
        self.same_field(other)?;
        let diff = self.abs().add_unchecked(&other.abs(), true);
        Ok(diff.sign().cmp(&0))
    }

    /// Real embedding as an interval, evaluated with `precision` fractional bits.
    pub fn to_float(&self, precision: u32) -> Enclosure {
        let bits = precision.max(32);
        if let Some(r) = self.as_rational() {
            let mid = r.to_f64().unwrap_or(f64::NAN);
            let exact = BigRational::from_float(mid).is_some_and(|m| m == r);
            let radius = if exact { 0.0 } else { mid.abs() * f64::EPSILON };
            return Enclosure { mid, radius };
        }
        let (s, err) = self.fixed_point(bits);
        let scale = &self.den << bits;
        let mid = BigRational::new(s, scale.clone()).to_f64().unwrap_or(f64::NAN);
        let bound = BigRational::new(err, scale).to_f64().unwrap_or(f64::INFINITY);
        // Absorb the rounding of both conversions.
        let radius = bound * (1.0 + 4.0 * f64::EPSILON) + mid.abs() * f64::EPSILON;
        Enclosure { mid, radius }
    }

    /// Best `f64` approximation (for display).
    pub fn to_f64(&self) -> f64 {
        self.to_float(64).mid
    }

    /// Recognize `±[n]_q` for odd `1 <= n <= p - 2`, i.e. `± d_{X_{n-1}}`.
    pub fn as_signed_quantum_integer(&self) -> Option<(i8, u32)> {
        let p = self.p;
        (1..=p - 2).step_by(2).find_map(|n| {
            let v = quantum_integer(n as i64, p).ok()?;
            if &v == self {
                Some((1, n))
            } else if (-&v) == *self {
                Some((-1, n))
            } else {
                None
            }
        })
    }

    /// `[n]`, `-[n]`, or the coordinate expansion.
    pub fn notation(&self) -> String {
        match self.as_signed_quantum_integer() {
            Some((1, n)) => format!("[{n}]"),
            Some((_, n)) => format!("-[{n}]"),
            None => self.to_string(),
        }
    }
}

/// Quantum integer `[n]_q = (q^n - q^{-n}) / (q - q^{-1}) = sin(nπ/p) / sin(π/p)`.
pub fn quantum_integer(n: i64, p: u32) -> Result<CycloReal> {
    let p = check_prime(p as u64)?;
    let two_p = 2 * p as i64;
    let r = n.rem_euclid(two_p);
    if r == 0 || r == p as i64 {
        return Ok(CycloReal::zero_unchecked(p));
    }
    if r > p as i64 {
        return Ok(-quantum_integer(two_p - r, p)?);
    }
    // [r] = q^{r-1} + q^{r-3} + ... + q^{-(r-1)}.
    let table = Table::get(p);
    let h = table.h;
    let mut num = vec![BigInt::zero(); h];
    if r % 2 == 1 {
        num[0] += 1;
    }
    let start = if r % 2 == 1 { 2 } else { 1 };
    for m in (start..r).step_by(2) {
        for (slot, &c) in num.iter_mut().zip(&table.reduce[m as usize]) {
            *slot += c;
        }
    }
    Ok(CycloReal::raw(p, num, BigInt::one()))
}

impl fmt::Display for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mag_s = crate::numjson::rational_string(&mag);
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag_s}")?,
                (_, true) => write!(f, "c{k}")?,
                _ => write!(f, "{mag_s}*c{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloReal(p={}, {})", self.p, self)
    }
}

impl PartialOrd for CycloReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.sign().cmp(&0))
    }
}

impl Neg for &CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        CycloReal {
            p: self.p,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        -&self
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloReal> for &CycloReal {
            type Output = CycloReal;
            /// Panics when the operands come from different fields; use the
            /// `try_` form to get an error instead.
            fn $method(self, rhs: &CycloReal) -> CycloReal {
                self.$checked(rhs).expect("cyclotomic operands with different p")
            }
        }
        impl $trait<CycloReal> for CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: CycloReal) -> CycloReal {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);

impl Scalar for CycloReal {
    fn zero_like(&self) -> Self {
        CycloReal::zero_unchecked(self.p)
    }
    fn one_like(&self) -> Self {
        CycloReal::from_integer(self.p, 1).expect("valid p")
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale_by(k)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloDoc {
    p: u32,
    coeffs: Vec<RationalJson>,
}

impl Serialize for CycloReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloDoc {
            p: self.p,
            coeffs: self.coeffs().into_iter().map(RationalJson).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = CycloDoc::deserialize(d)?;
        let coeffs: Vec<BigRational> = doc.coeffs.into_iter().map(|c| c.0).collect();
        CycloReal::from_coeffs(doc.p, &coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(n: i64, p: u32) -> CycloReal {
        quantum_integer(n, p).unwrap()
    }

    fn float_qi(n: i64, p: u32) -> f64 {
        let pf = p as f64;
        (n as f64 * std::f64::consts::PI / pf).sin() / (std::f64::consts::PI / pf).sin()
    }

    #[test]
    fn rejects_bad_conductors() {
        for p in [0u32, 1, 2, 3, 4, 9, 15, 21] {
            assert!(matches!(quantum_integer(1, p), Err(Error::InvalidPrime(_))), "p={p}");
        }
    }

    #[test]
    fn quantum_one_is_one() {
        assert!(qi(1, 7).is_one());
        assert_eq!(qi(1, 7).to_float(64), Enclosure { mid: 1.0, radius: 0.0 });
    }

    #[test]
    fn nine_is_minus_five_at_seven() {
        assert_eq!(qi(9, 7), -qi(5, 7));
        assert!((qi(9, 7) + qi(5, 7)).is_zero());
        assert_eq!(qi(9, 7).sign(), -1);
    }

    #[test]
    fn golden_ratio_at_five() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let e = qi(3, 5).to_float(64);
        assert!(e.contains(phi), "{e:?}");
        assert!((e.mid - 1.6180339887).abs() < 1e-9);
        let inv = qi(3, 5).inverse().unwrap();
        assert!((inv.to_f64() - 0.6180339887).abs() < 1e-9);
        assert!((&qi(3, 5) * &inv).is_one());
    }

    #[test]
    fn quantum_integers_match_sine_ratio() {
        for p in [5u32, 7, 11, 13, 29] {
            for n in -3 * p as i64..3 * p as i64 {
                let e = qi(n, p).to_float(80);
                let want = float_qi(n, p);
                assert!((e.mid - want).abs() < 1e-9, "n={n} p={p}: {} vs {want}", e.mid);
            }
        }
    }

    #[test]
    fn chebyshev_recurrence() {
        // Verified numerically first: [2][3] = [2] + [4] at p = 7.
        let lhs = float_qi(2, 7) * float_qi(3, 7);
        let rhs = float_qi(2, 7) + float_qi(4, 7);
        assert!((lhs - rhs).abs() < 1e-12);
        assert_eq!(&qi(2, 7) * &qi(3, 7), &qi(2, 7) + &qi(4, 7));
    }

    #[test]
    fn cmp_abs_three_five() {
        // sin(3π/7)/sin(π/7) ≈ 2.2470 and sin(5π/7)/sin(π/7) ≈ 1.8019.
        assert!(float_qi(3, 7) > float_qi(5, 7));
        assert_eq!(qi(3, 7).cmp_abs(&qi(5, 7)).unwrap(), Ordering::Greater);
        assert_eq!((-qi(5, 7)).cmp_abs(&qi(3, 7)).unwrap(), Ordering::Less);
        assert_eq!(qi(9, 7).cmp_abs(&qi(5, 7)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn mismatched_fields_error() {
        let a = qi(3, 7);
        let b = qi(3, 11);
        assert!(matches!(a.try_add(&b), Err(Error::ModulusMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::ModulusMismatch { .. })));
        assert!(a.cmp_abs(&b).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(CycloReal::zero(7).unwrap().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn reported_ratios_at_seven() {
        let r = qi(3, 7).try_div(&qi(1, 7)).unwrap().to_float(64);
        assert!((r.mid - 2.2469796).abs() < 1e-6);
        let r = (-qi(5, 7)).try_div(&qi(3, 7)).unwrap().to_float(64);
        assert!((r.mid + 0.802).abs() < 5e-4);
    }

    #[test]
    fn json_shape() {
        let v = qi(3, 7);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with("{\"p\":7,\"coeffs\":[["), "{s}");
        let back: CycloReal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CycloReal>(r#"{"p":7,"coeffs":[[1,1]]}"#).is_err());
    }

    #[test]
    fn notation_recognizes_dims() {
        assert_eq!(qi(9, 7).notation(), "-[5]");
        assert_eq!(qi(3, 7).notation(), "[3]");
    }
}
