//! Dense exact linear algebra over any field implementing [`Scalar`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Field element usable by the generic matrix routines.
///
/// `zero_like`/`one_like` exist because some fields (cyclotomic values) carry
/// a parameter that a bare `Zero::zero()` cannot supply.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn scale_int(&self, k: i64) -> Self;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
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
        (!self.is_zero()).then(|| self.recip())
    }
    fn scale_int(&self, k: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn rational_matrix(m: &[Vec<u32>]) -> Matrix<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

pub fn identity_like<T: Scalar>(n: usize, sample: &T) -> Matrix<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { sample.one_like() } else { sample.zero_like() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let n = a.len();
    let inner = b.len();
    let m = b.first().map_or(0, Vec::len);
    let sample = &b[0][0];
    let mut out = vec![vec![sample.zero_like(); m]; n];
    for i in 0..n {
        for k in 0..inner {
            let aik = &a[i][k];
            if aik.is_zero_value() {
                continue;
            }
            for j in 0..m {
                if b[k][j].is_zero_value() {
                    continue;
                }
                out[i][j] = out[i][j].add_ref(&aik.mul_ref(&b[k][j]));
            }
        }
    }
    out
}

/// `a * b` where `a` is a small integer matrix.
pub fn int_mat_mul<T: Scalar>(a: &[Vec<u32>], b: &[Vec<T>]) -> Matrix<T> {
    let m = b.first().map_or(0, Vec::len);
    let sample = &b[0][0];
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(&x, _)| x != 0)
                        .fold(sample.zero_like(), |acc, (&x, brow)| {
                            acc.add_ref(&brow[j].scale_int(x as i64))
                        })
                })
                .collect()
        })
        .collect()
}

/// `a * b` where `b` is a small integer matrix.
pub fn mat_mul_int<T: Scalar>(a: &[Vec<T>], b: &[Vec<u32>]) -> Matrix<T> {
    let m = b.first().map_or(0, Vec::len);
    let sample = &a[0][0];
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(_, brow)| brow[j] != 0)
                        .fold(sample.zero_like(), |acc, (x, brow)| {
                            acc.add_ref(&x.scale_int(brow[j] as i64))
                        })
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse<T: Scalar>(m: &[Vec<T>]) -> Option<Matrix<T>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let sample = m[0][0].clone();
    let mut a: Matrix<T> = m.to_vec();
    let mut inv = identity_like(n, &sample);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero_value())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = a[col][col].try_inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul_ref(&pinv);
            inv[col][j] = inv[col][j].mul_ref(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero_value() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = a[col][j].mul_ref(&f);
                a[r][j] = a[r][j].sub_ref(&t);
                let t = inv[col][j].mul_ref(&f);
                inv[r][j] = inv[r][j].sub_ref(&t);
            }
        }
    }
    Some(inv)
}

/// Solve `m x = rhs` for square nonsingular `m`.
pub fn solve<T: Scalar>(m: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let mut a: Matrix<T> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero_value())?;
        a.swap(col, pivot);
        let pinv = a[col][col].try_inv()?;
        for j in col..=n {
            a[col][j] = a[col][j].mul_ref(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero_value() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..=n {
                let t = a[col][j].mul_ref(&f);
                a[r][j] = a[r][j].sub_ref(&t);
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// Rank by row reduction; rows are vectors.
pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut a: Matrix<T> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..a.len()).find(|&i| !a[i][col].is_zero_value()) else {
            continue;
        };
        a.swap(r, pivot);
        let pinv = a[r][col].try_inv().expect("nonzero pivot");
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero_value() {
                continue;
            }
            let f = a[i][col].mul_ref(&pinv);
            for j in col..ncols {
                let t = a[r][j].mul_ref(&f);
                a[i][j] = a[i][j].sub_ref(&t);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

pub fn is_nonneg_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn inverse_of_fusion_matrix_is_integral() {
        let f = rational_matrix(&[vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]);
        let inv = inverse(&f).unwrap();
        assert!(inv.iter().flatten().all(|x| x.is_integer()));
        assert_eq!(mat_mul(&f, &inv), identity_like(3, &q(0)));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_small_system() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&m, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
    }
}
