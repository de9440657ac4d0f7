//! Fixed-point evaluation of the real embedding `q^k + q^{-k} = 2cos(kπ/p)`.
//!
//! All quantities are big integers scaled by `2^bits`. Every table entry is
//! within 2 units of the last place of the true value.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

const GUARD_BITS: u32 = 40;

type TableCache = Mutex<HashMap<(u32, u32), Arc<Vec<BigInt>>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `atan(1/x) * 2^w`, truncated term by term.
fn atan_inv(x: u32, w: u32) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π * 2^w` via Machin's formula.
pub(crate) fn pi_fixed(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

/// `cos(theta)` for `theta` given as a fixed-point value with `w` fractional bits.
fn cos_fixed(theta: &BigInt, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let theta2 = (theta * theta) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut n: u64 = 1;
    loop {
        term = (&term * &theta2) >> w;
        term /= BigInt::from((2 * n - 1) * (2 * n));
        if term.is_zero() {
            break;
        }
        if n % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        n += 1;
    }
    sum
}

/// Table `T[k] ≈ 2cos(kπ/p) * 2^bits` for `k = 0..h`, `|error| <= 2`.
pub(crate) fn cos_table(p: u32, bits: u32) -> Arc<Vec<BigInt>> {
    if let Some(t) = cache().lock().expect("cos table cache poisoned").get(&(p, bits)) {
        return Arc::clone(t);
    }
    let h = ((p - 1) / 2) as usize;
    let w = bits + GUARD_BITS;
    let pi = pi_fixed(w);
    let mut table = Vec::with_capacity(h);
    for k in 0..h {
        let theta = &pi * BigInt::from(k as u64) / BigInt::from(p);
        let c = cos_fixed(&theta, w);
        table.push((c << 1u32) >> GUARD_BITS);
    }
    let table = Arc::new(table);
    cache()
        .lock()
        .expect("cos table cache poisoned")
        .insert((p, bits), Arc::clone(&table));
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(64);
        let approx = pi.to_f64().unwrap() / 2f64.powi(64);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn cos_table_matches_libm() {
        let t = cos_table(11, 60);
        for (k, v) in t.iter().enumerate() {
            let got = v.to_f64().unwrap() / 2f64.powi(60);
            let want = 2.0 * (k as f64 * std::f64::consts::PI / 11.0).cos();
            assert!((got - want).abs() < 1e-14, "k={k}: {got} vs {want}");
        }
    }
}
