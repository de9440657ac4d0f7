use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fusionquiver::cyclo::{quantum_integer, CycloReal};

const BITS: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluates `a_0 + Σ a_k (q^k + q^-k)` with 256-bit cosines.
fn evaluate(x: &CycloReal, cc: &mut Consts) -> BigFloat {
    let p = BigFloat::from_i64(x.p() as i64, BITS);
    let pi_over_p = cc.pi(BITS, RM).div(&p, BITS, RM);
    let two = BigFloat::from_i64(2, BITS);
    let mut acc = BigFloat::from_i64(0, BITS);
    for (k, c) in x.coeffs().iter().enumerate() {
        let num = BigFloat::from_i64(c.numer().to_i64().unwrap(), BITS);
        let den = BigFloat::from_i64(c.denom().to_i64().unwrap(), BITS);
        let coeff = num.div(&den, BITS, RM);
        let basis = if k == 0 {
            BigFloat::from_i64(1, BITS)
        } else {
            let angle = pi_over_p.mul(&BigFloat::from_i64(k as i64, BITS), BITS, RM);
            angle.cos(BITS, RM, cc).mul(&two, BITS, RM)
        };
        acc = acc.add(&coeff.mul(&basis, BITS, RM), BITS, RM);
    }
    acc
}

fn random_element(rng: &mut StdRng, p: u32) -> CycloReal {
    let degree = ((p - 1) / 2) as usize;
    // small coefficients make near-cancellation likely
    let coeffs: Vec<BigRational> = (0..degree)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3))))
        .collect();
    CycloReal::from_coeffs(p, &coeffs).unwrap()
}

#[test]
fn sign_agrees_with_high_precision_cosines() {
    let mut cc = Consts::new().unwrap();
    let mut rng = StdRng::seed_from_u64(20);
    let primes = [5u32, 7, 11, 13, 17, 19, 23, 29, 31];
    let mut checked = 0;
    for _ in 0..1000 {
        let p = primes[rng.gen_range(0..primes.len())];
        let x = random_element(&mut rng, p);
        let value = evaluate(&x, &mut cc);
        let expected = if x.is_zero() {
            0
        } else if value.is_negative() {
            -1
        } else {
            1
        };
        assert!(x.is_zero() || !value.is_zero(), "nonzero element evaluated to zero: {x}");
        assert_eq!(x.sign(), expected, "sign of {x} at p = {p}");
        checked += 1;
    }
    assert_eq!(checked, 1000);
}

#[test]
fn quantum_integers_match_sine_ratios() {
    for p in [5u32, 7, 11, 13] {
        for n in -30..30i64 {
            let want = (n as f64 * std::f64::consts::PI / p as f64).sin()
                / (std::f64::consts::PI / p as f64).sin();
            assert!((quantum_integer(n, p).unwrap().to_f64() - want).abs() < 1e-12, "[{n}] at p = {p}");
        }
    }
}

fn element(p: u32) -> impl Strategy<Value = CycloReal> {
    let degree = ((p - 1) / 2) as usize;
    proptest::collection::vec((-6i64..=6, 1i64..=4), degree).prop_map(move |cs| {
        let coeffs: Vec<BigRational> =
            cs.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        CycloReal::from_coeffs(p, &coeffs).unwrap()
    })
}

proptest! {
    #[test]
    fn field_axioms(a in element(11), b in element(11), c in element(11)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycloReal::zero(11).unwrap(), a.clone());
        prop_assert_eq!(&a * &CycloReal::one(11).unwrap(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!(&b.try_div(&a).unwrap() * &a, b.clone());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn order_is_compatible_with_arithmetic(a in element(7), b in element(7)) {
        let sum = &a + &b;
        if a.sign() >= 0 && b.sign() >= 0 {
            prop_assert!(sum.sign() >= 0);
        }
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        prop_assert_eq!((-&a).sign(), -a.sign());
    }
}
