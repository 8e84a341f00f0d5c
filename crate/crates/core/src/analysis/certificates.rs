//! Integer-polynomial certificates: exact evaluation, Taylor shifts whose
//! coefficients are all positive (so the polynomial is positive to the right
//! of the shift), and exact bisection for the `h₄` root behind the A7/A8
//! crossing.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::approximations::{approx_value, ApproxId};
use crate::error::{Error, Result};
use crate::scalar::EULER_GAMMA;
use crate::series::{int, rat, Rational};
use crate::special_fn::{gamma_fn, Modulus};

/// The polynomials whose signs carry the proofs. Coefficients are stored
/// lowest degree first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    G3,
    G4,
    G6,
    /// `h₄(u)` with `u = x + 1/x`.
    H4,
}

const G3: [i64; 8] = [864, -40824, -227_064, -149_813, -3438, 41033, 7346, 896];
const G4: [i64; 9] = [
    -341_712, -2_184_000, -3_787_398, -2_496_996, 482_131, 638_728, 153_661, 15474, 512,
];
const G6: [i64; 13] = [
    -86_111_424,
    -1_692_953_136,
    -16_962_249_960,
    -76_358_742_474,
    -132_036_870_576,
    -33_746_602_635,
    -28_074_816_632,
    -54_727_744_833,
    -8_157_468_886,
    -195_118_044,
    -29_604_936,
    40_606_208,
    6_422_528,
];
const H4: [i64; 7] = [-32768, 98304, -23040, -98560, -16260, 14124, 3703];

impl Certificate {
    pub fn coeffs(self) -> &'static [i64] {
        match self {
            Certificate::G3 => &G3,
            Certificate::G4 => &G4,
            Certificate::G6 => &G6,
            Certificate::H4 => &H4,
        }
    }

    /// The point past which the polynomial is claimed positive (for `h₄`, the
    /// shift that exposes its single positive root).
    pub fn shift(self) -> i64 {
        match self {
            Certificate::G3 | Certificate::G4 => 3,
            Certificate::G6 => 7,
            Certificate::H4 => 2,
        }
    }

    /// Coefficients of `P(t + shift)`, lowest degree first.
    pub fn shifted(self) -> Vec<BigInt> {
        taylor_shift(self.coeffs(), self.shift())
    }

    /// The shifted coefficients as printed with the proofs (G3, G4, H4).
    pub fn stated_shift(self) -> Option<Vec<i64>> {
        let v: &[i64] = match self {
            Certificate::G3 => &[10_797_192, 26_081_658, 22_815_555, 10_008_901, 2_450_487, 342_605, 26162, 896],
            Certificate::G4 => &[
                235_084_068,
                530_387_220,
                448_344_153,
                194_587_122,
                48_333_256,
                7_103_356,
                607_639,
                27762,
                512,
            ],
            Certificate::H4 => &[-288_000, 144_000, 1_014_000, 928_800, 347_160, 58560, 3703],
            Certificate::G6 => return None,
        };
        Some(v.to_vec())
    }

    pub fn eval_i128(self, x: i128) -> Result<i128> {
        eval_poly_i128(self.coeffs(), x)
    }

    pub fn eval_exact(self, x: &Rational) -> Rational {
        eval_poly_exact(self.coeffs(), x)
    }

    pub fn eval_f64(self, x: f64) -> f64 {
        self.coeffs().iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

/// Horner in checked 128-bit integers.
pub fn eval_poly_i128(coeffs: &[i64], x: i128) -> Result<i128> {
    coeffs.iter().rev().try_fold(0_i128, |acc, &c| {
        acc.checked_mul(x)
            .and_then(|v| v.checked_add(c as i128))
            .ok_or_else(|| Error::Overflow(format!("polynomial at x = {x} exceeds 128-bit integers")))
    })
}

/// Exact Horner evaluation at a rational point.
pub fn eval_poly_exact(coeffs: &[i64], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, &c| acc * x + int(c))
}

/// Coefficients of `P(t + a)`, lowest degree first (repeated synthetic division).
pub fn taylor_shift(coeffs: &[i64], a: i64) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
    let a = BigInt::from(a);
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * &a;
            c[j] += t;
        }
    }
    c
}

/// Sign changes in a coefficient sequence, zeros skipped (Descartes' bound on
/// positive roots).
pub fn sign_changes(coeffs: &[BigInt]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `g₂(x) = ln(x + 1/2) + γ − x(11x² + 8x + 21)/((x+1)P)
/// + (7/32) x^{1/8} (x+4)(2x+1)(64x−9)/((x+1)P)
/// − 3π/(128 Γ(7/8)) (64x−9)(x+2)(x+3)(x+4)/((x+1)P)`, `P = x³ + 7x² − 12x + 24`.
pub fn eval_g2(x: f64) -> Result<f64> {
    use std::f64::consts::PI;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("g2 needs x > 0, got {x}")));
    }
    let p = x * x * x + 7.0 * x * x - 12.0 * x + 24.0;
    let q = (x + 1.0) * p;
    let gamma78 = gamma_fn(0.875)?;
    Ok((x + 0.5).ln() + EULER_GAMMA - x * (11.0 * x * x + 8.0 * x + 21.0) / q
        + 7.0 / 32.0 * x.powf(0.125) * (x + 4.0) * (2.0 * x + 1.0) * (64.0 * x - 9.0) / q
        - 3.0 * PI / (128.0 * gamma78) * (64.0 * x - 9.0) * (x + 2.0) * (x + 3.0) * (x + 4.0) / q)
}

/// `g₅(x) = ln(g₄(x)/(2x+1)) − ln(7 g₃(x)/x^{7/8})`, for `x ≥ 3` where both
/// polynomials are positive.
pub fn eval_g5(x: f64) -> Result<f64> {
    let (g3, g4) = (Certificate::G3.eval_f64(x), Certificate::G4.eval_f64(x));
    if !(g3 > 0.0 && g4 > 0.0 && x > 0.0) {
        return Err(Error::Domain(format!("g5 needs g3, g4 > 0, got x = {x}")));
    }
    Ok((g4 / (2.0 * x + 1.0)).ln() - (7.0 * g3).ln() + 0.875 * x.ln())
}

/// Sign of `h₄(v + 2)` at an exact rational `v`.
pub fn h4_shifted_sign(v: &Rational) -> Ordering {
    Certificate::H4.eval_exact(&(v + int(2))).cmp(&Rational::zero())
}

/// Exact bisection bracket `(lo, hi)` for the unique positive root `v₁` of
/// `h₄(v + 2)`, with `hi - lo = 2^{-steps}`.
pub fn h4_root_bracket(steps: u32) -> (Rational, Rational) {
    let (mut lo, mut hi) = (int(0), int(1));
    debug_assert_eq!(h4_shifted_sign(&lo), Ordering::Less);
    debug_assert_eq!(h4_shifted_sign(&hi), Ordering::Greater);
    for _ in 0..steps {
        let mid = (&lo + &hi) * rat(1, 2);
        match h4_shifted_sign(&mid) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return (mid.clone(), mid),
        }
    }
    (lo, hi)
}

/// Where `A7(x) = A8(x)` for `x = r' ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Found by bisection on `A8 − A7` in floating point.
    pub x0_numeric: f64,
    /// `x₁²` with `x₁ + 1/x₁ = 2 + v₁` from the `h₄` root.
    pub x0_certificate: f64,
    /// `r₀ = sqrt(1 − x₀²)` from the numeric crossing.
    pub r0: f64,
}

fn a8_minus_a7(x: f64) -> f64 {
    let m = Modulus::from_complement(x).expect("x in (0, 1)");
    approx_value(ApproxId::A8, &m) - approx_value(ApproxId::A7, &m)
}

/// Locates the A7/A8 crossing two independent ways. `A8 < A7` on `(0, x₀)`
/// and `A8 > A7` on `(x₀, 1)`.
pub fn crossing_a7_a8() -> Result<Crossing> {
    let (mut lo, mut hi) = (0.05, 0.95);
    if !(a8_minus_a7(lo) < 0.0 && a8_minus_a7(hi) > 0.0) {
        return Err(Error::Root("A8 - A7 does not change sign on (0.05, 0.95)".into()));
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if a8_minus_a7(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x0 = 0.5 * (lo + hi);
    let (vlo, vhi) = h4_root_bracket(60);
    let v1 = ((vlo + vhi) * rat(1, 2)).to_f64().unwrap_or(f64::NAN);
    let x1 = (v1 + 2.0 - (v1 * (v1 + 4.0)).sqrt()) / 2.0;
    Ok(Crossing {
        x0_numeric: x0,
        x0_certificate: x1 * x1,
        r0: (1.0 - x0 * x0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g6_at_seven_is_exact() {
        assert_eq!(Certificate::G6.eval_i128(7).unwrap(), 56_640_373_211_408_308);
        assert_eq!(Certificate::G6.eval_exact(&int(7)), int(56_640_373_211_408_308));
        assert_eq!(Certificate::G3.eval_i128(7).unwrap(), 2_220_734_176);
        assert_eq!(Certificate::G4.eval_i128(7).unwrap(), 44_608_161_668);
    }

    #[test]
    fn wide_arguments_overflow() {
        assert!(matches!(Certificate::G6.eval_i128(1_000_000), Err(Error::Overflow(_))));
        let big = Certificate::G6.eval_exact(&int(1_000_000));
        assert!(big > Rational::zero());
    }

    #[test]
    fn shifts_match_and_certify() {
        for c in [Certificate::G3, Certificate::G4, Certificate::H4] {
            let stated: Vec<BigInt> = c.stated_shift().unwrap().into_iter().map(BigInt::from).collect();
            assert_eq!(c.shifted(), stated, "{c:?}");
        }
        for c in [Certificate::G3, Certificate::G4, Certificate::G6] {
            assert!(c.shifted().iter().all(|v| v.is_positive()), "{c:?}");
        }
        assert_eq!(Certificate::G6.shifted().last().unwrap(), &BigInt::from(6_422_528));
        assert_eq!(sign_changes(&Certificate::H4.shifted()), 1);
    }

    // mpmath
    #[test]
    fn g2_and_g5_anchors() {
        assert!((eval_g2(10.0).unwrap() - 0.037_141_299_394_687_447_6).abs() < 1e-13);
        assert!((eval_g2(7.0).unwrap() + 0.097_860_348_900_536_233).abs() < 1e-13);
        assert!((eval_g5(7.0).unwrap() - 0.048_790_018_468_707_731).abs() < 1e-13);
        assert!((eval_g5(10.0).unwrap() - 0.071_571_398_641_704_884).abs() < 1e-13);
        assert!(eval_g5(0.1).is_err());
    }

    #[test]
    fn h4_root_in_stated_bracket() {
        let lo = rat(399_475_162, 1_000_000_000);
        let hi = rat(399_475_163, 1_000_000_000);
        assert_eq!(h4_shifted_sign(&lo), Ordering::Less);
        assert_eq!(h4_shifted_sign(&hi), Ordering::Greater);
        let (a, b) = h4_root_bracket(50);
        assert!(a >= lo && b <= hi);
        let mid = ((a + b) * rat(1, 2)).to_f64().unwrap();
        assert!((mid - 0.399_475_162_981_132_485_7).abs() < 1e-14);
    }

    #[test]
    fn crossing() {
        let c = crossing_a7_a8().unwrap();
        assert!((c.x0_numeric - 0.288_248_160_191_214_8).abs() < 1e-10);
        assert!((c.x0_certificate - c.x0_numeric).abs() < 1e-10);
        assert!((c.r0 - 0.957_555_741_534_862_2).abs() < 1e-10);
        assert!(a8_minus_a7(0.1) < 0.0 && a8_minus_a7(0.5) > 0.0);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        // positive shifted coefficients make g3, g4, g6 positive from their shift on
        #[test]
        fn certificates_positive_past_shift(num in 0i64..100_000, den in 1i64..1000) {
            for c in [Certificate::G3, Certificate::G4, Certificate::G6] {
                let x = int(c.shift()) + rat(num, den);
                prop_assert!(c.eval_exact(&x) > Rational::zero());
            }
        }

        #[test]
        fn integer_and_exact_agree(x in -200i128..200) {
            for c in [Certificate::G3, Certificate::G4, Certificate::G6, Certificate::H4] {
                let exact = c.eval_exact(&int(x as i64));
                prop_assert_eq!(Rational::from_integer(c.eval_i128(x).unwrap().into()), exact);
            }
        }
    }
}
