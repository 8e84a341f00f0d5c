//! The monotone ratios `F`, `G`, `R_p`, `G₁` and the corollary differences.
//!
//! Numerators and denominators are formed as deficits, `1 - (2/π)E` and
//! `1 - S = -expm1(ln S)`, so both keep full relative accuracy as `r → 0`.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::ledger::TheoremTwoLedger;
use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::special_fn::{ellip_e_deficit, Modulus};
use crate::stolarsky::{stolarsky, theta, MeanParams, PositivePair};

// Endpoint limits are substituted this close to 0 and 1.
const ENDPOINT: f64 = 1e-6;
// G₁ from its Maclaurin series up to here; the series has G1_TERMS terms.
const G1_SERIES_MAX: f64 = 0.9;
const G1_TERMS: usize = 240;

fn family_deficit<T: Real>(params: MeanParams<T>, m: &Modulus<T>) -> T {
    -params.log_unit(m.log_inv_complement()).exp_m1()
}

fn near_zero<T: Real>(m: &Modulus<T>) -> bool {
    m.r() < T::lit(ENDPOINT)
}

fn near_one<T: Real>(m: &Modulus<T>) -> bool {
    m.r() > T::one() - T::lit(ENDPOINT)
}

fn deficit_ratio<T: Real>(params: MeanParams<T>, m: &Modulus<T>) -> T {
    ellip_e_deficit(m) / family_deficit(params, m)
}

/// `F(r) = (1 - (2/π)E(r)) / (1 - S_{11/4,7/4}(1, r'))`, decreasing from 1 to
/// `11(π-2)/(4π)`.
pub fn ratio_f<T: Real>(m: &Modulus<T>) -> T {
    if near_zero(m) {
        return T::one();
    }
    if near_one(m) {
        return T::lit(11.0) * (T::PI() - T::lit(2.0)) / (T::lit(4.0) * T::PI());
    }
    ratio_f_interior(m)
}

/// [`ratio_f`] without endpoint substitution; `r` must lie in `(0, 1)`.
pub fn ratio_f_interior<T: Real>(m: &Modulus<T>) -> T {
    deficit_ratio(MeanParams::family(T::lit(1.75)), m)
}

/// `G(r) = (1 - (2/π)E(r)) / (1 - S_{5/2,2}(1, r'))`, increasing from 1 to
/// `25(π-2)/(9π)`.
pub fn ratio_g<T: Real>(m: &Modulus<T>) -> T {
    if near_zero(m) {
        return T::one();
    }
    if near_one(m) {
        return T::lit(25.0) * (T::PI() - T::lit(2.0)) / (T::lit(9.0) * T::PI());
    }
    ratio_g_interior(m)
}

/// [`ratio_g`] without endpoint substitution; `r` must lie in `(0, 1)`.
pub fn ratio_g_interior<T: Real>(m: &Modulus<T>) -> T {
    deficit_ratio(MeanParams::family(T::lit(2.0)), m)
}

/// `R_p(r) = (2/π)E(r) / S_{9/2-p,p}(1, r')` for `p ≤ 9/4`. Its limit at
/// `r → 1` is `2/(π θ_p)` for `p > 0` and `+∞` for `p ≤ 0`.
pub fn ratio_r<T: Real>(p: T, m: &Modulus<T>) -> Result<T> {
    if !(p <= T::lit(2.25)) {
        return domain(format!("ratio_r needs p <= 9/4, got {p}"));
    }
    if near_zero(m) {
        return Ok(T::one());
    }
    if p > T::zero() && near_one(m) {
        return Ok(T::two_over_pi() / theta(p, T::lit(2.25))?);
    }
    if m.is_one() {
        return Ok(T::infinity());
    }
    let e = T::one() - ellip_e_deficit(m);
    Ok(e / MeanParams::family(p).log_unit(m.log_inv_complement()).exp())
}

/// `(2/π)E(r) - S_{9/2-p,p}(1, r')`, computed as a difference of deficits.
pub fn family_difference<T: Real>(p: T, m: &Modulus<T>) -> T {
    family_deficit(MeanParams::family(p), m) - ellip_e_deficit(m)
}

fn w_series() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        let ledger = TheoremTwoLedger::new(G1_TERMS + 4);
        (4..G1_TERMS + 4)
            .map(|n| ledger.w(n).to_f64().unwrap_or(0.0))
            .collect()
    })
}

/// `G₁(r) = (S_{5/2,2}(1, r') - (2/π)E(r)) / r⁸`, increasing from
/// `(3/5)2^{-14}` to `16/25 - 2/π`. Summed from `Σ_{n≥4} w_n r^{2n-8}` for
/// `r ≤ 0.9`, so there is no `0/0` noise near the origin.
pub fn ratio_g1<T: Real>(m: &Modulus<T>) -> T {
    if m.is_one() {
        return T::lit(0.64) - T::two_over_pi();
    }
    if m.r() <= T::lit(G1_SERIES_MAX) {
        let y = m.r_squared();
        return w_series().iter().rev().fold(T::zero(), |acc, &w| acc * y + T::lit(w));
    }
    let y = m.r_squared();
    -family_difference(T::lit(2.0), m) / (y * y * y * y)
}

/// Partial sums `Σ_{n≤N} v_n r^{2n} / Σ_{n≤N} u_n r^{2n}` of the power-series
/// form of `G`.
pub fn ratio_g_partial(r: f64, terms: usize) -> f64 {
    let ledger = TheoremTwoLedger::new(terms);
    let y = r * r;
    let (mut num, mut den) = (0.0, 0.0);
    for n in (1..=terms).rev() {
        num = (num + ledger.v(n).to_f64().unwrap_or(0.0)) * y;
        den = (den + ledger.u(n).to_f64().unwrap_or(0.0)) * y;
    }
    num / den
}

/// `S_{2c-p,p}(x, y) / S_{2c-p,p}(x, z)`, monotone in `p` on either side of `c`.
pub fn rs_ratio<T: Real>(p: T, c: T, x: T, y: T, z: T) -> Result<T> {
    let params = MeanParams::new(c + c - p, p);
    let a = stolarsky(&params, &PositivePair::new(x, y)?);
    let b = stolarsky(&params, &PositivePair::new(x, z)?);
    Ok(a / b)
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    proptest! {
        #[test]
        fn ratios_stay_between_their_limits(r in 0.0_f64..=1.0) {
            let m = Modulus::new(r).unwrap();
            let lam = 11.0 * (PI - 2.0) / (4.0 * PI);
            let xi = 25.0 * (PI - 2.0) / (9.0 * PI);
            let (f, g) = (ratio_f(&m), ratio_g(&m));
            prop_assert!(f >= lam - 1e-12 && f <= 1.0 + 1e-12, "F = {}", f);
            prop_assert!(g >= 1.0 - 1e-12 && g <= xi + 1e-12, "G = {}", g);
        }

        #[test]
        fn ratios_are_monotone_pairwise(a in 0.01_f64..0.99, b in 0.01_f64..0.99) {
            let (lo, hi) = (a.min(b), a.max(b));
            let (ml, mh) = (Modulus::new(lo).unwrap(), Modulus::new(hi).unwrap());
            prop_assert!(ratio_f(&mh) <= ratio_f(&ml) + 1e-12);
            prop_assert!(ratio_g(&mh) >= ratio_g(&ml) - 1e-12);
            prop_assert!(ratio_g1(&mh) >= ratio_g1(&ml) - 1e-12);
        }
    }
}
