//! The open question at `p₀`, the root of `θ_p = 2/π`: is
//! `H(r) = (1 − (2/π)E)/(1 − S_{9/2−p₀,p₀}(1, r'))` single-peaked, and does
//! `(2/π)E(r) < S_{9/2−p₀,p₀}(1, r')` hold throughout?

use std::f64::consts::FRAC_2_PI;

use super::{open_grid, scan_values, Direction, MonotonicityReport, MONOTONE_TOL};
use crate::error::{Error, Result};
use crate::series::{self, from_f64_exact, rat, PowerSeries};
use crate::special_fn::{ellip_e_deficit, Modulus};
use crate::stolarsky::{theta, MeanParams};

const C: f64 = 2.25;
// Below this r the pointwise inequality is decided on the exact series.
const SERIES_MAX: f64 = 0.3;
const SERIES_LEN: usize = 28;

/// Root of `θ(p, 9/4) = 2/π` on `(0, 9/4]`: a coarse sign scan, then bisection
/// to `|θ_p − 2/π| < 1e-12` (or to the last representable midpoint).
pub fn solve_p0() -> Result<f64> {
    let f = |p: f64| theta(p, C).map(|t| t - FRAC_2_PI);
    let steps = 225;
    let mut bracket = None;
    let mut prev = (C / steps as f64, f(C / steps as f64)?);
    for i in 2..=steps {
        let p = C * i as f64 / steps as f64;
        let v = f(p)?;
        if prev.1.signum() != v.signum() {
            bracket = Some((prev.0, p));
            break;
        }
        prev = (p, v);
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| Error::Root("theta_p - 2/pi has no sign change on (0, 9/4]".into()))?;
    let f_lo = f(lo)?;
    loop {
        let mid = 0.5 * (lo + hi);
        let v = f(mid)?;
        if v.abs() < 1e-12 && hi - lo < 1e-13 || mid == lo || mid == hi {
            return Ok(mid);
        }
        if v.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `H(r)` at parameter `p`, from deficits.
pub fn h_ratio(p: f64, m: &Modulus<f64>) -> f64 {
    let s_def = -MeanParams::family(p).log_unit(m.log_inv_complement()).exp_m1();
    ellip_e_deficit(m) / s_def
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub p0: f64,
    /// `H` on the grid up to and including the peak.
    pub rising: MonotonicityReport<f64>,
    /// `H` on the grid from the peak on.
    pub falling: MonotonicityReport<f64>,
    pub r0_estimate: f64,
    pub peak: f64,
    /// `(r, H(r), S − (2/π)E)` at every grid point.
    pub profile: Vec<(f64, f64, f64)>,
    /// Grid points where `(2/π)E < S` could not be confirmed.
    pub inequality_failures: Vec<f64>,
}

impl ConjectureReport {
    /// Rises then falls, with the peak strictly inside the grid.
    pub fn single_peaked(&self) -> bool {
        self.peak_resolved()
            && self.rising.direction == Direction::Increasing
            && self.falling.direction == Direction::Decreasing
    }

    /// False when the maximum is at the first or last grid point.
    pub fn peak_resolved(&self) -> bool {
        self.rising.grid_size >= 2 && self.falling.grid_size >= 2
    }

    pub fn inequality_holds(&self) -> bool {
        self.inequality_failures.is_empty()
    }
}

/// `S_{9/2−p,p}(1, r') − (2/π)E(r)` with an error allowance, so its sign can
/// be certified even where the gap is far below `f64` resolution. For
/// `r ≤ 0.3` it is read from the exact series at `p̂`, the dyadic rational
/// nearest `p` with denominator `2^20` (exact for the quarter-integer `p` the
/// theorems use); above that, from `f64` deficits with a `64 ε` allowance.
pub struct CertifiedGap {
    p: f64,
    series: PowerSeries,
}

impl CertifiedGap {
    pub fn new(p: f64) -> Self {
        let pr = from_f64_exact((p * 1_048_576.0).round() / 1_048_576.0).expect("finite p");
        let series = &series::stolarsky_unit(&(rat(9, 2) - &pr), &pr, SERIES_LEN) - &series::two_over_pi_e(SERIES_LEN);
        Self { p, series }
    }

    /// `(gap, allowance)`: the sign of `gap` is certain when `|gap| > allowance`.
    pub fn eval(&self, m: &Modulus<f64>) -> (f64, f64) {
        let r = m.r();
        if r <= SERIES_MAX {
            let y = r * r;
            let b = self.series.eval(y);
            return (b.value, b.bound + self.series.truncation_estimate(y));
        }
        let s_def = -MeanParams::family(self.p).log_unit(m.log_inv_complement()).exp_m1();
        (ellip_e_deficit(m) - s_def, 64.0 * f64::EPSILON)
    }

    /// `Some(true)` if `S > (2/π)E` is certain, `Some(false)` if the reverse is,
    /// `None` if the gap is inside its allowance.
    pub fn sign(&self, m: &Modulus<f64>) -> Option<bool> {
        let (g, tol) = self.eval(m);
        if g > tol {
            Some(true)
        } else if g < -tol {
            Some(false)
        } else {
            None
        }
    }
}

/// Evaluates `H` and `S − (2/π)E` on the open grid `i/(n+1)`; the inequality
/// is confirmed through [`CertifiedGap`].
pub fn conjecture_scan(n: usize) -> Result<ConjectureReport> {
    let n = n.max(100);
    let p0 = solve_p0()?;
    let gap = CertifiedGap::new(p0);
    let mut profile = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for r in open_grid(n) {
        let m = Modulus::new(r)?;
        let h = h_ratio(p0, &m);
        let (g, _) = gap.eval(&m);
        if gap.sign(&m) != Some(true) {
            failures.push(r);
        }
        profile.push((r, h, g));
    }
    let peak_i = profile
        .iter()
        .enumerate()
        .fold(0, |best, (i, p)| if p.1 > profile[best].1 { i } else { best });
    let xs: Vec<f64> = profile.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = profile.iter().map(|p| p.1).collect();
    Ok(ConjectureReport {
        p0,
        rising: scan_values(&xs[..=peak_i], &ys[..=peak_i], MONOTONE_TOL),
        falling: scan_values(&xs[peak_i..], &ys[peak_i..], MONOTONE_TOL),
        r0_estimate: xs[peak_i],
        peak: ys[peak_i],
        profile,
        inequality_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p0_matches() {
        let p0 = solve_p0().unwrap();
        // mpmath
        assert!((p0 - 1.763_135_089_747_296).abs() < 1e-11);
        assert!((theta(p0, C).unwrap() - FRAC_2_PI).abs() < 1e-11);
        assert!(p0 > 1.75 && p0 < 2.0);
        assert!((theta(1.75, C).unwrap() - 7.0 / 11.0).abs() < 1e-15);
        assert!((theta(2.0, C).unwrap() - 16.0 / 25.0).abs() < 1e-15);
    }

    #[test]
    fn scan_is_single_peaked_and_supports_the_inequality() {
        let rep = conjecture_scan(400).unwrap();
        assert!(rep.single_peaked(), "{:?} {:?}", rep.rising, rep.falling);
        assert!(rep.inequality_holds(), "{:?}", &rep.inequality_failures[..rep.inequality_failures.len().min(5)]);
        assert!(rep.r0_estimate > 0.98 && rep.r0_estimate < 1.0);
        assert!(rep.profile[0].1 < rep.peak && rep.profile.last().unwrap().1 < rep.peak);
        // mpmath: H(0.5)
        let h = h_ratio(rep.p0, &Modulus::new(0.5).unwrap());
        assert!((h - 1.000_000_243_623_396_152_8).abs() < 1e-14);
    }
}

#[cfg(test)]
mod gap_tests {
    use super::*;

    #[test]
    fn certified_signs_at_the_theorem_parameters() {
        // (2/π)E > S for p = 7/4, < S for p = 2, even at r = 0.01 where the gap is ~1e-32
        let (lo, hi) = (CertifiedGap::new(1.75), CertifiedGap::new(2.0));
        for r in [0.01, 0.2, 0.5, 0.99] {
            let m = Modulus::new(r).unwrap();
            assert_eq!(lo.sign(&m), Some(false), "r = {r}");
            assert_eq!(hi.sign(&m), Some(true), "r = {r}");
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn gap() -> &'static CertifiedGap {
        static G: OnceLock<CertifiedGap> = OnceLock::new();
        G.get_or_init(|| CertifiedGap::new(solve_p0().unwrap()))
    }

    proptest! {
        #[test]
        fn inequality_at_p0(r in 0.001_f64..0.999) {
            prop_assert_eq!(gap().sign(&Modulus::new(r).unwrap()), Some(true));
        }
    }
}
