//! `f₇(r) = f₅(r) − r'^{−7/4} f₆(r)` with
//! `f₅ = 32K − 32E − 14r²K − 3r⁴K − 2r²E` and
//! `f₆ = (128K − 128E − 224r²K + 93r⁴K + 160r²E − 21r⁴E)/4`,
//! and its lower bound `(105π/2¹⁶) r¹⁴/(8 − 7r²)`.
//!
//! The closed form cancels catastrophically for small `r` (`f₇ ~ r¹⁴`), so
//! below `SERIES_MAX` it is summed from `(3π/16) r⁶ Σ d_n r^{2n}`.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::ledger::TheoremOneLedger;
use crate::scalar::Real;
use crate::special_fn::{ellip_e, ellip_k, EvalOptions, Modulus};

const SERIES_MAX: f64 = 0.6;
const TERMS: usize = 96;

struct Tables {
    // d_n
    d: Vec<f64>,
    // 7 D_n for n ≥ 4: the bound margin series
    margin: Vec<f64>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let l = TheoremOneLedger::new(TERMS + 4);
        let f = |v: &crate::series::Rational| v.to_f64().unwrap_or(f64::NAN);
        Tables {
            d: (0..TERMS).map(|n| f(l.d(n))).collect(),
            margin: (4..TERMS).map(|n| 7.0 * f(&l.big_d(n))).collect(),
        }
    })
}

fn horner<T: Real>(c: &[f64], y: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &v| acc * y + T::lit(v))
}

/// `f₇` from `K` and `E`. Meaningless below `r ≈ 0.3` in `f64`.
pub fn f7_closed_form<T: Real>(m: &Modulus<T>) -> T {
    let opts = EvalOptions::default();
    let k = ellip_k(m, &opts).unwrap_or_else(|_| T::infinity());
    let e = ellip_e(m, &opts).unwrap_or_else(|_| T::one());
    let (y, c) = (m.r_squared(), T::lit);
    let f5 = c(32.0) * (k - e) - c(14.0) * y * k - c(3.0) * y * y * k - c(2.0) * y * e;
    let f6 = (c(128.0) * (k - e) - c(224.0) * y * k + c(93.0) * y * y * k + c(160.0) * y * e - c(21.0) * y * y * e)
        / c(4.0);
    // r'^{-7/4} = exp((7/4) ln(1/r'))
    f5 - (c(1.75) * m.log_inv_complement()).exp() * f6
}

/// `(3π/16) r⁶ Σ d_n r^{2n}`, truncated.
pub fn f7_series<T: Real>(m: &Modulus<T>) -> T {
    let y = m.r_squared();
    T::lit(3.0) * T::PI() / T::lit(16.0) * y * y * y * horner(&tables().d, y)
}

/// `f₇(r)`, for `r ∈ [0, 1)`.
pub fn f7<T: Real>(m: &Modulus<T>) -> T {
    if m.r() <= T::lit(SERIES_MAX) {
        f7_series(m)
    } else {
        f7_closed_form(m)
    }
}

/// `(105π/2¹⁶) r¹⁴/(8 − 7r²)`.
pub fn f7_lower_bound<T: Real>(m: &Modulus<T>) -> T {
    let y = m.r_squared();
    let y7 = y * y * y * y * y * y * y;
    T::lit(105.0) * T::PI() / T::lit(65536.0) * y7 / (T::lit(8.0) - T::lit(7.0) * y)
}

/// `f₇ > (105π/2¹⁶) r¹⁴/(8 − 7r²)`, for `r ∈ (0, 1)`.
///
/// For small `r` the comparison is made on
/// `f₇ (8 − 7r²)/r¹⁴ − 105π/2¹⁶ = (3π/16) Σ_{n≥4} 7 D_n r^{2n−6}`, whose
/// coefficients are positive, so the difference is not lost to rounding.
pub fn f7_lower_bound_check<T: Real>(m: &Modulus<T>) -> bool {
    if !(m.r() > T::zero()) || m.is_one() {
        return false;
    }
    if m.r() <= T::lit(SERIES_MAX) {
        let y = m.r_squared();
        return y * horner(&tables().margin, y) > T::zero();
    }
    f7(m) > f7_lower_bound(m)
}

/// `f₇ (8 − 7r²)/r¹⁴`, which tends to `105π/2¹⁶` as `r → 0`.
pub fn f7_scaled<T: Real>(m: &Modulus<T>) -> T {
    let y = m.r_squared();
    if m.r() <= T::lit(SERIES_MAX) {
        let d = &tables().d[4..];
        return T::lit(3.0) * T::PI() / T::lit(16.0) * (T::lit(8.0) - T::lit(7.0) * y) * horner(d, y);
    }
    let y7 = y * y * y * y * y * y * y;
    f7_closed_form(m) * (T::lit(8.0) - T::lit(7.0) * y) / y7
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn m(r: f64) -> Modulus<f64> {
        Modulus::new(r).unwrap()
    }

    // mpmath, 40 digits
    #[test]
    fn values() {
        let close = |a: f64, b: f64, tol: f64| assert!((a - b).abs() <= tol * b, "{a} vs {b}");
        close(f7(&m(0.5)), 9.507_625_626_002_697_722e-8, 1e-13);
        close(f7(&m(0.1)), 6.498_819_833_221_872_885e-18, 1e-13);
        close(f7(&m(0.9)), 0.015_348_234_616_444_025_25, 1e-10);
        close(f7_lower_bound(&m(0.5)), 4.915_404_746_337_656_528e-8, 1e-14);
        close(f7_series(&m(0.6)), f7_closed_form(&m(0.6)), 1e-7);
    }

    #[test]
    fn lower_bound_holds() {
        for r in [1e-9, 1e-3, 0.1, 0.5, 0.6, 0.61, 0.9, 0.999] {
            assert!(f7_lower_bound_check(&m(r)), "r = {r}");
        }
        let limit = 105.0 * PI / 65536.0;
        assert!((f7_scaled(&m(1e-8)) - limit).abs() < 1e-17);
        assert!(f7_scaled(&m(1e-3)) > limit);
        assert!(!f7_lower_bound_check(&m(0.0)));
    }
}
