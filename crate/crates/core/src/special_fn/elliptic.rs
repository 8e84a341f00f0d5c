use super::{EvalOptions, Modulus};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

// Beyond this modulus the series needs hundreds to thousands of terms; the AGM
// needs a handful of iterations.
const AGM_SWITCH: f64 = 0.95;
// Below this the positive deficit series beats 1 - (2/pi)E by cancellation.
const DEFICIT_SERIES_MAX: f64 = 0.7;

/// Sums `1 + sum_{n>=1} t_n` with `t_{n+1} = t_n * ratio(n) * y`. Stops once the
/// term and the geometric tail bound `|t| y / (1 - y)` are both below tolerance.
fn hypergeometric_sum<T: Real>(
    first: T,
    y: T,
    ratio: impl Fn(T) -> T,
    opts: &EvalOptions<T>,
) -> Result<T> {
    let tail_factor = y / (T::one() - y);
    let mut sum = first;
    let mut term = first;
    for n in 0..opts.max_terms() {
        term = term * ratio(T::from_usize_lossy(n)) * y;
        sum = sum + term;
        let small = opts.tol() * sum.abs();
        if term.abs() < small && term.abs() * tail_factor < small {
            return Ok(sum);
        }
        if term == T::zero() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        max_terms: opts.max_terms(),
    })
}

fn k_ratio<T: Real>(n: T) -> T {
    let q = (n + T::lit(0.5)) / (n + T::one());
    q * q
}

fn e_ratio<T: Real>(n: T) -> T {
    (n - T::lit(0.5)) * (n + T::lit(0.5)) / ((n + T::one()) * (n + T::one()))
}

/// `K(r)` from its hypergeometric series, regardless of `r`.
pub fn ellip_k_series<T: Real>(m: &Modulus<T>, opts: &EvalOptions<T>) -> Result<T> {
    if m.is_one() {
        return domain("K(r) diverges at r = 1");
    }
    let s = hypergeometric_sum(T::one(), m.r_squared(), k_ratio, opts)?;
    Ok(T::FRAC_PI_2() * s)
}

/// `E(r)` from its hypergeometric series, regardless of `r`.
pub fn ellip_e_series<T: Real>(m: &Modulus<T>, opts: &EvalOptions<T>) -> Result<T> {
    let s = hypergeometric_sum(T::one(), m.r_squared(), e_ratio, opts)?;
    Ok(T::FRAC_PI_2() * s)
}

/// Complete elliptic integral of the first kind.
pub fn ellip_k<T: Real>(m: &Modulus<T>, opts: &EvalOptions<T>) -> Result<T> {
    if m.is_one() {
        return domain("K(r) diverges at r = 1");
    }
    if m.r() > T::lit(AGM_SWITCH) {
        return ellip_k_agm(m);
    }
    ellip_k_series(m, opts)
}

/// Complete elliptic integral of the second kind; exactly 1 at `r = 1`.
pub fn ellip_e<T: Real>(m: &Modulus<T>, opts: &EvalOptions<T>) -> Result<T> {
    if m.is_one() {
        return Ok(T::one());
    }
    if m.r() > T::lit(AGM_SWITCH) {
        return Ok(ellip_e_agm(m));
    }
    ellip_e_series(m, opts)
}

/// Runs the AGM of `(1, r')`, returning the limit and `sum 2^{n-1} c_n^2`.
fn agm<T: Real>(m: &Modulus<T>) -> (T, T) {
    let four_eps = T::lit(4.0) * T::epsilon();
    let mut a = T::one();
    let mut b = m.complement();
    let mut weight = T::lit(0.5);
    let mut sum = weight * m.r_squared();
    for _ in 0..128 {
        if (a - b).abs() < four_eps * a {
            break;
        }
        let c = (a - b) * T::lit(0.5);
        let next = (a + b) * T::lit(0.5);
        b = (a * b).sqrt();
        a = next;
        weight = weight + weight;
        sum = sum + weight * c * c;
    }
    (a, sum)
}

/// `K(r)` by the arithmetic–geometric mean.
pub fn ellip_k_agm<T: Real>(m: &Modulus<T>) -> Result<T> {
    if m.is_one() {
        return domain("K(r) diverges at r = 1");
    }
    let (a, _) = agm(m);
    Ok(T::FRAC_PI_2() / a)
}

/// `E(r)` by the arithmetic–geometric mean.
pub fn ellip_e_agm<T: Real>(m: &Modulus<T>) -> T {
    if m.is_one() {
        return T::one();
    }
    let (a, sum) = agm(m);
    T::FRAC_PI_2() / a * (T::one() - sum)
}

/// `(2/pi) E(r)` with default options. Infallible: falls back to the AGM if the
/// series would exceed its term budget.
pub fn two_over_pi_e<T: Real>(m: &Modulus<T>) -> T {
    let e = ellip_e(m, &EvalOptions::default()).unwrap_or_else(|_| ellip_e_agm(m));
    T::two_over_pi() * e
}

/// `1 - (2/pi) E(r)`, summed as a positive series for moderate `r` so that it
/// keeps full relative accuracy as `r -> 0`.
pub fn ellip_e_deficit<T: Real>(m: &Modulus<T>) -> T {
    if m.r() > T::lit(DEFICIT_SERIES_MAX) {
        // the AGM is good to a few ulp; the default series tolerance is not
        return T::one() - T::two_over_pi() * ellip_e_agm(m);
    }
    let y = m.r_squared();
    if y == T::zero() {
        return T::zero();
    }
    let opts = EvalOptions { tol: T::epsilon(), max_terms: 10_000 };
    // v_1 = y/4, v_{n+1} = v_n (n - 1/2)(n + 1/2) / (n + 1)^2 * y, n >= 1
    let shifted = |n: T| e_ratio(n + T::one());
    hypergeometric_sum(y * T::lit(0.25), y, shifted, &opts)
        .unwrap_or_else(|_| T::one() - two_over_pi_e(m))
}

/// Perimeter of the ellipse with semi-axes `1` and `r`: `4 E(r')`.
pub fn arc_length_ellipse<T: Real>(r: T) -> Result<T> {
    let m = Modulus::new(r)?.complementary();
    Ok(T::lit(4.0) * ellip_e(&m, &EvalOptions::default())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn opts() -> EvalOptions<f64> {
        EvalOptions::default()
    }

    fn m(r: f64) -> Modulus<f64> {
        Modulus::new(r).unwrap()
    }

    fn e_quad(r: f64) -> f64 {
        integrate(|t: f64| (1.0 - r * r * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15).unwrap()
    }

    fn k_quad(r: f64) -> f64 {
        // t = pi/2 - s, K = int ds / sqrt(r'^2 + r^2 sin^2 s): no cancellation near s = 0
        let rc2 = (1.0 - r) * (1.0 + r);
        integrate(|s: f64| 1.0 / (rc2 + r * r * s.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
            .unwrap()
    }

    #[test]
    fn endpoint_values() {
        assert_eq!(ellip_k(&m(0.0), &opts()).unwrap(), FRAC_PI_2);
        assert_eq!(ellip_e(&m(0.0), &opts()).unwrap(), FRAC_PI_2);
        assert_eq!(ellip_e(&m(1.0), &opts()).unwrap(), 1.0);
        assert!(matches!(ellip_k(&m(1.0), &opts()), Err(Error::Domain(_))));
        assert!(ellip_k_agm(&m(1.0)).is_err());
        assert_eq!(ellip_k_agm(&m(0.0)).unwrap(), FRAC_PI_2);
        assert_eq!(ellip_e_agm(&m(0.0)), FRAC_PI_2);
    }

    #[test]
    fn frozen_reference_values() {
        // mpmath, 30 digits: ellipk(m=r^2), ellipe(m=r^2)
        let k05 = 1.685_750_354_812_596_042_871_203_657_8;
        let e05 = 1.467_462_209_339_427_155_459_795_267;
        let k099 = 3.356_600_523_361_192_376_033_470_428;
        let e0999 = 1.003_994_409_965_507_817_672_687_996;
        // the default truncation target is 1e-14 relative
        assert!((ellip_k(&m(0.5), &opts()).unwrap() - k05).abs() < 2e-14);
        assert!((ellip_e(&m(0.5), &opts()).unwrap() - e05).abs() < 2e-14);
        assert!((ellip_k(&m(0.99), &opts()).unwrap() - k099).abs() < 1e-13);
        assert!((ellip_e(&m(0.999), &opts()).unwrap() - e0999).abs() < 1e-14);
        let tight = EvalOptions::new(f64::EPSILON, 10_000).unwrap();
        assert!((ellip_k_series(&m(0.5), &tight).unwrap() - k05).abs() < 1e-15);
    }

    #[test]
    fn series_agrees_with_agm_and_quadrature() {
        let k = ellip_k_series(&m(0.5), &opts()).unwrap();
        assert!((k - ellip_k_agm(&m(0.5)).unwrap()).abs() < 1e-13);
        assert!((ellip_k(&m(0.99), &opts()).unwrap() - k_quad(0.99)).abs() < 1e-9);
        assert!((ellip_e(&m(0.5), &opts()).unwrap() - e_quad(0.5)).abs() < 1e-12);
        assert!((ellip_e_agm(&m(0.999)) - e_quad(0.999)).abs() < 1e-10);
    }

    #[test]
    fn series_near_one_hits_budget() {
        let tight = EvalOptions::new(1e-14, 50).unwrap();
        assert!(matches!(
            ellip_k_series(&m(0.999), &tight),
            Err(Error::Convergence { max_terms: 50 })
        ));
    }

    #[test]
    fn deficit_matches_direct_form() {
        for &r in &[0.1, 0.3, 0.6, 0.69, 0.71, 0.9] {
            let d = ellip_e_deficit(&m(r));
            assert!((d - (1.0 - two_over_pi_e(&m(r)))).abs() < 2e-14, "r = {r}");
        }
        // relative accuracy where the direct form has none left: 1 - (2/pi)E ~ r^2/4
        let d = ellip_e_deficit(&m(1e-9));
        assert!((d / 2.5e-19 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arc_length() {
        assert!((arc_length_ellipse(1.0_f64).unwrap() - 2.0 * PI).abs() < 1e-15);
        let l = arc_length_ellipse(0.8_f64).unwrap();
        let q = integrate(
            |t: f64| (t.sin().powi(2) + 0.64 * t.cos().powi(2)).sqrt(),
            0.0,
            2.0 * PI,
            1e-15,
        )
        .unwrap();
        assert!((l - q).abs() < 1e-10);
        let half = arc_length_ellipse(0.5_f64).unwrap();
        assert!((half - 4.0 * e_quad(0.75_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        let e32 = ellip_e(&Modulus::new(0.5_f32).unwrap(), &EvalOptions::default()).unwrap();
        let k32 = ellip_k(&Modulus::new(0.97_f32).unwrap(), &EvalOptions::default()).unwrap();
        assert!((f64::from(e32) - 1.467_462_209_339_427).abs() < 1e-6);
        let k64 = ellip_k(&m(f64::from(0.97_f32)), &opts()).unwrap();
        assert!((f64::from(k32) - k64).abs() < 1e-5);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn series_agrees_with_agm(r in 0.0_f64..0.95) {
            let m = Modulus::new(r).unwrap();
            let opts = EvalOptions::default();
            prop_assert!((ellip_e_series(&m, &opts).unwrap() - ellip_e_agm(&m)).abs() < 1e-13);
            prop_assert!((ellip_k_series(&m, &opts).unwrap() - ellip_k_agm(&m).unwrap()).abs() < 1e-13);
        }

        #[test]
        fn legendre_relation(r in 0.01_f64..0.99) {
            let m = Modulus::new(r).unwrap();
            let c = m.complementary();
            let o = EvalOptions::default();
            let (e, k) = (ellip_e(&m, &o).unwrap(), ellip_k(&m, &o).unwrap());
            let (ec, kc) = (ellip_e(&c, &o).unwrap(), ellip_k(&c, &o).unwrap());
            prop_assert!((e * kc + ec * k - k * kc - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }

        #[test]
        fn deficit_matches_direct_form(r in 0.0_f64..1.0) {
            let m = Modulus::new(r).unwrap();
            let d = ellip_e_deficit(&m);
            prop_assert!(d >= 0.0);
            prop_assert!((d - (1.0 - two_over_pi_e(&m))).abs() < 1e-14);
        }
    }
}
