//! Complete elliptic integrals, Γ, ψ and rising factorials.

mod elliptic;
mod gamma;

use std::ops::{Add, Mul};

use num_traits::One;

use crate::error::{domain, Result};
use crate::scalar::Real;

pub use elliptic::{
    arc_length_ellipse, ellip_e, ellip_e_agm, ellip_e_deficit, ellip_e_series, ellip_k,
    ellip_k_agm, ellip_k_series, two_over_pi_e,
};
pub use gamma::{digamma, gamma_fn, ln_gamma};

/// A modulus `r` in `[0, 1]` together with its complement `r' = sqrt(1 - r^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus<T> {
    r: T,
    r_comp: T,
}

impl<T: Real> Modulus<T> {
    pub fn new(r: T) -> Result<Self> {
        if !(r >= T::zero() && r <= T::one()) {
            return domain(format!("modulus r = {r} must lie in [0, 1]"));
        }
        let r_comp = ((T::one() - r) * (T::one() + r)).sqrt();
        Ok(Self { r, r_comp })
    }

    /// Builds the modulus from its complement. Keeps `r'` exact, which matters
    /// when `r` would round to 1.
    pub fn from_complement(r_comp: T) -> Result<Self> {
        let m = Self::new(r_comp)?;
        Ok(m.complementary())
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn complement(&self) -> T {
        self.r_comp
    }

    /// `r^2`, computed from whichever of `r`, `r'` avoids cancellation.
    pub fn r_squared(&self) -> T {
        if self.r <= T::lit(0.75) {
            self.r * self.r
        } else {
            (T::one() - self.r_comp) * (T::one() + self.r_comp)
        }
    }

    /// The modulus with `r` and `r'` swapped.
    pub fn complementary(&self) -> Self {
        Self {
            r: self.r_comp,
            r_comp: self.r,
        }
    }

    /// `-ln r'`, accurate for small `r`; `+inf` at `r = 1`.
    pub fn log_inv_complement(&self) -> T {
        if self.r <= T::lit(0.5) {
            -T::lit(0.5) * (-self.r * self.r).ln_1p()
        } else {
            -self.r_comp.ln()
        }
    }

    pub fn is_one(&self) -> bool {
        self.r_comp == T::zero()
    }
}

/// Truncation controls for the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions<T> {
    tol: T,
    max_terms: usize,
}

impl<T: Real> EvalOptions<T> {
    pub fn new(tol: T, max_terms: usize) -> Result<Self> {
        if !(tol >= T::epsilon()) || !tol.is_finite() {
            return domain(format!("tol = {tol} must be finite and at least machine epsilon"));
        }
        if max_terms < 8 {
            return domain(format!("max_terms = {max_terms} must be at least 8"));
        }
        Ok(Self { tol, max_terms })
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl<T: Real> Default for EvalOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-14).max(T::epsilon()),
            max_terms: 10_000,
        }
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`. Works for floats and for
/// exact rationals alike.
pub fn pochhammer<T>(a: &T, n: u32) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&0.5_f64, 0), 1.0);
        assert_eq!(pochhammer(&0.5_f64, 2), 0.75);
        assert_eq!(pochhammer(&-0.5_f64, 3), -0.375);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            pochhammer(&half, 3),
            BigRational::new(BigInt::from(15), BigInt::from(8))
        );
    }

    #[test]
    fn modulus_rejects_out_of_range() {
        assert!(Modulus::new(-0.1_f64).is_err());
        assert!(Modulus::new(1.5_f64).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
        assert!(Modulus::from_complement(2.0_f64).is_err());
    }

    #[test]
    fn from_complement_keeps_tiny_complement() {
        let m = Modulus::from_complement(1e-12_f64).unwrap();
        assert_eq!(m.r(), 1.0);
        assert_eq!(m.complement(), 1e-12);
        assert!((m.log_inv_complement() - 12.0 * std::f64::consts::LN_10).abs() < 1e-13);
    }

    #[test]
    fn options_validate() {
        assert!(EvalOptions::new(1e-20_f64, 100).is_err());
        assert!(EvalOptions::new(1e-10_f64, 4).is_err());
        let d = EvalOptions::<f32>::default();
        assert_eq!(d.tol(), f32::EPSILON);
    }

    proptest! {
        #[test]
        fn pythagorean_complement(r in 0.0_f64..=1.0) {
            let m = Modulus::new(r).unwrap();
            let s = m.r() * m.r() + m.complement() * m.complement();
            prop_assert!((s - 1.0).abs() <= 2.0 * f64::EPSILON);
        }

        #[test]
        fn r_squared_consistent(r in 0.0_f64..=1.0) {
            let m = Modulus::new(r).unwrap();
            prop_assert!((m.r_squared() - r * r).abs() <= 4.0 * f64::EPSILON);
        }
    }
}
