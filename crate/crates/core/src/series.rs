//! Truncated power series in `y = r²` with exact rational coefficients.
//!
//! Used for exact coefficient identities, exact leading orders, and for
//! evaluating differences of nearly equal quantities near `r = 0` with a
//! rounding bound, where direct floating-point subtraction has no digits left.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Real;
use crate::special_fn::pochhammer;

/// Exact rational number.
pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact value of a finite `f64` (every float is a dyadic rational).
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `sum_{k < len} c_k y^k`; coefficients beyond `len` are unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    c: Vec<Rational>,
}

/// A floating-point value with an absolute rounding bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded<T> {
    pub value: T,
    pub bound: T,
}

impl<T: Real> Bounded<T> {
    /// Positive beyond doubt.
    pub fn is_positive(&self) -> bool {
        self.value > self.bound
    }

    pub fn is_negative(&self) -> bool {
        self.value < -self.bound
    }
}

impl PowerSeries {
    pub fn from_coeffs(c: Vec<Rational>) -> Self {
        Self { c }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            c: vec![Rational::zero(); len],
        }
    }

    pub fn constant(v: Rational, len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 0 {
            s.c[0] = v;
        }
        s
    }

    pub fn one(len: usize) -> Self {
        Self::constant(Rational::one(), len)
    }

    /// The series `y` itself.
    pub fn variable(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 1 {
            s.c[1] = Rational::one();
        }
        s
    }

    /// `(1 - y)^alpha`: coefficients `(-alpha)_k / k!`.
    pub fn binomial(alpha: &Rational, len: usize) -> Self {
        let mut c = Vec::with_capacity(len);
        let mut term = Rational::one();
        for k in 0..len {
            c.push(term.clone());
            let kr = int(k as i64);
            term = term * (&kr - alpha) / (kr + Rational::one());
        }
        Self { c }
    }

    /// `sum_k (a)_k (b)_k / (k!)^2 y^k`.
    pub fn hypergeometric(a: &Rational, b: &Rational, len: usize) -> Self {
        let mut c = Vec::with_capacity(len);
        let mut term = Rational::one();
        for k in 0..len {
            c.push(term.clone());
            let kr = int(k as i64);
            let k1 = &kr + Rational::one();
            term = term * (a + &kr) * (b + &kr) / (&k1 * &k1);
        }
        Self { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.c.truncate(len);
        self
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            c: self.c.iter().map(|v| v * k).collect(),
        }
    }

    /// First nonzero coefficient and its index.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.c.iter().enumerate().find(|(_, v)| !v.is_zero())
    }

    /// Divides by `y^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(
            self.c.iter().take(k).all(Zero::is_zero),
            "shift_down({k}) on a series with a nonzero low-order coefficient"
        );
        Self {
            c: self.c.iter().skip(k).cloned().collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Self {
        let a0 = &self.c[0];
        assert!(!a0.is_zero(), "inverse of a series with zero constant term");
        let inv0 = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(self.len());
        b.push(inv0.clone());
        for n in 1..self.len() {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &self.c[k] * &b[n - k];
            }
            b.push(-s * &inv0);
        }
        Self { c: b }
    }

    /// `self^alpha` for a series with constant term 1 (J. C. P. Miller's recurrence).
    pub fn pow(&self, alpha: &Rational) -> Self {
        assert!(self.c[0].is_one(), "pow needs constant term 1");
        let mut g: Vec<Rational> = Vec::with_capacity(self.len());
        g.push(Rational::one());
        let a1 = alpha + Rational::one();
        for n in 1..self.len() {
            let mut s = Rational::zero();
            for k in 1..=n {
                if self.c[k].is_zero() {
                    continue;
                }
                let w = &a1 * int(k as i64) - int(n as i64);
                s += w * &self.c[k] * &g[n - k];
            }
            g.push(s / int(n as i64));
        }
        Self { c: g }
    }

    /// Natural log of a series with constant term 1.
    pub fn ln(&self) -> Self {
        assert!(self.c[0].is_one(), "ln needs constant term 1");
        let mut h: Vec<Rational> = vec![Rational::zero(); self.len()];
        for n in 1..self.len() {
            let mut s = Rational::zero();
            for k in 1..n {
                s += int(k as i64) * &h[k] * &self.c[n - k];
            }
            h[n] = &self.c[n] - s / int(n as i64);
        }
        Self { c: h }
    }

    /// Exponential of a series with constant term 0.
    pub fn exp(&self) -> Self {
        assert!(self.c[0].is_zero(), "exp needs constant term 0");
        let mut g: Vec<Rational> = Vec::with_capacity(self.len());
        g.push(Rational::one());
        for n in 1..self.len() {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += int(k as i64) * &self.c[k] * &g[n - k];
            }
            g.push(s / int(n as i64));
        }
        Self { c: g }
    }

    /// Floating-point value at `y` with a bound on the rounding error of the
    /// coefficient conversion and Horner evaluation. The truncation error is
    /// not included; see [`PowerSeries::truncation_estimate`].
    pub fn eval<T: Real>(&self, y: T) -> Bounded<T> {
        let coeffs: Vec<T> = self.c.iter().map(to_real).collect();
        let mut value = T::zero();
        let mut abs_sum = T::zero();
        for c in coeffs.iter().rev() {
            value = value * y + *c;
            abs_sum = abs_sum * y.abs() + c.abs();
        }
        let u = T::epsilon() * T::lit(0.5);
        let n2 = T::from_usize_lossy(2 * self.len() + 2);
        let gamma = n2 * u / (T::one() - n2 * u);
        Bounded {
            value,
            bound: (gamma + u) * abs_sum * T::lit(1.01),
        }
    }

    /// Estimate of `|sum_{k >= len} c_k y^k|`: a geometric continuation of the
    /// last coefficients. A heuristic, not a proof.
    pub fn truncation_estimate<T: Real>(&self, y: T) -> T {
        let n = self.len();
        if n < 4 {
            return T::infinity();
        }
        let last: Vec<T> = self.c[n - 4..].iter().map(|v| to_real::<T>(v).abs()).collect();
        let rho = last
            .windows(2)
            .map(|w| if w[0] > T::zero() { w[1] / w[0] } else { T::one() })
            .fold(T::zero(), T::max)
            .max(T::one());
        let q = rho * y.abs();
        if q >= T::one() {
            return T::infinity();
        }
        last[3] * y.abs().powi(n as i32) * rho / (T::one() - q)
    }
}

pub(crate) fn to_real<T: Real>(v: &Rational) -> T {
    T::lit(v.to_f64().unwrap_or(f64::NAN))
}

fn zip_with(a: &PowerSeries, b: &PowerSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> PowerSeries {
    let n = a.len().min(b.len());
    PowerSeries {
        c: (0..n).map(|k| f(&a.c[k], &b.c[k])).collect(),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        let n = self.len().min(rhs.len());
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.c.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().take(n - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        PowerSeries { c }
    }
}

/// `x^alpha` with `x = r' = (1 - y)^{1/2}`.
pub fn complement_pow(alpha: &Rational, len: usize) -> PowerSeries {
    PowerSeries::binomial(&(alpha / int(2)), len)
}

/// `(x^alpha - 1) / y`, whose constant term is `-alpha/2`.
pub fn complement_pow_minus_one_over_y(alpha: &Rational, len: usize) -> PowerSeries {
    let mut s = complement_pow(alpha, len + 1);
    s.c[0] -= Rational::one();
    s.shift_down(1)
}

/// `ln(x) / y = -(1/2) sum_{k>=1} y^{k-1} / k`.
pub fn log_complement_over_y(len: usize) -> PowerSeries {
    PowerSeries {
        c: (1..=len).map(|k| rat(-1, 2 * k as i64)).collect(),
    }
}

/// `(2/pi) E(r) = sum_k (-1/2)_k (1/2)_k / (k!)^2 y^k`.
pub fn two_over_pi_e(len: usize) -> PowerSeries {
    PowerSeries::hypergeometric(&rat(-1, 2), &rat(1, 2), len)
}

/// `(2/pi) K(r) = sum_k ((1/2)_k / k!)^2 y^k`.
pub fn two_over_pi_k(len: usize) -> PowerSeries {
    PowerSeries::hypergeometric(&rat(1, 2), &rat(1, 2), len)
}

/// `S_{p,q}(1, r')` for exact rational `p, q`, every branch included.
pub fn stolarsky_unit(p: &Rational, q: &Rational, len: usize) -> PowerSeries {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => complement_pow(&rat(1, 2), len),
        (false, true) => log_mean_power(p, len),
        (true, false) => log_mean_power(q, len),
        (false, false) if p == q => identric_power(p, len),
        (false, false) => {
            let num = complement_pow_minus_one_over_y(p, len).scale(q);
            let den = complement_pow_minus_one_over_y(q, len).scale(p);
            (&num * &den.inverse()).pow(&(p - q).recip())
        }
    }
}

// ((x^p - 1) / (p ln x))^{1/p}
fn log_mean_power(p: &Rational, len: usize) -> PowerSeries {
    let num = complement_pow_minus_one_over_y(p, len);
    let den = log_complement_over_y(len).scale(p);
    (&num * &den.inverse()).pow(&p.recip())
}

// exp(x^p ln x / (x^p - 1) - 1/p)
fn identric_power(p: &Rational, len: usize) -> PowerSeries {
    let ratio = &log_complement_over_y(len) * &complement_pow_minus_one_over_y(p, len).inverse();
    let mut arg = &complement_pow(p, len) * &ratio;
    arg.c[0] -= p.recip();
    arg.exp()
}

/// Exact rising factorial for rationals.
pub fn pochhammer_exact(a: &Rational, n: u32) -> Rational {
    pochhammer(a, n)
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `|v|` helper that reads better at call sites.
pub fn abs(v: &Rational) -> Rational {
    v.abs()
}
