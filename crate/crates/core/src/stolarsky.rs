//! Stolarsky (extended) means `S_{p,q}(a, b)` with every limit branch, the
//! classical means they contain, `θ_p`, and the Toader mean.
//!
//! Everything is evaluated through `ℓ = ln(S / max(a, b))`, written as a
//! divided difference of `g(x) = ln(expm1(x) / x)`:
//! `ℓ = (g(-p t) - g(-q t)) / (p - q)` with `t = ln(max / min)`. This never
//! forms `a^p - b^p`, so it stays accurate for `a ≈ b` and for `min → 0`.

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::special_fn::{two_over_pi_e, Modulus};

const EQUAL_TOL: f64 = 1e-6;
const ZERO_TOL: f64 = 1e-9;

// g(x) = x/2 + sum_k B_{2k} x^{2k} / (2k (2k)!), k = 1..10
const G_SERIES: [f64; 10] = [
    1.0 / 24.0,
    -1.0 / 2880.0,
    1.0 / 181_440.0,
    -1.0 / 9_676_800.0,
    2.087_675_698_786_81e-9,
    -4.403_491_782_239_578e-11,
    9.558_954_664_774_77e-13,
    -2.118_550_185_201_614_2e-14,
    4.770_034_475_709_914e-16,
    -1.087_434_349_279_031e-17,
];
// g'(x) = 1/2 + sum_k B_{2k} x^{2k-1} / (2k)!
const DG_SERIES: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
];

fn even_poly<T: Real>(coeffs: &[f64], x2: T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, &c| (acc + T::lit(c)) * x2)
}

/// `ln(expm1(x) / x)`, with value 0 at `x = 0`.
pub(crate) fn log_phi<T: Real>(x: T) -> T {
    if x.abs() < T::one() {
        let x2 = x * x;
        x * T::lit(0.5) + even_poly(&G_SERIES, x2)
    } else if x > T::zero() {
        x + (-(-x).exp()).ln_1p() - x.ln()
    } else {
        (-x.exp_m1()).ln() - (-x).ln()
    }
}

/// Derivative of [`log_phi`]: `1/(1 - e^{-x}) - 1/x`.
pub(crate) fn log_phi_prime<T: Real>(x: T) -> T {
    if x.abs() < T::one() {
        let x2 = x * x;
        let odd = DG_SERIES.iter().rev().fold(T::zero(), |acc, &c| acc * x2 + T::lit(c));
        T::lit(0.5) + x * odd
    } else {
        -(-x).exp_m1().recip() - x.recip()
    }
}

/// Which closed form of `S_{p,q}` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    /// `p ≈ 0`: `L^{1/q}(a^q, b^q)`.
    PZero,
    /// `q ≈ 0`: `L^{1/p}(a^p, b^p)`.
    QZero,
    /// `p ≈ q ≠ 0`: identric-type limit.
    Equal,
    /// `p ≈ q ≈ 0`: geometric mean.
    BothZero,
}

/// Parameters `(p, q)` of a Stolarsky mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanParams<T> {
    pub p: T,
    pub q: T,
}

impl<T: Real> MeanParams<T> {
    pub fn new(p: T, q: T) -> Self {
        Self { p, q }
    }

    /// The one-parameter family `S_{9/2-p, p}` used throughout the catalog.
    pub fn family(p: T) -> Self {
        Self::new(T::lit(4.5) - p, p)
    }

    pub fn branch(&self) -> Branch {
        let (p, q) = (self.p, self.q);
        let zero = T::lit(ZERO_TOL);
        if p.abs() < zero && q.abs() < zero {
            Branch::BothZero
        } else if (p - q).abs() < T::lit(EQUAL_TOL) * (T::one() + p.abs() + q.abs()) {
            Branch::Equal
        } else if q.abs() < zero {
            Branch::QZero
        } else if p.abs() < zero {
            Branch::PZero
        } else {
            Branch::Generic
        }
    }

    /// `ln S_{p,q}(1, e^{-t})` for `t ∈ [0, +inf]`. The result lies in `[-t, 0]`.
    pub fn log_unit(&self, t: T) -> T {
        if t == T::zero() {
            return T::zero();
        }
        let l = if t.is_infinite() {
            self.log_unit_boundary()
        } else {
            self.log_unit_finite(t)
        };
        l.min(T::zero()).max(-t)
    }

    fn log_unit_finite(&self, t: T) -> T {
        self.log_unit_as(self.branch(), t)
    }

    /// Evaluates a specific branch formula regardless of classification.
    pub(crate) fn log_unit_as(&self, branch: Branch, t: T) -> T {
        let (p, q) = (self.p, self.q);
        match branch {
            Branch::Generic => (log_phi(-p * t) - log_phi(-q * t)) / (p - q),
            Branch::QZero => log_phi(-p * t) / p,
            Branch::PZero => log_phi(-q * t) / q,
            Branch::Equal => -t * log_phi_prime(-(p + q) * T::lit(0.5) * t),
            Branch::BothZero => -t * T::lit(0.5),
        }
    }

    // b = 0 with 0^p = 0 for p > 0 taken as the continuous extension
    fn log_unit_boundary(&self) -> T {
        let (p, q) = (self.p, self.q);
        match self.branch() {
            Branch::Generic if p > T::zero() && q > T::zero() => (q / p).ln() / (p - q),
            Branch::Equal if p + q > T::zero() => -(p + q).recip() * T::lit(2.0),
            _ => T::neg_infinity(),
        }
    }
}

/// An ordered-free pair `(a, b)` of mean arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair<T> {
    a: T,
    b: T,
}

impl<T: Real> PositivePair<T> {
    /// Both members strictly positive and finite.
    pub fn new(a: T, b: T) -> Result<Self> {
        let ok = |v: T| v > T::zero() && v.is_finite();
        if !(ok(a) && ok(b)) {
            return domain(format!("mean arguments must be positive and finite, got ({a}, {b})"));
        }
        Ok(Self { a, b })
    }

    /// Allows one member to be zero; means are then continuous extensions.
    pub fn with_boundary(a: T, b: T) -> Result<Self> {
        let ok = |v: T| v >= T::zero() && v.is_finite();
        if !(ok(a) && ok(b)) || (a == T::zero() && b == T::zero()) {
            return domain(format!(
                "mean arguments must be non-negative, finite and not both zero, got ({a}, {b})"
            ));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn max(&self) -> T {
        self.a.max(self.b)
    }

    pub fn min(&self) -> T {
        self.a.min(self.b)
    }

    /// `ln(max / min)` without cancellation when the members are close.
    pub fn log_ratio(&self) -> T {
        let (hi, lo) = (self.max(), self.min());
        if lo == T::zero() {
            return T::infinity();
        }
        if hi <= lo + lo {
            return ((hi - lo) / lo).ln_1p();
        }
        let ratio = hi / lo;
        if ratio.is_finite() {
            ratio.ln()
        } else {
            hi.ln() - lo.ln()
        }
    }
}

/// `S_{p,q}(a, b)`. Exactly `a` when `a == b`; always within `[min, max]`.
pub fn stolarsky<T: Real>(params: &MeanParams<T>, pair: &PositivePair<T>) -> T {
    if pair.a == pair.b {
        return pair.a;
    }
    let s = pair.max() * params.log_unit(pair.log_ratio()).exp();
    s.max(pair.min()).min(pair.max())
}

/// `ln(S_{p,q}(a, b) / max(a, b))`, which is `≤ 0`. Use with `exp_m1` for
/// `1 - S` when `S` is close to the larger member.
pub fn stolarsky_log_ratio<T: Real>(params: &MeanParams<T>, pair: &PositivePair<T>) -> T {
    if pair.a == pair.b {
        return T::zero();
    }
    params.log_unit(pair.log_ratio())
}

fn geometric<T: Real>(pair: &PositivePair<T>) -> T {
    (pair.a * pair.b).sqrt()
}

/// Power mean `((a^p + b^p)/2)^{1/p}`; geometric mean at `p = 0`.
pub fn power_mean<T: Real>(p: T, pair: &PositivePair<T>) -> T {
    if p == T::zero() {
        return geometric(pair);
    }
    ((pair.a.powf(p) + pair.b.powf(p)) * T::lit(0.5)).powf(p.recip())
}

/// Lehmer mean `(a^{p+1} + b^{p+1}) / (a^p + b^p)`.
pub fn lehmer_mean<T: Real>(p: T, pair: &PositivePair<T>) -> T {
    (pair.a.powf(p + T::one()) + pair.b.powf(p + T::one())) / (pair.a.powf(p) + pair.b.powf(p))
}

/// `He^{1/p}(a^p, b^p)` with the Heronian mean `He(x, y) = (x + sqrt(xy) + y)/3`.
pub fn heronian_order<T: Real>(p: T, pair: &PositivePair<T>) -> T {
    if p == T::zero() {
        return geometric(pair);
    }
    let (x, y) = (pair.a.powf(p), pair.b.powf(p));
    ((x + (x * y).sqrt() + y) / T::lit(3.0)).powf(p.recip())
}

/// `L^{1/p}(a^p, b^p)` with the logarithmic mean `L(x, y) = (x - y)/(ln x - ln y)`.
pub fn log_order<T: Real>(p: T, pair: &PositivePair<T>) -> T {
    if p == T::zero() {
        return geometric(pair);
    }
    if pair.a == pair.b {
        return pair.a;
    }
    let (x, y) = (pair.a.powf(p), pair.b.powf(p));
    ((x - y) / (x.ln() - y.ln())).powf(p.recip())
}

/// `I^{1/p}(a^p, b^p)` with the identric mean `I(x, y) = exp((x ln x - y ln y)/(x - y) - 1)`.
pub fn identric_order<T: Real>(p: T, pair: &PositivePair<T>) -> T {
    if p == T::zero() {
        return geometric(pair);
    }
    if pair.a == pair.b {
        return pair.a;
    }
    let (x, y) = (pair.a.powf(p), pair.b.powf(p));
    ((x * x.ln() - y * y.ln()) / (x - y) - T::one()).exp().powf(p.recip())
}

/// `θ_p = ((2c - p)/p)^{1/(2p - 2c)}` for `0 < p < 2c`, with `θ_c = e^{-1/c}`.
pub fn theta<T: Real>(p: T, c: T) -> Result<T> {
    if !(c > T::zero()) || !(p > T::zero() && p < c + c) {
        return domain(format!("theta requires c > 0 and 0 < p < 2c, got p = {p}, c = {c}"));
    }
    let d = p - c;
    let x = d / c;
    // ln θ = -atanh(d/c)/d
    let ln_theta = if d.abs() < T::lit(EQUAL_TOL) * (T::one() + p.abs() + c.abs()) {
        let x2 = x * x;
        -(T::one() + x2 / T::lit(3.0) + x2 * x2 / T::lit(5.0)) / c
    } else {
        -x.atanh() / d
    };
    Ok(ln_theta.exp())
}

/// Toader mean `(2/π) ∫ sqrt(a² cos² t + b² sin² t) dt`, evaluated as
/// `(2/π) max · E(sqrt(1 - (min/max)²))`.
pub fn toader_mean<T: Real>(pair: &PositivePair<T>) -> T {
    if pair.a == pair.b {
        return pair.a;
    }
    let m = Modulus::from_complement(pair.min() / pair.max()).expect("ratio lies in [0, 1)");
    pair.max() * two_over_pi_e(&m)
}
