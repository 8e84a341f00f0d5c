//! Exact coefficient ledgers of the two series proofs.
//!
//! First proof: `f₇ = (3π/16) r⁶ Σ d_n r^{2n}` with `d_n = 8a_n + Σ b_{n-k} c_k`.
//! Second proof: `1 - (2/π)E = Σ v_n r^{2n}`, `1 - S_{5/2,2}(1,r') = Σ u_n r^{2n}`,
//! `w_n = v_n - u_n`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::EULER_GAMMA;
use crate::series::{int, pochhammer_exact, rat, Rational};
use crate::special_fn::gamma_fn;

/// Exact rational coefficient, always in lowest terms with a positive denominator.
pub type RationalCoeff = Rational;

fn fact(n: u32) -> Rational {
    Rational::from_integer(crate::series::factorial(n))
}

fn poch(num: i64, den: i64, n: u32) -> Rational {
    pochhammer_exact(&rat(num, den), n)
}

/// `a_n = (5n+9) (1/2)²_{n+1} / (n! (n+3)!)`.
pub fn coeff_a(n: u32) -> RationalCoeff {
    let h = poch(1, 2, n + 1);
    int(5 * n as i64 + 9) * &h * &h / (fact(n) * fact(n + 3))
}

/// `b_n = (7/8)_n / n!`, the coefficients of `(1 - r²)^{-7/8}`.
pub fn coeff_b(n: u32) -> RationalCoeff {
    poch(7, 8, n) / fact(n)
}

/// `c_n = (n-1)(n+18)(2n+1) (1/2)²_n / (n! (n+3)!)`.
pub fn coeff_c(n: u32) -> RationalCoeff {
    let h = poch(1, 2, n);
    let n = n as i64;
    int((n - 1) * (n + 18) * (2 * n + 1)) * &h * &h / (fact(n as u32) * fact(n as u32 + 3))
}

/// `d_n = 8 a_n + Σ_{k=0}^{n} b_{n-k} c_k`.
pub fn coeff_d(n: u32) -> RationalCoeff {
    let conv = (0..=n).fold(Rational::zero(), |acc, k| acc + coeff_b(n - k) * coeff_c(k));
    int(8) * coeff_a(n) + conv
}

/// `D_n = (8/7) d_{n+1} - d_n`.
pub fn seq_d(n: u32) -> RationalCoeff {
    rat(8, 7) * coeff_d(n + 1) - coeff_d(n)
}

/// `g₁(n) = Σ_{k=2}^{n} (n-k)/(n-k+1) · (k-1)(k+18)/((k+1)(k+2)(k+3))`.
pub fn seq_g1(n: u32) -> RationalCoeff {
    let n = n as i64;
    (2..=n).fold(Rational::zero(), |acc, k| {
        acc + rat(n - k, n - k + 1) * rat((k - 1) * (k + 18), (k + 1) * (k + 2) * (k + 3))
    })
}

/// `H_n = Σ_{k=1}^{n} 1/k`.
pub fn harmonic(n: u32) -> RationalCoeff {
    (1..=n as i64).fold(Rational::zero(), |acc, k| acc + rat(1, k))
}

/// Closed form of [`seq_g1`], with `ψ(n+1) + γ` replaced by the exact `H_n`.
pub fn seq_g1_closed(n: u32) -> RationalCoeff {
    let n = n as i64;
    let p = n * n * n + 7 * n * n - 12 * n + 24;
    rat(p, (n + 2) * (n + 3) * (n + 4)) * harmonic(n as u32)
        - rat(n * (11 * n * n + 8 * n + 21), (n + 1) * (n + 2) * (n + 3) * (n + 4))
}

/// Lower bound `g(n)` for `D_n` (floating point: it involves π and Γ(7/8)).
pub fn seq_g(n: u32) -> f64 {
    use std::f64::consts::PI;
    let x = n as f64;
    let g1 = seq_g1(n).to_f64().unwrap_or(f64::NAN);
    let gamma78 = gamma_fn(0.875).expect("Γ(7/8) is finite");
    let x78 = x.powf(0.875);
    4.0 / PI * x * (2.0 * x + 1.0) / ((x + 1.0) * (x + 2.0) * (x + 3.0)) - 3.0 / (7.0 * gamma78) * x78 / (x + 1.0)
        + 128.0 / (7.0 * PI) * x78 / (64.0 * x - 9.0) * g1
}

/// `g₁(n)` through the digamma form `ψ(n+1) + γ`, in floating point.
pub fn seq_g1_digamma(n: u32) -> f64 {
    let x = n as f64;
    let psi = crate::special_fn::digamma(x + 1.0).expect("positive argument") + EULER_GAMMA;
    (x * x * x + 7.0 * x * x - 12.0 * x + 24.0) / ((x + 2.0) * (x + 3.0) * (x + 4.0)) * psi
        - x * (11.0 * x * x + 8.0 * x + 21.0) / ((x + 1.0) * (x + 2.0) * (x + 3.0) * (x + 4.0))
}

/// `v_n = (1/2) (1/2)_{n-1} (1/2)_n / (n!)²`, `n ≥ 1`.
pub fn coeff_v(n: u32) -> RationalCoeff {
    assert!(n >= 1, "v_n is defined for n >= 1");
    let f = fact(n);
    rat(1, 2) * poch(1, 2, n - 1) * poch(1, 2, n) / (&f * &f)
}

/// `u_n = (6/5)(1/2)_{n-1}/(n+2)! + (2/5)(3/4)_n/(n+2)!`, `n ≥ 1`.
pub fn coeff_u(n: u32) -> RationalCoeff {
    assert!(n >= 1, "u_n is defined for n >= 1");
    (rat(6, 5) * poch(1, 2, n - 1) + rat(2, 5) * poch(3, 4, n)) / fact(n + 2)
}

/// `u_n` straight from the binomial expansion,
/// `(16/25)(2(-5/4)_{n+2} - (-5/2)_{n+2})/(n+2)!`.
pub fn coeff_u_binomial(n: u32) -> RationalCoeff {
    rat(16, 25) * (int(2) * poch(-5, 4, n + 2) - poch(-5, 2, n + 2)) / fact(n + 2)
}

/// `w_n = v_n - u_n`, the coefficients of `S_{5/2,2}(1,r') - (2/π)E(r)`.
pub fn coeff_w(n: u32) -> RationalCoeff {
    coeff_v(n) - coeff_u(n)
}

/// `(v_{n+1}/v_n) u_n - u_{n+1}`; positive for `n ≥ 3`.
pub fn theorem2_gap(n: u32) -> RationalCoeff {
    coeff_v(n + 1) / coeff_v(n) * coeff_u(n) - coeff_u(n + 1)
}

/// The same gap in the factored form
/// `(3/5)(3n+1)(1/2)_n + (1/10)(n² - 11n - 6)(3/4)_n`, over `(n+1)²(n+3)!`.
pub fn theorem2_gap_factored(n: u32) -> RationalCoeff {
    let k = n as i64;
    let den = int((k + 1) * (k + 1)) * fact(n + 3);
    (rat(3 * (3 * k + 1), 5) * poch(1, 2, n) + rat(k * k - 11 * k - 6, 10) * poch(3, 4, n)) / den
}

/// `a_n, b_n, c_n, d_n` for `n ≤ n_max + 1`, built with shared Pochhammer
/// and factorial tables.
#[derive(Debug, Clone)]
pub struct TheoremOneLedger {
    a: Vec<Rational>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    d: Vec<Rational>,
}

impl TheoremOneLedger {
    pub fn new(n_max: usize) -> Self {
        let len = n_max + 2;
        let mut half = vec![Rational::one()]; // (1/2)_k
        let mut seven8 = vec![Rational::one()]; // (7/8)_k
        let mut f = vec![Rational::one()]; // k!
        for k in 0..len + 3 {
            let kk = k as i64;
            half.push(&half[k] * rat(2 * kk + 1, 2));
            seven8.push(&seven8[k] * rat(8 * kk + 7, 8));
            f.push(&f[k] * int(kk + 1));
        }
        let a: Vec<Rational> = (0..len)
            .map(|n| int(5 * n as i64 + 9) * &half[n + 1] * &half[n + 1] / (&f[n] * &f[n + 3]))
            .collect();
        let b: Vec<Rational> = (0..len).map(|n| &seven8[n] / &f[n]).collect();
        let c: Vec<Rational> = (0..len)
            .map(|n| {
                let k = n as i64;
                int((k - 1) * (k + 18) * (2 * k + 1)) * &half[n] * &half[n] / (&f[n] * &f[n + 3])
            })
            .collect();
        let d = (0..len)
            .map(|n| (0..=n).fold(int(8) * &a[n], |acc, k| acc + &b[n - k] * &c[k]))
            .collect();
        Self { a, b, c, d }
    }

    /// Largest `n` for which `D_n` is available.
    pub fn n_max(&self) -> usize {
        self.d.len() - 2
    }

    pub fn a(&self, n: usize) -> &Rational {
        &self.a[n]
    }

    pub fn b(&self, n: usize) -> &Rational {
        &self.b[n]
    }

    pub fn c(&self, n: usize) -> &Rational {
        &self.c[n]
    }

    pub fn d(&self, n: usize) -> &Rational {
        &self.d[n]
    }

    pub fn big_d(&self, n: usize) -> Rational {
        rat(8, 7) * &self.d[n + 1] - &self.d[n]
    }
}

/// `v_n, u_n, w_n` for `1 ≤ n ≤ n_max + 1`, built by their term ratios.
#[derive(Debug, Clone)]
pub struct TheoremTwoLedger {
    v: Vec<Rational>,
    u: Vec<Rational>,
}

impl TheoremTwoLedger {
    pub fn new(n_max: usize) -> Self {
        let len = n_max + 2;
        // index 0 is a placeholder so that v[n] is v_n
        let mut v = vec![Rational::zero(), rat(1, 4)];
        // A_n = (1/2)_{n-1}/(n+2)!, B_n = (3/4)_n/(n+2)!
        let (mut an, mut bn) = (rat(1, 6), rat(1, 8));
        let mut u = vec![Rational::zero(), rat(6, 5) * &an + rat(2, 5) * &bn];
        for n in 1..len {
            let k = n as i64;
            let next_v = &v[n] * rat((2 * k - 1) * (2 * k + 1), 4 * (k + 1) * (k + 1));
            v.push(next_v);
            an = an * rat(2 * k - 1, 2 * (k + 3));
            bn = bn * rat(4 * k + 3, 4 * (k + 3));
            u.push(rat(6, 5) * &an + rat(2, 5) * &bn);
        }
        Self { v, u }
    }

    pub fn n_max(&self) -> usize {
        self.v.len() - 2
    }

    pub fn v(&self, n: usize) -> &Rational {
        &self.v[n]
    }

    pub fn u(&self, n: usize) -> &Rational {
        &self.u[n]
    }

    pub fn w(&self, n: usize) -> Rational {
        &self.v[n] - &self.u[n]
    }

    pub fn gap(&self, n: usize) -> Rational {
        &self.v[n + 1] / &self.v[n] * &self.u[n] - &self.u[n + 1]
    }
}

/// The `d_n` values `n = 4..=10` as printed with the first proof.
pub fn paper_d_values() -> [Rational; 7] {
    [
        rat(35, 32768),
        rat(903, 262_144),
        rat(7343, 1_048_576),
        rat(193_225, 16_777_216),
        rat(36_001_035, 2_147_483_648),
        rat(387_471_275, 17_179_869_184),
        rat(7_897_834_945, 274_877_906_944),
    ]
}

/// The gap values `n = 1..=11` as printed with the second proof.
pub fn paper_gap_values() -> [Rational; 11] {
    [
        Rational::zero(),
        Rational::zero(),
        rat(3, 81920),
        rat(21, 512_000),
        rat(47, 1_310_720),
        rat(1881, 64_225_280),
        rat(157_531, 6_710_886_400),
        rat(42559, 2_264_924_160),
        rat(507_577, 33_554_432_000),
        rat(997_177, 81_201_725_440),
        rat(20_743_573, 2_061_584_302_080),
    ]
}

/// True iff `v` is in lowest terms with a positive denominator.
pub fn is_normalized(v: &Rational) -> bool {
    use num_integer::Integer;
    v.denom() > &BigInt::zero() && v.numer().gcd(v.denom()).is_one()
}
