//! Theorem-level objects: the ratio functions, the exact coefficient ledgers
//! behind the monotonicity proofs, integer-polynomial certificates, grid
//! scanners, and the `p₀` conjecture explorer.

pub mod certificates;
pub mod chains;
pub mod conjecture;
pub mod f7;
pub mod ledger;
pub mod ratios;

pub use certificates::{
    crossing_a7_a8, eval_g2, eval_g5, eval_poly_exact, eval_poly_i128, h4_root_bracket, Certificate,
};
pub use chains::{ChainCheck, ChainReport};
pub use conjecture::{conjecture_scan, solve_p0, CertifiedGap, ConjectureReport};
pub use f7::{f7, f7_lower_bound, f7_lower_bound_check};
pub use ledger::{
    coeff_a, coeff_b, coeff_c, coeff_d, coeff_u, coeff_v, coeff_w, seq_d, seq_g, seq_g1, seq_g1_closed,
    theorem2_gap, RationalCoeff, TheoremOneLedger, TheoremTwoLedger,
};
pub use ratios::{family_difference, ratio_f, ratio_g, ratio_g1, ratio_r, rs_ratio};

use std::f64::consts::PI;

/// Default absolute tolerance on consecutive differences.
pub const MONOTONE_TOL: f64 = 1e-12;
/// Default number of grid points.
pub const GRID_N: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    NonMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityReport<T> {
    pub direction: Direction,
    /// Largest step against the reported direction (against the less-violated
    /// one when non-monotone).
    pub max_violation: T,
    pub violation_at: Option<T>,
    pub grid_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub lower_best: f64,
    pub upper_best: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// `F = (1 - (2/π)E) / (1 - S_{11/4,7/4}(1, r'))`.
    One,
    /// `G = (1 - (2/π)E) / (1 - S_{5/2,2}(1, r'))`.
    Two,
}

/// Range of the theorem's ratio over `(0, 1)`: the best constants.
pub fn best_constants(which: Theorem) -> BoundConstants {
    match which {
        Theorem::One => BoundConstants {
            lower_best: 11.0 * (PI - 2.0) / (4.0 * PI),
            upper_best: 1.0,
        },
        Theorem::Two => BoundConstants {
            lower_best: 1.0,
            upper_best: 25.0 * (PI - 2.0) / (9.0 * PI),
        },
    }
}

/// `i / (n + 1)` for `i = 1..=n`: `n` interior points of `(0, 1)`.
pub fn open_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (1..=n).map(move |i| i as f64 / (n + 1) as f64)
}

/// Checks the direction of `f` on `n` equally spaced points of `[lo, hi]`.
///
/// With `tol > 0` a step counts as compatible when it is at least `-tol`
/// (increasing) or at most `tol` (decreasing); ties go to increasing. With
/// `tol = 0` steps must be strict, so a constant is non-monotone. Grids are
/// never coarser than 16 points.
pub fn monotonicity_scan<T: crate::Real>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    n: usize,
    tol: T,
) -> MonotonicityReport<T> {
    let n = n.max(16);
    let step = (hi - lo) / T::from_usize_lossy(n - 1);
    let xs: Vec<T> = (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * T::from_usize_lossy(i) })
        .collect();
    let ys: Vec<T> = xs.iter().map(|&x| f(x)).collect();
    scan_values(&xs, &ys, tol)
}

/// Direction of already evaluated samples `ys` at abscissae `xs`.
pub fn scan_values<T: crate::Real>(xs: &[T], ys: &[T], tol: T) -> MonotonicityReport<T> {
    let strict = tol == T::zero();
    let (mut ok_up, mut ok_down) = (true, true);
    // (largest step against the direction, where)
    let mut up: (T, Option<T>) = (T::zero(), None);
    let mut down: (T, Option<T>) = (T::zero(), None);
    for i in 1..ys.len() {
        let d = ys[i] - ys[i - 1];
        if d.is_nan() {
            ok_up = false;
            ok_down = false;
            up = (T::infinity(), Some(xs[i]));
            down = up;
            continue;
        }
        ok_up &= if strict { d > T::zero() } else { d >= -tol };
        ok_down &= if strict { d < T::zero() } else { d <= tol };
        if -d > up.0 || up.1.is_none() && d <= T::zero() {
            up = ((-d).max(T::zero()), Some(xs[i]));
        }
        if d > down.0 || down.1.is_none() && d >= T::zero() {
            down = (d.max(T::zero()), Some(xs[i]));
        }
    }
    let (direction, (v, at)) = if ok_up {
        (Direction::Increasing, up)
    } else if ok_down {
        (Direction::Decreasing, down)
    } else if up.0 <= down.0 {
        (Direction::NonMonotone, up)
    } else {
        (Direction::NonMonotone, down)
    };
    MonotonicityReport {
        direction,
        max_violation: v,
        violation_at: at,
        grid_size: ys.len(),
    }
}
