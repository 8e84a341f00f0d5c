//! Strict inequality chains checked point by point on the open grid.
//!
//! Each link is a gap that must be positive. Where the gap is `O(r^{2k})` with
//! large `k` it is read from its exact Maclaurin series (`r ≤ 1/2`), with the
//! Horner rounding bound and a tail estimate; elsewhere it is computed from
//! closed forms with a `64 ε` absolute allowance.

use std::f64::consts::PI;

use super::open_grid;
use crate::approximations::{approx_series, approx_value, ApproxId};
use crate::series::{self, int, rat, PowerSeries, Rational};
use crate::special_fn::{ellip_e_deficit, two_over_pi_e, Modulus};
use crate::stolarsky::{heronian_order, identric_order, log_order, power_mean, MeanParams, PositivePair};

const SERIES_MAX: f64 = 0.5;
const SERIES_LEN: usize = 36;
const DIRECT_BOUND: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainCheck {
    /// `A_{9/2}^{1/3}G^{2/3} < sqrt(G He_{9/2}) < L_{9/2} < He_{9/4} < A_{3/2}
    /// < S_{11/4,7/4} < (2/π)E < S_{5/2,2} < I_{9/4}`, all at `(1, r')`.
    MeanChain,
    /// `A5 > A3 > A2 > A1 > A4`.
    LowerOrdering,
    /// `max(A7, A8) < A6`.
    UpperDominance,
    /// `S < (2/π)E < 1 − λ + λS < 22/(7π) S`, `S = S_{11/4,7/4}`, `λ = 11(π−2)/(4π)`.
    TheoremOneBounds,
    /// `25/(8π) S < 1 − ξ + ξS < (2/π)E < S`, `S = S_{5/2,2}`, `ξ = 25(π−2)/(9π)`.
    TheoremTwoBounds,
    /// `(2/π)E < (875/872) S_{5/2,2} − (3/872)(1 − r²/4 − 3r⁴/64 − 5r⁶/256)`.
    RefinedUpper,
}

impl ChainCheck {
    pub const ALL: [ChainCheck; 6] = [
        ChainCheck::MeanChain,
        ChainCheck::LowerOrdering,
        ChainCheck::UpperDominance,
        ChainCheck::TheoremOneBounds,
        ChainCheck::TheoremTwoBounds,
        ChainCheck::RefinedUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainCheck::MeanChain => "mean_chain",
            ChainCheck::LowerOrdering => "lower_ordering",
            ChainCheck::UpperDominance => "upper_dominance",
            ChainCheck::TheoremOneBounds => "theorem1_bounds",
            ChainCheck::TheoremTwoBounds => "theorem2_bounds",
            ChainCheck::RefinedUpper => "refined_upper",
        }
    }

    fn links(self) -> Vec<Link> {
        match self {
            ChainCheck::MeanChain => mean_chain_links(),
            ChainCheck::LowerOrdering => {
                use ApproxId::*;
                [(A5, A3), (A3, A2), (A2, A1), (A1, A4)]
                    .into_iter()
                    .map(|(hi, lo)| approx_link(hi, lo))
                    .collect()
            }
            ChainCheck::UpperDominance => vec![
                approx_link(ApproxId::A6, ApproxId::A7),
                approx_link(ApproxId::A6, ApproxId::A8),
            ],
            ChainCheck::TheoremOneBounds => bound_links(1.75, 11.0 * (PI - 2.0) / (4.0 * PI), 22.0 / (7.0 * PI), true),
            ChainCheck::TheoremTwoBounds => bound_links(2.0, 25.0 * (PI - 2.0) / (9.0 * PI), 25.0 / (8.0 * PI), false),
            ChainCheck::RefinedUpper => vec![refined_upper_link()],
        }
    }

    /// Checks every link at `i/(n+1)`, `i = 1..=n`.
    pub fn run(self, n: usize) -> ChainReport {
        let links = self.links();
        let mut failures = Vec::new();
        let mut min_gap = f64::INFINITY;
        for r in open_grid(n) {
            for link in &links {
                let (gap, bound) = link.eval(r);
                min_gap = min_gap.min(gap);
                if !(gap > bound) {
                    failures.push((r, link.label.clone()));
                }
            }
        }
        ChainReport {
            check: self,
            points: n,
            links: links.len(),
            min_gap,
            failures,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub check: ChainCheck,
    pub points: usize,
    pub links: usize,
    pub min_gap: f64,
    /// `(r, link)` for every gap not certified positive.
    pub failures: Vec<(f64, String)>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Link {
    label: String,
    series: Option<PowerSeries>,
    // (gap, absolute error allowance)
    direct: Box<dyn Fn(&Modulus<f64>) -> (f64, f64) + Send + Sync>,
}

impl Link {
    fn eval(&self, r: f64) -> (f64, f64) {
        if let (Some(s), true) = (&self.series, r <= SERIES_MAX) {
            let y = r * r;
            let b = s.eval(y);
            return (b.value, b.bound + s.truncation_estimate(y));
        }
        (self.direct)(&Modulus::new(r).expect("grid point in (0, 1)"))
    }
}

fn direct_diff(f: impl Fn(&Modulus<f64>) -> f64 + Send + Sync + 'static, g: impl Fn(&Modulus<f64>) -> f64 + Send + Sync + 'static) -> Box<dyn Fn(&Modulus<f64>) -> (f64, f64) + Send + Sync> {
    Box::new(move |m| (f(m) - g(m), DIRECT_BOUND))
}

fn approx_link(hi: ApproxId, lo: ApproxId) -> Link {
    Link {
        label: format!("{lo} < {hi}"),
        series: Some(&approx_series(hi, SERIES_LEN) - &approx_series(lo, SERIES_LEN)),
        direct: direct_diff(move |m| approx_value(hi, m), move |m| approx_value(lo, m)),
    }
}

type MeanFn = fn(&Modulus<f64>) -> f64;

fn pair(m: &Modulus<f64>) -> PositivePair<f64> {
    PositivePair::new(1.0, m.complement()).expect("r < 1")
}

// Each mean as a closed form and as S_{9/2-p,p}(1, r') for its p.
fn mean_chain_links() -> Vec<Link> {
    let means: [(&str, Option<(i64, i64)>, MeanFn); 9] = [
        ("A_{9/2}^{1/3} G^{2/3}", Some((-9, 2)), |m| {
            power_mean(4.5, &pair(m)).cbrt() * m.complement().cbrt()
        }),
        ("sqrt(G He_{9/2})", Some((-9, 4)), |m| (m.complement().sqrt() * heronian_order(4.5, &pair(m))).sqrt()),
        ("L_{9/2}", Some((0, 1)), |m| log_order(4.5, &pair(m))),
        ("He_{9/4}", Some((9, 8)), |m| heronian_order(2.25, &pair(m))),
        ("A_{3/2}", Some((3, 2)), |m| power_mean(1.5, &pair(m))),
        ("S_{11/4,7/4}", Some((7, 4)), |m| approx_value(ApproxId::A5, m)),
        ("(2/pi)E", None, |m| two_over_pi_e(m)),
        ("S_{5/2,2}", Some((2, 1)), |m| approx_value(ApproxId::A8, m)),
        ("I_{9/4}", Some((9, 4)), |m| identric_order(2.25, &pair(m))),
    ];
    let series_of = |p: Option<(i64, i64)>| match p {
        Some((n, d)) => {
            let p = rat(n, d);
            series::stolarsky_unit(&(rat(9, 2) - &p), &p, SERIES_LEN)
        }
        None => series::two_over_pi_e(SERIES_LEN),
    };
    means
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            Link {
                label: format!("{} < {}", lo.0, hi.0),
                series: Some(&series_of(hi.1) - &series_of(lo.1)),
                direct: direct_diff(hi.2, lo.2),
            }
        })
        .collect()
}

fn family_deficit(p: f64, m: &Modulus<f64>) -> f64 {
    -MeanParams::family(p).log_unit(m.log_inv_complement()).exp_m1()
}

/// Links of the two-sided theorem bounds for `S = S_{9/2-p,p}(1, r')` with
/// the linear coefficient `k` (λ or ξ) and the multiplicative one `c`.
fn bound_links(p: f64, k: f64, c: f64, lower_is_s: bool) -> Vec<Link> {
    let pr = from_quarter(p);
    let s_minus_e = &series::stolarsky_unit(&(rat(9, 2) - &pr), &pr, SERIES_LEN) - &series::two_over_pi_e(SERIES_LEN);
    let allowance = |a: f64, b: f64| 16.0 * f64::EPSILON * (a.abs() + b.abs());
    if lower_is_s {
        // S < e, e < 1 − k + kS, 1 − k + kS < cS
        vec![
            Link {
                label: "S < (2/pi)E".into(),
                series: Some(-&s_minus_e),
                direct: Box::new(move |m| {
                    let (sd, ed) = (family_deficit(p, m), ellip_e_deficit(m));
                    (sd - ed, allowance(sd, ed))
                }),
            },
            Link {
                label: "(2/pi)E < 1 - k + kS".into(),
                series: None,
                direct: Box::new(move |m| {
                    let (sd, ed) = (family_deficit(p, m), ellip_e_deficit(m));
                    (ed - k * sd, allowance(ed, k * sd))
                }),
            },
            Link {
                label: "1 - k + kS < cS".into(),
                series: None,
                direct: Box::new(move |m| {
                    let sd = family_deficit(p, m);
                    ((c - 1.0) - (c - k) * sd, allowance(c - 1.0, (c - k) * sd))
                }),
            },
        ]
    } else {
        // cS < 1 − k + kS, 1 − k + kS < e, e < S
        vec![
            Link {
                label: "cS < 1 - k + kS".into(),
                series: None,
                direct: Box::new(move |m| {
                    let sd = family_deficit(p, m);
                    ((1.0 - c) - (k - c) * sd, allowance(1.0 - c, (k - c) * sd))
                }),
            },
            Link {
                label: "1 - k + kS < (2/pi)E".into(),
                series: None,
                direct: Box::new(move |m| {
                    let (sd, ed) = (family_deficit(p, m), ellip_e_deficit(m));
                    (k * sd - ed, allowance(ed, k * sd))
                }),
            },
            Link {
                label: "(2/pi)E < S".into(),
                series: Some(s_minus_e),
                direct: Box::new(move |m| {
                    let (sd, ed) = (family_deficit(p, m), ellip_e_deficit(m));
                    (ed - sd, allowance(sd, ed))
                }),
            },
        ]
    }
}

fn from_quarter(p: f64) -> Rational {
    rat((p * 4.0).round() as i64, 4)
}

fn refined_upper_link() -> Link {
    let len = SERIES_LEN;
    let poly = PowerSeries::from_coeffs(
        [int(1), rat(-1, 4), rat(-3, 64), rat(-5, 256)]
            .into_iter()
            .chain(std::iter::repeat_with(Rational::default).take(len - 4))
            .collect(),
    );
    let s = series::stolarsky_unit(&rat(5, 2), &int(2), len);
    let e = series::two_over_pi_e(len);
    let gap = &(&s.scale(&rat(875, 872)) - &poly.scale(&rat(3, 872))) - &e;
    Link {
        label: "(2/pi)E < (875 S - 3 P)/872".into(),
        series: Some(gap),
        direct: Box::new(|m| {
            let yv = m.r_squared();
            let (sd, ed) = (family_deficit(2.0, m), ellip_e_deficit(m));
            let head = yv * (0.25 + yv * (3.0 / 64.0 + yv * 5.0 / 256.0));
            let gap = (875.0 * (ed - sd) - 3.0 * (ed - head)) / 872.0;
            (gap, DIRECT_BOUND)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_series_match_closed_forms() {
        // every mean in the chain is the stated member of the family
        let links = mean_chain_links();
        for r in [0.2, 0.45] {
            let m = Modulus::new(r).unwrap();
            for l in &links {
                let from_series = l.series.as_ref().unwrap().eval(r * r).value;
                let (direct, _) = (l.direct)(&m);
                assert!((from_series - direct).abs() < 1e-12, "{} at r = {r}: {from_series} vs {direct}", l.label);
            }
        }
    }

    #[test]
    fn all_chains_hold_strictly() {
        for c in ChainCheck::ALL {
            let rep = c.run(999);
            assert!(rep.passed(), "{}: {:?}", c.name(), &rep.failures[..rep.failures.len().min(5)]);
            assert!(rep.min_gap > 0.0);
        }
    }

    #[test]
    fn refined_upper_series_starts_at_r10() {
        let l = refined_upper_link();
        let s = l.series.unwrap();
        assert_eq!(s.leading().unwrap().0, 5);
        assert!(s.leading().unwrap().1 > &Rational::default());
    }
}
