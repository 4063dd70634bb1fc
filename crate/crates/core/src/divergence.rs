//! Henze-Penrose divergence estimates from graph statistics, the exact
//! discrete-model quantities, and the Bayes error sandwich.
//!
//! For samples with m points of class 1 and n of class 0 (N = m + n), the
//! cross-match statistic A yields the direct estimate
//!     D-hat = 1 - N A / (m n),
//! and the Friedman-Rafsky statistic R yields
//!     D-hat = 1 - N R / (2 m n).
//! With priors c0, c1 the affinity u_c = 4 c0 c1 D + (c0 - c1)^2 sandwiches
//! the Bayes error:
//!     (1 - sqrt(u_c)) / 2 <= err <= (1 - u_c) / 2.
//! The discrete formulas evaluate all of this exactly for a known two-class
//! model over finitely many bins, which is what the simulation harness uses
//! as ground truth.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::stats::StatKind;

const PROB_TOL: f64 = 1e-12;

/// A divergence estimate with the derived affinity and Bayes error bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    /// Unclamped estimate; the null expectation sits slightly below zero.
    pub estimate_raw: f64,
    /// Estimate clamped into [0, 1].
    pub estimate: f64,
    pub statistic: usize,
    pub kind: StatKind,
    pub m: usize,
    pub n: usize,
    /// Affinity 4 c0 c1 * estimate + (c0 - c1)^2 under the priors used.
    pub u_c: f64,
    pub bayes_lower: f64,
    pub bayes_upper: f64,
}

fn build_report(
    kind: StatKind,
    statistic: usize,
    m: usize,
    n: usize,
    estimate_raw: f64,
    priors: Option<(f64, f64)>,
) -> Result<DivergenceReport> {
    let estimate = estimate_raw.clamp(0.0, 1.0);
    let total = (m + n) as f64;
    let (c0, c1) = match priors {
        Some((c0, c1)) => {
            if !(c0 > 0.0 && c1 > 0.0 && (c0 + c1 - 1.0).abs() <= PROB_TOL) {
                return Err(Error::InvalidPriors { c0, c1 });
            }
            (c0, c1)
        }
        None => (n as f64 / total, m as f64 / total),
    };
    let u_c = affinity_from_divergence(estimate, c0, c1);
    let (bayes_lower, bayes_upper) = bayes_bounds(u_c)?;
    Ok(DivergenceReport {
        estimate_raw,
        estimate,
        statistic,
        kind,
        m,
        n,
        u_c,
        bayes_lower,
        bayes_upper,
    })
}

/// u_c = 4 c0 c1 D + (c0 - c1)^2.
pub fn affinity_from_divergence(divergence: f64, c0: f64, c1: f64) -> f64 {
    4.0 * c0 * c1 * divergence + (c0 - c1) * (c0 - c1)
}

/// Divergence estimate from the cross-match statistic, with empirical priors
/// c0 = n/N, c1 = m/N feeding the affinity and Bayes bounds.
pub fn hp_estimate_crossmatch(statistic: usize, m: usize, n: usize) -> Result<DivergenceReport> {
    hp_estimate_crossmatch_with_priors(statistic, m, n, None)
}

/// Same as [`hp_estimate_crossmatch`] but with explicit priors for u_c.
pub fn hp_estimate_crossmatch_with_priors(
    statistic: usize,
    m: usize,
    n: usize,
    priors: Option<(f64, f64)>,
) -> Result<DivergenceReport> {
    if m == 0 || n == 0 {
        return Err(Error::DegenerateClass { m, n });
    }
    let total = (m + n) as f64;
    let estimate_raw = 1.0 - total * statistic as f64 / (m as f64 * n as f64);
    build_report(StatKind::CrossMatch, statistic, m, n, estimate_raw, priors)
}

/// Divergence estimate from the Friedman-Rafsky statistic. Calibrated so the
/// asymptotic null mean R -> 2mn/N maps to a zero estimate.
pub fn hp_estimate_fr(statistic: usize, m: usize, n: usize) -> Result<DivergenceReport> {
    hp_estimate_fr_with_priors(statistic, m, n, None)
}

/// Same as [`hp_estimate_fr`] but with explicit priors for u_c.
pub fn hp_estimate_fr_with_priors(
    statistic: usize,
    m: usize,
    n: usize,
    priors: Option<(f64, f64)>,
) -> Result<DivergenceReport> {
    if m == 0 || n == 0 {
        return Err(Error::DegenerateClass { m, n });
    }
    let total = (m + n) as f64;
    let estimate_raw = 1.0 - total * statistic as f64 / (2.0 * m as f64 * n as f64);
    build_report(StatKind::FriedmanRafsky, statistic, m, n, estimate_raw, priors)
}

/// Bayes error sandwich from the affinity:
/// lower = (1 - sqrt(u)) / 2, upper = (1 - u) / 2.
pub fn bayes_bounds(u: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::OutOfDomain {
            what: "affinity u",
            value: u,
        });
    }
    let lower = 0.5 - 0.5 * libm::sqrt(u);
    let upper = 0.5 - 0.5 * u;
    // sqrt(u) >= u on [0,1], so lower <= upper; clamp float dust at u ~ 1.
    Ok((lower.max(0.0), upper.max(0.0)))
}

/// An exact two-class discrete model: priors plus per-bin conditionals.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePair {
    c0: f64,
    c1: f64,
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl DiscretePair {
    pub fn new(c0: f64, c1: f64, p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        if !(c0 > 0.0 && c0 < 1.0 && c1 > 0.0 && c1 < 1.0)
            || (c0 + c1 - 1.0).abs() > PROB_TOL
        {
            return Err(Error::InvalidPriors { c0, c1 });
        }
        if p0.is_empty() || p0.len() != p1.len() {
            return Err(Error::InvalidDistribution {
                which: "p0/p1",
                reason: "empty or mismatched bin counts",
            });
        }
        for (which, p) in [("p0", &p0), ("p1", &p1)] {
            let mut sum = 0.0;
            for &x in p.iter() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidDistribution {
                        which: if which == "p0" { "p0" } else { "p1" },
                        reason: "negative or non-finite mass",
                    });
                }
                sum += x;
            }
            if (sum - 1.0).abs() > PROB_TOL {
                return Err(Error::InvalidDistribution {
                    which: if which == "p0" { "p0" } else { "p1" },
                    reason: "masses do not sum to 1",
                });
            }
        }
        Ok(DiscretePair { c0, c1, p0, p1 })
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn bins(&self) -> usize {
        self.p0.len()
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    /// Swaps the two classes; all divergence quantities are invariant.
    pub fn swapped(&self) -> DiscretePair {
        DiscretePair {
            c0: self.c1,
            c1: self.c0,
            p0: self.p1.clone(),
            p1: self.p0.clone(),
        }
    }
}

/// Exact Bayes error: sum over bins of min(c0 p0, c1 p1).
pub fn discrete_bayes_error(dp: &DiscretePair) -> f64 {
    dp.p0
        .iter()
        .zip(dp.p1.iter())
        .map(|(&a, &b)| (dp.c0 * a).min(dp.c1 * b))
        .sum()
}

/// Exact affinity H_c = 1 - 4 c0 c1 * sum p0 p1 / (c0 p0 + c1 p1).
/// Bins with no mass under either class contribute nothing.
pub fn discrete_affinity(dp: &DiscretePair) -> f64 {
    let cross: f64 = dp
        .p0
        .iter()
        .zip(dp.p1.iter())
        .map(|(&a, &b)| {
            let mix = dp.c0 * a + dp.c1 * b;
            if mix > 0.0 {
                a * b / mix
            } else {
                0.0
            }
        })
        .sum();
    1.0 - 4.0 * dp.c0 * dp.c1 * cross
}

/// Exact divergence D_c in [0, 1]; zero iff p0 = p1.
pub fn discrete_hp_divergence(dp: &DiscretePair) -> f64 {
    let quad: f64 = dp
        .p0
        .iter()
        .zip(dp.p1.iter())
        .map(|(&a, &b)| {
            let mix = dp.c0 * a + dp.c1 * b;
            if mix > 0.0 {
                let diff = dp.c0 * a - dp.c1 * b;
                diff * diff / mix
            } else {
                0.0
            }
        })
        .sum();
    let skew = (dp.c0 - dp.c1) * (dp.c0 - dp.c1);
    (quad - skew) / (4.0 * dp.c0 * dp.c1)
}

/// Majority-vote classifier over discrete bins.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramRule {
    assignments: BTreeMap<usize, u8>,
    default: u8,
}

impl HistogramRule {
    pub fn classify(&self, bin: usize) -> u8 {
        self.assignments.get(&bin).copied().unwrap_or(self.default)
    }

    /// Exact expected error of this rule under a known discrete model, with
    /// bins identified by index. Never beats the Bayes error.
    pub fn expected_error(&self, dp: &DiscretePair) -> f64 {
        (0..dp.bins())
            .map(|bin| {
                if self.classify(bin) == 1 {
                    dp.c0 * dp.p0[bin]
                } else {
                    dp.c1 * dp.p1[bin]
                }
            })
            .sum()
    }
}

/// Trains the discrete histogram rule: each observed bin maps to its majority
/// label, unseen bins map to the global majority, ties break toward 0.
pub fn histogram_rule(train: &[(usize, u8)]) -> Result<HistogramRule> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut counts: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut global = (0usize, 0usize);
    for (index, &(bin, label)) in train.iter().enumerate() {
        if label > 1 {
            return Err(Error::InvalidLabel {
                index,
                value: label,
            });
        }
        let entry = counts.entry(bin).or_insert((0, 0));
        if label == 0 {
            entry.0 += 1;
            global.0 += 1;
        } else {
            entry.1 += 1;
            global.1 += 1;
        }
    }
    let assignments = counts
        .into_iter()
        .map(|(bin, (zeros, ones))| (bin, u8::from(ones > zeros)))
        .collect();
    Ok(HistogramRule {
        assignments,
        default: u8::from(global.1 > global.0),
    })
}
