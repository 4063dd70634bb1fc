//! Two-sample statistics over a matching or spanning tree, their moments
//! under the permutation null, and Monte Carlo p-values.
//!
//! The cross-match statistic A counts matched pairs whose endpoints carry
//! different labels (Rosenbaum's test statistic); the Friedman-Rafsky
//! statistic R counts bichromatic edges of the pooled-sample MST. Under the
//! null that labels are exchangeable, A has dimension-independent moments
//!     E[A]   = m n / (N - 1),
//!     Var[A] = 2 m (m-1) n (n-1) / ((N-3)(N-1)^2),
//! for even N = m + n. Both are recovered here from a common derivation over
//! fixed edge sets, which also yields the ghost-augmented (odd N) variant and
//! the tree version with its degree-dependent variance.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matching::{min_weight_perfect_matching, Matching};
use crate::metric::{add_ghost_point, DistanceMatrix};
use crate::spanning::SpanningTree;

/// Which graph statistic a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    CrossMatch,
    FriedmanRafsky,
}

impl StatKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatKind::CrossMatch => "cross-match",
            StatKind::FriedmanRafsky => "friedman-rafsky",
        }
    }
}

/// A bichromatic-edge count together with its permutation-null moments.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCountReport {
    pub statistic: usize,
    pub kind: StatKind,
    pub m: usize,
    pub n: usize,
    pub null_mean: f64,
    pub null_var: f64,
    pub p_value: Option<f64>,
}

impl CrossCountReport {
    /// Report for a cross-match statistic; the moments are ghost-aware (odd
    /// N means one matched pair is a free ghost edge and never counts).
    pub fn cross_match(statistic: usize, m: usize, n: usize, p_value: Option<f64>) -> Result<Self> {
        if statistic > m.min(n) {
            return Err(Error::OutOfDomain {
                what: "cross-match statistic exceeds min(m, n)",
                value: statistic as f64,
            });
        }
        let total = m + n;
        let (null_mean, null_var) = if total % 2 == 0 {
            null_moments(m, n)?
        } else {
            null_moments_ghost_augmented(m, n)?
        };
        Ok(CrossCountReport {
            statistic,
            kind: StatKind::CrossMatch,
            m,
            n,
            null_mean,
            null_var,
            p_value,
        })
    }

    /// Report for a Friedman-Rafsky statistic over the given tree.
    pub fn friedman_rafsky(
        tree: &SpanningTree,
        statistic: usize,
        m: usize,
        n: usize,
    ) -> Result<Self> {
        if statistic > tree.size() - 1 {
            return Err(Error::OutOfDomain {
                what: "friedman-rafsky statistic exceeds N - 1",
                value: statistic as f64,
            });
        }
        let (null_mean, null_var) = fr_null_moments(tree, m, n)?;
        Ok(CrossCountReport {
            statistic,
            kind: StatKind::FriedmanRafsky,
            m,
            n,
            null_mean,
            null_var,
            p_value: None,
        })
    }
}

fn label_of(labels: &[u8], v: usize, ghost: Option<usize>) -> u8 {
    match ghost {
        Some(g) if v > g => labels[v - 1],
        _ => labels[v],
    }
}

/// Number of matched pairs joining differently labeled points.
///
/// `labels` covers the real vertices only; any edge incident to the ghost
/// contributes nothing. Errors when the label vector does not match the
/// matched vertex set.
pub fn cross_match_statistic(
    matching: &Matching,
    labels: &[u8],
    ghost_index: Option<usize>,
) -> Result<usize> {
    let size = matching.size();
    let expected = size - usize::from(ghost_index.is_some());
    if labels.len() != expected {
        return Err(Error::LabelLengthMismatch {
            expected,
            got: labels.len(),
        });
    }
    if let Some(g) = ghost_index {
        if g >= size {
            return Err(Error::OutOfDomain {
                what: "ghost index",
                value: g as f64,
            });
        }
    }
    for (index, &value) in labels.iter().enumerate() {
        if value > 1 {
            return Err(Error::InvalidLabel { index, value });
        }
    }
    let mut count = 0;
    for &(i, j) in matching.edges() {
        if Some(i) == ghost_index || Some(j) == ghost_index {
            continue;
        }
        if label_of(labels, i, ghost_index) != label_of(labels, j, ghost_index) {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of tree edges joining differently labeled points.
pub fn fr_statistic(tree: &SpanningTree, labels: &[u8]) -> Result<usize> {
    if labels.len() != tree.size() {
        return Err(Error::LabelLengthMismatch {
            expected: tree.size(),
            got: labels.len(),
        });
    }
    for (index, &value) in labels.iter().enumerate() {
        if value > 1 {
            return Err(Error::InvalidLabel { index, value });
        }
    }
    Ok(tree
        .edges()
        .iter()
        .filter(|&&(i, j)| labels[i] != labels[j])
        .count())
}

// Moments of the bichromatic count over `edges` vertex-disjoint pairs plus
// `shared_ordered` ordered pairs of edges sharing one vertex, when m ones and
// n zeros are assigned uniformly at random to the N = m + n vertices.
fn bichromatic_moments(
    edges: usize,
    shared_ordered: usize,
    m: usize,
    n: usize,
) -> Result<(f64, f64)> {
    let total = m + n;
    let (mf, nf, totalf) = (m as f64, n as f64, total as f64);
    if edges == 0 {
        return Ok((0.0, 0.0));
    }
    // P(one fixed edge is bichromatic).
    let p = 2.0 * mf * nf / (totalf * (totalf - 1.0));
    let mean = edges as f64 * p;
    let mut second = edges as f64 * p; // diagonal terms
    if shared_ordered > 0 {
        // P(two edges sharing a vertex are both bichromatic).
        let r = mf * nf / (totalf * (totalf - 1.0));
        second += shared_ordered as f64 * r;
    }
    // Ordered pairs of distinct edges with four distinct endpoints.
    let disjoint_ordered = edges * (edges - 1) - shared_ordered;
    if disjoint_ordered > 0 {
        if total < 4 {
            return Err(Error::VarianceUndefined { n_total: total });
        }
        let q = 4.0 * mf * (mf - 1.0) * nf * (nf - 1.0)
            / (totalf * (totalf - 1.0) * (totalf - 2.0) * (totalf - 3.0));
        second += disjoint_ordered as f64 * q;
    }
    let var = (second - mean * mean).max(0.0);
    Ok((mean, var))
}

/// Closed-form mean and variance of the cross-match statistic under random
/// relabeling, for even N = m + n >= 4:
/// mean = mn/(N-1), variance = 2m(m-1)n(n-1)/((N-3)(N-1)^2).
pub fn null_moments(m: usize, n: usize) -> Result<(f64, f64)> {
    let total = m + n;
    if total % 2 != 0 {
        return Err(Error::OddVertexCount { size: total });
    }
    if total < 4 {
        return Err(Error::VarianceUndefined { n_total: total });
    }
    bichromatic_moments(total / 2, 0, m, n)
}

/// Null moments of the cross-match statistic when N = m + n is odd and the
/// matching was computed with a ghost point: (N-1)/2 real pairs count.
pub fn null_moments_ghost_augmented(m: usize, n: usize) -> Result<(f64, f64)> {
    let total = m + n;
    if total % 2 != 1 {
        return Err(Error::OutOfDomain {
            what: "ghost-augmented moments need odd N",
            value: total as f64,
        });
    }
    if total < 3 {
        return Err(Error::VarianceUndefined { n_total: total });
    }
    bichromatic_moments((total - 1) / 2, 0, m, n)
}

/// Exact permutation-null moments of the Friedman-Rafsky statistic over a
/// fixed tree. The variance depends on the tree through its degree sequence,
/// which is what makes the MST statistic dimension-sensitive.
pub fn fr_null_moments(tree: &SpanningTree, m: usize, n: usize) -> Result<(f64, f64)> {
    let total = tree.size();
    if m + n != total {
        return Err(Error::LabelLengthMismatch {
            expected: total,
            got: m + n,
        });
    }
    let shared_ordered: usize = tree.degrees().iter().map(|&d| d * (d - 1)).sum();
    bichromatic_moments(total - 1, shared_ordered, m, n)
}

/// Smallest accepted Monte Carlo sample for [`permutation_pvalue`].
pub const MIN_TRIALS: usize = 100;

/// Left-tail Monte Carlo p-value of the cross-match statistic.
///
/// Labels are permuted uniformly over the fixed optimal matching (the
/// exchangeability null the closed-form moments assume); the matching itself
/// depends only on the geometry and is computed once. Small A indicates
/// separated samples, hence the left tail. Uses the add-one correction
/// (r + 1) / (trials + 1).
pub fn permutation_pvalue(
    d: &DistanceMatrix,
    labels: &[u8],
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            trials,
            min: MIN_TRIALS,
        });
    }
    if labels.len() != d.real_size() {
        return Err(Error::LabelLengthMismatch {
            expected: d.real_size(),
            got: labels.len(),
        });
    }
    let m = labels.iter().filter(|&&y| y == 1).count();
    let n = labels.len() - m;
    if m == 0 || n == 0 {
        return Err(Error::DegenerateClass { m, n });
    }

    let work;
    let dref = if d.size() % 2 == 1 {
        work = add_ghost_point(d)?;
        &work
    } else {
        d
    };
    let matching = min_weight_perfect_matching(dref)?;
    let ghost = dref.ghost_index();
    let observed = cross_match_statistic(&matching, labels, ghost)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut permuted = labels.to_vec();
    let mut at_most = 0usize;
    for _ in 0..trials {
        permuted.shuffle(&mut rng);
        let a = cross_match_statistic(&matching, &permuted, ghost)?;
        if a <= observed {
            at_most += 1;
        }
    }
    Ok((at_most as f64 + 1.0) / (trials as f64 + 1.0))
}
