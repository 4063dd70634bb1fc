//! Labeled point clouds and their class bookkeeping.
//!
//! Convention used throughout the crate: `m` counts the points with label 1,
//! `n` counts the points with label 0, and `N = m + n`. The empirical priors
//! are `c1_hat = m/N` for class 1 and `c0_hat = n/N` for class 0.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// N points in R^d with binary class labels. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    points: Vec<f64>, // row-major, len() == n_points * dim
    dim: usize,
    labels: Vec<u8>,
}

/// Class sizes and empirical priors of a dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassCounts {
    /// Number of points with label 1.
    pub m: usize,
    /// Number of points with label 0.
    pub n: usize,
    /// Empirical prior of class 0, `n / N`.
    pub c0_hat: f64,
    /// Empirical prior of class 1, `m / N`.
    pub c1_hat: f64,
}

impl LabeledDataset {
    /// Builds a dataset from a row-major point buffer and a label vector.
    ///
    /// Rejects empty data, zero dimension, buffer/label shape mismatches,
    /// non-finite coordinates, and labels outside {0, 1}. A single-class
    /// dataset is accepted here; two-sample operations reject it later.
    pub fn new(points: Vec<f64>, dim: usize, labels: Vec<u8>) -> Result<Self> {
        if labels.is_empty() || dim == 0 {
            return Err(Error::EmptyDataset);
        }
        let expected = labels.len() * dim;
        if points.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                got: points.len(),
            });
        }
        for (idx, &x) in points.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteCoordinate {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
        }
        for (index, &value) in labels.iter().enumerate() {
            if value > 1 {
                return Err(Error::InvalidLabel { index, value });
            }
        }
        Ok(Self {
            points,
            dim,
            labels,
        })
    }

    /// Number of points N.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Feature dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The i-th point as a coordinate slice.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Row-major coordinate buffer.
    pub fn points_flat(&self) -> &[f64] {
        &self.points
    }

    /// Class sizes m (label 1) and n (label 0) with empirical priors.
    pub fn class_counts(&self) -> ClassCounts {
        let m = self.labels.iter().filter(|&&y| y == 1).count();
        let n = self.labels.len() - m;
        let total = self.labels.len() as f64;
        ClassCounts {
            m,
            n,
            c0_hat: n as f64 / total,
            c1_hat: m as f64 / total,
        }
    }

    /// Errors unless both classes are nonempty.
    pub fn require_two_classes(&self) -> Result<ClassCounts> {
        let counts = self.class_counts();
        if counts.m == 0 || counts.n == 0 {
            return Err(Error::DegenerateClass {
                m: counts.m,
                n: counts.n,
            });
        }
        Ok(counts)
    }

    /// Returns a copy with every column standardized to zero mean and unit
    /// (population) standard deviation. Constant columns become all zeros.
    ///
    /// Euclidean distances are scale-sensitive, so this is offered as an
    /// explicit opt-in; nothing in the crate normalizes implicitly.
    pub fn zscored(&self) -> LabeledDataset {
        let rows = self.len();
        let d = self.dim;
        let mut means = alloc::vec![0.0f64; d];
        for i in 0..rows {
            for (j, mean) in means.iter_mut().enumerate() {
                *mean += self.points[i * d + j];
            }
        }
        for mean in means.iter_mut() {
            *mean /= rows as f64;
        }
        let mut sds = alloc::vec![0.0f64; d];
        for i in 0..rows {
            for (j, sd) in sds.iter_mut().enumerate() {
                let diff = self.points[i * d + j] - means[j];
                *sd += diff * diff;
            }
        }
        for sd in sds.iter_mut() {
            *sd = libm::sqrt(*sd / rows as f64);
        }
        let mut points = Vec::with_capacity(self.points.len());
        for i in 0..rows {
            for j in 0..d {
                let x = self.points[i * d + j];
                points.push(if sds[j] > 0.0 {
                    (x - means[j]) / sds[j]
                } else {
                    0.0
                });
            }
        }
        LabeledDataset {
            points,
            dim: d,
            labels: self.labels.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn counts_three_rows() {
        let ds = LabeledDataset::new(vec![0.0, 1.0, 2.0], 1, vec![0, 1, 0]).unwrap();
        let c = ds.class_counts();
        assert_eq!((c.m, c.n), (1, 2));
        assert_eq!(ds.len(), 3);
        assert!((c.c0_hat - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.c0_hat + c.c1_hat - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_ones_has_empty_class_zero() {
        let ds = LabeledDataset::new(vec![0.0, 1.0], 1, vec![1, 1]).unwrap();
        let c = ds.class_counts();
        assert_eq!((c.m, c.n), (2, 0));
        assert!(matches!(
            ds.require_two_classes(),
            Err(Error::DegenerateClass { m: 2, n: 0 })
        ));
    }

    #[test]
    fn rejects_nan_and_bad_labels() {
        assert!(matches!(
            LabeledDataset::new(vec![0.0, f64::NAN], 1, vec![0, 1]),
            Err(Error::NonFiniteCoordinate { row: 1, col: 0 })
        ));
        assert!(matches!(
            LabeledDataset::new(vec![0.0, 1.0], 1, vec![0, 2]),
            Err(Error::InvalidLabel { index: 1, value: 2 })
        ));
        assert!(matches!(
            LabeledDataset::new(vec![], 1, vec![]),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            LabeledDataset::new(vec![1.0, 2.0, 3.0], 2, vec![0, 1]),
            Err(Error::ShapeMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn class_counts_permutation_invariant() {
        let points = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let labels = vec![0, 1, 1, 0, 1];
        let ds = LabeledDataset::new(points.clone(), 1, labels.clone()).unwrap();
        let base = ds.class_counts();
        // Reverse is a permutation of the rows.
        let rev_points: Vec<f64> = points.iter().rev().copied().collect();
        let rev_labels: Vec<u8> = labels.iter().rev().copied().collect();
        let rev = LabeledDataset::new(rev_points, 1, rev_labels).unwrap();
        assert_eq!(base, rev.class_counts());
    }

    #[test]
    fn zscore_centers_and_scales() {
        let ds = LabeledDataset::new(vec![1.0, 5.0, 2.0, 5.0, 3.0, 5.0], 2, vec![0, 1, 0]).unwrap();
        let z = ds.zscored();
        // First column: mean 2, population sd sqrt(2/3).
        let sd = (2.0f64 / 3.0).sqrt();
        assert!((z.point(0)[0] - (1.0 - 2.0) / sd).abs() < 1e-12);
        // Constant column becomes zeros.
        assert_eq!(z.point(0)[1], 0.0);
        assert_eq!(z.point(2)[1], 0.0);
        assert_eq!(z.labels(), ds.labels());
    }
}
