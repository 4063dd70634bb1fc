//! Dense Euclidean distance matrices and the ghost-point augmentation.
//!
//! Perfect matching needs an even vertex count. For odd N the standard fix
//! is a ghost vertex at distance zero from everything; the matching then
//! pairs exactly one real point with the ghost for free, and statistics
//! ignore that edge. At most one ghost ever exists.

use alloc::vec::Vec;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Symmetric nonnegative weight matrix over a vertex set, optionally carrying
/// one ghost vertex whose row and column are all zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    weights: Vec<f64>, // row-major size x size
    ghost_index: Option<usize>,
}

impl DistanceMatrix {
    /// Validates and wraps an explicit weight matrix (no ghost).
    ///
    /// Requires a square, symmetric, finite, nonnegative matrix with a zero
    /// diagonal. Mostly useful for tests and non-Euclidean experiments; the
    /// usual entry point is [`pairwise_distances`].
    pub fn from_weights(size: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != size * size {
            return Err(Error::ShapeMismatch {
                expected: size * size,
                got: weights.len(),
            });
        }
        for i in 0..size {
            if weights[i * size + i] != 0.0 {
                return Err(Error::InvalidWeights {
                    reason: "nonzero diagonal",
                });
            }
            for j in (i + 1)..size {
                let w = weights[i * size + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidWeights {
                        reason: "negative or non-finite entry",
                    });
                }
                if w != weights[j * size + i] {
                    return Err(Error::InvalidWeights {
                        reason: "not symmetric",
                    });
                }
            }
        }
        Ok(Self {
            size,
            weights,
            ghost_index: None,
        })
    }

    /// Vertex count, including the ghost when present.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ghost_index(&self) -> Option<usize> {
        self.ghost_index
    }

    /// Number of real (non-ghost) vertices.
    pub fn real_size(&self) -> usize {
        self.size - usize::from(self.ghost_index.is_some())
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.size + j]
    }

    /// Largest edge weight, 0 for matrices smaller than 2x2.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().fold(0.0f64, |acc, &w| acc.max(w))
    }
}

/// Builds the N x N matrix of Euclidean distances between dataset rows.
pub fn pairwise_distances(ds: &LabeledDataset) -> Result<DistanceMatrix> {
    let n = ds.len();
    if n < 2 {
        return Err(Error::TooFewVertices { size: n, min: 2 });
    }
    let mut weights = alloc::vec![0.0f64; n * n];
    for i in 0..n {
        let pi = ds.point(i);
        for j in (i + 1)..n {
            let pj = ds.point(j);
            let mut sq = 0.0;
            for (a, b) in pi.iter().zip(pj.iter()) {
                let diff = a - b;
                sq += diff * diff;
            }
            let dist = libm::sqrt(sq);
            weights[i * n + j] = dist;
            weights[j * n + i] = dist;
        }
    }
    Ok(DistanceMatrix {
        size: n,
        weights,
        ghost_index: None,
    })
}

/// Appends a ghost vertex at distance zero from every existing vertex.
///
/// The new vertex gets the old size as its index; all pre-existing entries
/// are untouched. Errors if a ghost is already present.
pub fn add_ghost_point(d: &DistanceMatrix) -> Result<DistanceMatrix> {
    if d.ghost_index.is_some() {
        return Err(Error::GhostAlreadyPresent);
    }
    let old = d.size;
    let new = old + 1;
    let mut weights = alloc::vec![0.0f64; new * new];
    for i in 0..old {
        weights[i * new..i * new + old].copy_from_slice(&d.weights[i * old..(i + 1) * old]);
    }
    Ok(DistanceMatrix {
        size: new,
        weights,
        ghost_index: Some(old),
    })
}

/// Adds a ghost exactly when the vertex count is odd, so the result always
/// has even size. Returns the matrix unchanged when it is already even.
pub fn augment_if_odd(d: DistanceMatrix) -> Result<DistanceMatrix> {
    if d.size % 2 == 0 {
        Ok(d)
    } else {
        add_ghost_point(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};

    #[test]
    fn two_points_on_a_line() {
        let ds = LabeledDataset::new(vec![0.0, 3.0], 1, vec![0, 1]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        assert_eq!(d.weight(0, 1), 3.0);
        assert_eq!(d.weight(1, 0), 3.0);
        assert_eq!(d.weight(0, 0), 0.0);
    }

    #[test]
    fn three_four_five_triangle() {
        let ds = LabeledDataset::new(vec![0.0, 0.0, 3.0, 4.0], 2, vec![0, 1]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        assert_eq!(d.weight(0, 1), 5.0);
    }

    // Independent recomputation with an explicit double loop over coordinates.
    #[test]
    fn matches_direct_recomputation_in_r3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<f64> = (0..30).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let ds = LabeledDataset::new(pts.clone(), 3, vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let mut sq = 0.0;
                for k in 0..3 {
                    let diff = pts[i * 3 + k] - pts[j * 3 + k];
                    sq += diff * diff;
                }
                assert!((d.weight(i, j) - sq.sqrt()).abs() <= 1e-12);
                assert_eq!(d.weight(i, j), d.weight(j, i));
            }
        }
    }

    #[test]
    fn triangle_inequality_spot_check() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<f64> = (0..24).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ds = LabeledDataset::new(pts, 4, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    assert!(d.weight(i, j) <= d.weight(i, k) + d.weight(k, j) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn ghost_appends_zero_row_and_col() {
        let d = DistanceMatrix::from_weights(3, vec![0., 1., 2., 1., 0., 3., 2., 3., 0.]).unwrap();
        let g = add_ghost_point(&d).unwrap();
        assert_eq!(g.size(), 4);
        assert_eq!(g.ghost_index(), Some(3));
        assert_eq!(g.real_size(), 3);
        for i in 0..4 {
            assert_eq!(g.weight(i, 3), 0.0);
            assert_eq!(g.weight(3, i), 0.0);
        }
        // Original entries unchanged.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.weight(i, j), d.weight(i, j));
            }
        }
    }

    #[test]
    fn second_ghost_rejected() {
        let d = DistanceMatrix::from_weights(2, vec![0., 5., 5., 0.]).unwrap();
        let g = add_ghost_point(&d).unwrap();
        assert_eq!(add_ghost_point(&g), Err(Error::GhostAlreadyPresent));
    }

    #[test]
    fn augment_only_when_odd() {
        let even = DistanceMatrix::from_weights(2, vec![0., 5., 5., 0.]).unwrap();
        let still = augment_if_odd(even.clone()).unwrap();
        assert_eq!(still, even);
        let odd = DistanceMatrix::from_weights(3, vec![0., 1., 2., 1., 0., 3., 2., 3., 0.]).unwrap();
        let aug = augment_if_odd(odd).unwrap();
        assert_eq!(aug.size(), 4);
        assert_eq!(aug.ghost_index(), Some(3));
    }

    #[test]
    fn from_weights_validation() {
        assert!(matches!(
            DistanceMatrix::from_weights(2, vec![0., 1., 2., 0.]),
            Err(Error::InvalidWeights {
                reason: "not symmetric"
            })
        ));
        assert!(matches!(
            DistanceMatrix::from_weights(2, vec![0., -1., -1., 0.]),
            Err(Error::InvalidWeights { .. })
        ));
        assert!(matches!(
            DistanceMatrix::from_weights(1, vec![7.0]),
            Err(Error::InvalidWeights { .. })
        ));
    }
}
