//! Exact minimum-weight perfect matching on the dense distance matrix.
//!
//! The solver is an O(N^3) primal-dual blossom implementation (see
//! [`crate::blossom`]); [`brute_force_matching`] enumerates all (N-1)!!
//! perfect matchings and exists as an independent oracle for tests.

use alloc::vec::Vec;

use crate::blossom;
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// Largest vertex count accepted by [`brute_force_matching`]; 13!! = 135135
/// matchings keeps exhaustive enumeration instant.
pub const BRUTE_FORCE_MAX: usize = 14;

/// A perfect matching: size/2 disjoint edges covering every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    edges: Vec<(usize, usize)>, // each (i, j) with i < j, sorted ascending
    total_weight: f64,
}

impl Matching {
    /// Validates an edge list as a perfect matching over `d` and computes its
    /// total weight.
    pub fn from_edges(mut edges: Vec<(usize, usize)>, d: &DistanceMatrix) -> Result<Self> {
        let size = d.size();
        if edges.len() * 2 != size {
            return Err(Error::NotPerfectMatching {
                reason: "edge count is not size/2",
            });
        }
        let mut seen = alloc::vec![false; size];
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            let (i, j) = *e;
            if i == j || j >= size {
                return Err(Error::NotPerfectMatching {
                    reason: "edge endpoint out of range or self-loop",
                });
            }
            if seen[i] || seen[j] {
                return Err(Error::NotPerfectMatching {
                    reason: "vertex covered twice",
                });
            }
            seen[i] = true;
            seen[j] = true;
        }
        edges.sort_unstable();
        let total_weight = edges.iter().map(|&(i, j)| d.weight(i, j)).sum();
        Ok(Matching {
            edges,
            total_weight,
        })
    }

    /// Edges as (i, j) pairs with i < j, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Number of vertices covered (always even).
    pub fn size(&self) -> usize {
        2 * self.edges.len()
    }

    /// Partner of vertex v.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }
}

fn check_even(d: &DistanceMatrix) -> Result<()> {
    let size = d.size();
    if size < 2 {
        return Err(Error::TooFewVertices { size, min: 2 });
    }
    if size % 2 != 0 {
        return Err(Error::OddVertexCount { size });
    }
    Ok(())
}

/// Globally optimal minimum-weight perfect matching via the blossom solver.
///
/// Requires an even vertex count (ghost-augment odd inputs first). The output
/// is deterministic for a given matrix: vertices and edges are scanned in a
/// fixed order, so reruns produce the same matching.
pub fn min_weight_perfect_matching(d: &DistanceMatrix) -> Result<Matching> {
    check_even(d)?;
    let mate = blossom::Solver::new(d).solve();
    let mut edges = Vec::with_capacity(d.size() / 2);
    for (v, &w) in mate.iter().enumerate() {
        if w == blossom::UNMATCHED {
            return Err(Error::NotPerfectMatching {
                reason: "solver left a vertex unmatched",
            });
        }
        if v < w {
            edges.push((v, w));
        }
    }
    Matching::from_edges(edges, d)
}

/// Exhaustive minimum over all perfect matchings, for testing.
///
/// Equal-weight optima (within 1e-12 of the maximum weight scale) are broken
/// by preferring the lexicographically smallest sorted edge list.
pub fn brute_force_matching(d: &DistanceMatrix) -> Result<Matching> {
    check_even(d)?;
    let size = d.size();
    if size > BRUTE_FORCE_MAX {
        return Err(Error::BruteForceTooLarge {
            size,
            max: BRUTE_FORCE_MAX,
        });
    }
    let tie_tol = 1e-12 * d.max_weight().max(1.0);

    struct Search<'a> {
        d: &'a DistanceMatrix,
        used: u16,
        current: Vec<(usize, usize)>,
        best: Option<(f64, Vec<(usize, usize)>)>,
        tie_tol: f64,
    }
    impl Search<'_> {
        fn recurse(&mut self, weight: f64) {
            let size = self.d.size();
            let Some(i) = (0..size).find(|&v| self.used & (1 << v) == 0) else {
                match &self.best {
                    Some((bw, bedges))
                        if weight > bw - self.tie_tol
                            && ((weight - bw).abs() > self.tie_tol
                                || self.current >= *bedges) => {}
                    _ => self.best = Some((weight, self.current.clone())),
                }
                return;
            };
            self.used |= 1 << i;
            for j in (i + 1)..size {
                if self.used & (1 << j) != 0 {
                    continue;
                }
                self.used |= 1 << j;
                self.current.push((i, j));
                self.recurse(weight + self.d.weight(i, j));
                self.current.pop();
                self.used &= !(1 << j);
            }
            self.used &= !(1 << i);
        }
    }

    let mut search = Search {
        d,
        used: 0,
        current: Vec::with_capacity(size / 2),
        best: None,
        tie_tol,
    };
    search.recurse(0.0);
    let (_, edges) = search.best.expect("even nonempty graph has a matching");
    Matching::from_edges(edges, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::LabeledDataset;
    use crate::metric::{add_ghost_point, pairwise_distances};
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut impl Rng, size: usize) -> DistanceMatrix {
        let mut w = vec![0.0f64; size * size];
        for i in 0..size {
            for j in (i + 1)..size {
                let v = rng.gen_range(0.0..1.0);
                w[i * size + j] = v;
                w[j * size + i] = v;
            }
        }
        DistanceMatrix::from_weights(size, w).unwrap()
    }

    #[test]
    fn single_edge() {
        let d = DistanceMatrix::from_weights(2, vec![0., 5., 5., 0.]).unwrap();
        let m = min_weight_perfect_matching(&d).unwrap();
        assert_eq!(m.edges(), &[(0, 1)]);
        assert_eq!(m.total_weight(), 5.0);
        let b = brute_force_matching(&d).unwrap();
        assert_eq!(b.edges(), m.edges());
        assert_eq!(b.total_weight(), 5.0);
    }

    #[test]
    fn four_collinear_points() {
        // Points at 0,1,2,3: {(0,1),(2,3)} weighs 2; the alternatives
        // {(0,2),(1,3)} and {(0,3),(1,2)} weigh 4 and 4.
        let ds = LabeledDataset::new(vec![0., 1., 2., 3.], 1, vec![0; 4]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        let m = min_weight_perfect_matching(&d).unwrap();
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
        assert!((m.total_weight() - 2.0).abs() < 1e-12);
        let b = brute_force_matching(&d).unwrap();
        assert_eq!(b.edges(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn ghost_absorbs_the_outlier() {
        // Points at 0,1,5 plus a ghost: {(0,1),(2,ghost)} weighs 1; the
        // alternatives weigh 5 and 4.
        let ds = LabeledDataset::new(vec![0., 1., 5.], 1, vec![0; 3]).unwrap();
        let d = add_ghost_point(&pairwise_distances(&ds).unwrap()).unwrap();
        let m = min_weight_perfect_matching(&d).unwrap();
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
        assert!((m.total_weight() - 1.0).abs() < 1e-12);
        assert_eq!(brute_force_matching(&d).unwrap().edges(), m.edges());
    }

    #[test]
    fn unit_square_prefers_parallel_sides() {
        // Corners (0,0),(1,0),(1,1),(0,1): two side-pairings tie at weight 2,
        // the diagonal pairing weighs 2*sqrt(2). The oracle's lexicographic
        // rule picks {(0,1),(2,3)}.
        let ds = LabeledDataset::new(vec![0., 0., 1., 0., 1., 1., 0., 1.], 2, vec![0; 4]).unwrap();
        let d = pairwise_distances(&ds).unwrap();
        let b = brute_force_matching(&d).unwrap();
        assert_eq!(b.edges(), &[(0, 1), (2, 3)]);
        assert!((b.total_weight() - 2.0).abs() < 1e-12);
        let m = min_weight_perfect_matching(&d).unwrap();
        assert!((m.total_weight() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_odd_small_and_oversized() {
        let d3 = DistanceMatrix::from_weights(3, vec![0., 1., 2., 1., 0., 3., 2., 3., 0.]).unwrap();
        assert!(matches!(
            min_weight_perfect_matching(&d3),
            Err(Error::OddVertexCount { size: 3 })
        ));
        assert!(matches!(
            brute_force_matching(&d3),
            Err(Error::OddVertexCount { size: 3 })
        ));
        let d0 = DistanceMatrix::from_weights(0, vec![]).unwrap();
        assert!(matches!(
            min_weight_perfect_matching(&d0),
            Err(Error::TooFewVertices { .. })
        ));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let d16 = random_matrix(&mut rng, 16);
        assert!(matches!(
            brute_force_matching(&d16),
            Err(Error::BruteForceTooLarge { size: 16, max: 14 })
        ));
    }

    #[test]
    fn agrees_with_oracle_on_random_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for trial in 0..200 {
            let size = 2 * rng.gen_range(1..=6);
            let d = random_matrix(&mut rng, size);
            let m = min_weight_perfect_matching(&d).unwrap();
            let b = brute_force_matching(&d).unwrap();
            let scale = b.total_weight().max(1.0);
            assert!(
                (m.total_weight() - b.total_weight()).abs() <= 1e-9 * scale,
                "trial {trial} size {size}: solver {} oracle {}",
                m.total_weight(),
                b.total_weight()
            );
        }
    }

    #[test]
    fn agrees_with_oracle_on_degenerate_ties() {
        // Many duplicated points produce massive weight ties, which stresses
        // the blossom bookkeeping.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
        for trial in 0..200 {
            let size = 2 * rng.gen_range(1..=6);
            let mut w = vec![0.0f64; size * size];
            for i in 0..size {
                for j in (i + 1)..size {
                    // Quantized weights from a tiny alphabet.
                    let v = rng.gen_range(0..3) as f64 * 0.5;
                    w[i * size + j] = v;
                    w[j * size + i] = v;
                }
            }
            let d = DistanceMatrix::from_weights(size, w).unwrap();
            let m = min_weight_perfect_matching(&d).unwrap();
            let b = brute_force_matching(&d).unwrap();
            assert!(
                (m.total_weight() - b.total_weight()).abs() <= 1e-9,
                "trial {trial}: solver {} oracle {}",
                m.total_weight(),
                b.total_weight()
            );
        }
    }

    #[test]
    fn twelve_point_instances_match_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..20 {
            let d = random_matrix(&mut rng, 12);
            let m = min_weight_perfect_matching(&d).unwrap();
            let b = brute_force_matching(&d).unwrap();
            assert!((m.total_weight() - b.total_weight()).abs() <= 1e-9);
            // Unique optimum almost surely: edge sets agree too.
            assert_eq!(m.edges(), b.edges());
        }
    }

    #[test]
    fn deterministic_across_reruns() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let d = random_matrix(&mut rng, 10);
        let a = min_weight_perfect_matching(&d).unwrap();
        let b = min_weight_perfect_matching(&d).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scaling_preserves_edges_and_scales_weight() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let size = 10;
        let d = random_matrix(&mut rng, size);
        let m = min_weight_perfect_matching(&d).unwrap();
        let lambda = 3.75;
        let scaled: Vec<f64> = (0..size * size)
            .map(|idx| d.weight(idx / size, idx % size) * lambda)
            .collect();
        let ds = DistanceMatrix::from_weights(size, scaled).unwrap();
        let ms = min_weight_perfect_matching(&ds).unwrap();
        assert_eq!(m.edges(), ms.edges());
        assert!((ms.total_weight() - lambda * m.total_weight()).abs() <= 1e-9 * lambda);
    }

    #[test]
    fn vertex_permutation_maps_the_edge_set() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let size = 8;
        let d = random_matrix(&mut rng, size);
        let m = min_weight_perfect_matching(&d).unwrap();
        // Apply a fixed permutation sigma, solve, and map back.
        let sigma = [3usize, 7, 1, 0, 6, 2, 5, 4];
        let mut w = vec![0.0f64; size * size];
        for i in 0..size {
            for j in 0..size {
                w[sigma[i] * size + sigma[j]] = d.weight(i, j);
            }
        }
        let dp = DistanceMatrix::from_weights(size, w).unwrap();
        let mp = min_weight_perfect_matching(&dp).unwrap();
        let mut inverse = [0usize; 8];
        for (i, &s) in sigma.iter().enumerate() {
            inverse[s] = i;
        }
        let mut mapped: Vec<(usize, usize)> = mp
            .edges()
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (inverse[i], inverse[j]);
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort_unstable();
        assert_eq!(mapped.as_slice(), m.edges());
    }

    #[test]
    fn from_edges_rejects_broken_matchings() {
        let d = DistanceMatrix::from_weights(4, {
            let mut w = vec![0.0; 16];
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        w[i * 4 + j] = 1.0;
                    }
                }
            }
            w
        })
        .unwrap();
        assert!(Matching::from_edges(vec![(0, 1)], &d).is_err());
        assert!(Matching::from_edges(vec![(0, 1), (1, 2)], &d).is_err());
        assert!(Matching::from_edges(vec![(0, 1), (2, 2)], &d).is_err());
        assert!(Matching::from_edges(vec![(0, 1), (2, 4)], &d).is_err());
        let ok = Matching::from_edges(vec![(3, 2), (0, 1)], &d).unwrap();
        assert_eq!(ok.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(ok.partner(2), Some(3));
        assert_eq!(ok.partner(5), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Perfectness plus oracle weight equality over random instances.
        #[test]
        fn solver_output_is_optimal_perfect_matching(
            seed in 0u64..1_000_000,
            half in 1usize..=6,
        ) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let size = 2 * half;
            let d = random_matrix(&mut rng, size);
            let m = min_weight_perfect_matching(&d).unwrap();
            prop_assert_eq!(m.size(), size);
            let mut covered = vec![false; size];
            for &(i, j) in m.edges() {
                prop_assert!(!covered[i] && !covered[j]);
                covered[i] = true;
                covered[j] = true;
            }
            prop_assert!(covered.into_iter().all(|c| c));
            let recomputed: f64 = m.edges().iter().map(|&(i, j)| d.weight(i, j)).sum();
            prop_assert!((recomputed - m.total_weight()).abs() <= 1e-9 * recomputed.max(1.0));
            let b = brute_force_matching(&d).unwrap();
            prop_assert!((m.total_weight() - b.total_weight()).abs() <= 1e-9 * b.total_weight().max(1.0));
        }
    }
}
