//! Minimal spanning tree on the dense distance matrix, used by the
//! Friedman-Rafsky statistic.
//!
//! A dense Prim scan is O(N^2) time and O(N) extra space, which matches the
//! complete-graph representation; no priority queue is needed. Ghost-augmented
//! matrices are refused: the MST statistic operates on the raw sample.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// A spanning tree: N-1 undirected edges covering all N vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    size: usize,
    edges: Vec<(usize, usize)>, // each (i, j) with i < j, list sorted
    total_weight: f64,
}

impl SpanningTree {
    /// Vertex count N.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Edges as (i, j) pairs with i < j, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Vertex degrees; used by the permutation-null moments of the
    /// Friedman-Rafsky statistic.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.size];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }
}

/// Dense Prim construction of the minimum spanning tree.
///
/// Ties among candidate edges of equal weight are broken toward the smallest
/// candidate vertex index, which makes the output deterministic.
pub fn minimum_spanning_tree(d: &DistanceMatrix) -> Result<SpanningTree> {
    if d.ghost_index().is_some() {
        return Err(Error::GhostPresent);
    }
    let n = d.size();
    if n < 2 {
        return Err(Error::TooFewVertices { size: n, min: 2 });
    }

    let mut in_tree = alloc::vec![false; n];
    let mut best_cost = alloc::vec![f64::INFINITY; n];
    let mut best_from = alloc::vec![0usize; n];
    in_tree[0] = true;
    for v in 1..n {
        best_cost[v] = d.weight(0, v);
    }

    let mut edges = Vec::with_capacity(n - 1);
    let mut total_weight = 0.0;
    for _ in 1..n {
        // Smallest frontier cost; strict < keeps the lowest index on ties.
        let mut pick = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (pick == usize::MAX || best_cost[v] < best_cost[pick]) {
                pick = v;
            }
        }
        let u = best_from[pick];
        edges.push((u.min(pick), u.max(pick)));
        total_weight += best_cost[pick];
        in_tree[pick] = true;
        for v in 0..n {
            if !in_tree[v] && d.weight(pick, v) < best_cost[v] {
                best_cost[v] = d.weight(pick, v);
                best_from[v] = pick;
            }
        }
    }
    edges.sort_unstable();
    Ok(SpanningTree {
        size: n,
        edges,
        total_weight,
    })
}
