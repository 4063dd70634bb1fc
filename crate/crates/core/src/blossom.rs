//! Primal-dual blossom solver for minimum-weight perfect matching on a dense
//! complete graph.
//!
//! This follows Galil's formulation of Edmonds' blossom algorithm in the
//! variant popularized by Joris van Rantwijk's reference implementation,
//! specialized in two ways: the graph is always complete (neighbour lists are
//! implicit), and maximum-cardinality mode is hardwired because the caller
//! wants a perfect matching. Minimization is obtained by maximizing the
//! transformed weights `max_w - w`, which is rank-equivalent on perfect
//! matchings.
//!
//! Vertex duals are stored doubled (dualvar[v] = 2u(v)) so every slack is a
//! plain sum; with float weights all tightness tests use a slack tolerance
//! proportional to the largest weight.

use alloc::vec::Vec;

use crate::metric::DistanceMatrix;

const SENTINEL: usize = usize::MAX;

struct Edge {
    i: u32,
    j: u32,
    weight: f64, // transformed: max_w - original
}

pub(crate) struct Solver {
    nvertex: usize,
    edges: Vec<Edge>,
    tol: f64,
    mate: Vec<usize>, // by remote endpoint
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<f64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

#[inline]
fn edge_id(v: usize, w: usize) -> usize {
    let (lo, hi) = if v < w { (v, w) } else { (w, v) };
    hi * (hi - 1) / 2 + lo
}

/// Python-style index with negative wrap-around.
#[inline]
fn wrap(v: &[usize], index: i64) -> usize {
    let len = v.len() as i64;
    v[index.rem_euclid(len) as usize]
}

impl Solver {
    pub(crate) fn new(d: &DistanceMatrix) -> Self {
        let nvertex = d.size();
        let max_w = d.max_weight();
        let nedge = nvertex * (nvertex - 1) / 2;
        let mut edges = Vec::with_capacity(nedge);
        let mut maxweight = 0.0f64;
        for j in 1..nvertex {
            for i in 0..j {
                let weight = max_w - d.weight(i, j);
                maxweight = maxweight.max(weight);
                edges.push(Edge {
                    i: i as u32,
                    j: j as u32,
                    weight,
                });
            }
        }
        let mut dualvar = alloc::vec![maxweight; nvertex];
        dualvar.extend(core::iter::repeat(0.0).take(nvertex));
        Solver {
            nvertex,
            edges,
            tol: 1e-9 * max_w,
            mate: alloc::vec![SENTINEL; nvertex],
            label: alloc::vec![0; 2 * nvertex],
            labelend: alloc::vec![SENTINEL; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: alloc::vec![SENTINEL; 2 * nvertex],
            blossomchilds: alloc::vec![Vec::new(); 2 * nvertex],
            blossombase: (0..nvertex)
                .chain(core::iter::repeat(SENTINEL).take(nvertex))
                .collect(),
            blossomendps: alloc::vec![Vec::new(); 2 * nvertex],
            bestedge: alloc::vec![SENTINEL; 2 * nvertex],
            blossombestedges: alloc::vec![Vec::new(); 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: alloc::vec![false; nedge],
            queue: Vec::new(),
        }
    }

    #[inline]
    fn endpoint(&self, p: usize) -> usize {
        let e = &self.edges[p / 2];
        if p & 1 == 0 {
            e.i as usize
        } else {
            e.j as usize
        }
    }

    // Doubled slack of edge k; not meaningful for intra-blossom edges.
    #[inline]
    fn slack(&self, k: usize) -> f64 {
        let e = &self.edges[k];
        self.dualvar[e.i as usize] + self.dualvar[e.j as usize] - 2.0 * e.weight
    }

    // Leaf vertices of blossom b, in blossom-structure order.
    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        let mut stack = alloc::vec![b];
        while let Some(t) = stack.pop() {
            if t < self.nvertex {
                leaves.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev().copied());
            }
        }
        leaves
    }

    /// Label the top-level blossom of w with t, reached through the edge with
    /// remote endpoint p.
    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        if t == 1 {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else {
            // T-label: the base's mate becomes an S-vertex.
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != SENTINEL);
            let mbase = self.mate[base];
            let ep = self.endpoint(mbase);
            self.assign_label(ep, 1, mbase ^ 1);
        }
    }

    /// Trace back from the S-S edge (v, w); returns the base vertex of a new
    /// blossom, or SENTINEL when an augmenting path was found instead.
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = SENTINEL;
        let mut v = v;
        let mut w = w;
        while v != SENTINEL || w != SENTINEL {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == SENTINEL {
                v = SENTINEL; // base of b is exposed
            } else {
                v = self.endpoint(self.labelend[b]);
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], 2);
                debug_assert!(self.labelend[b] != SENTINEL);
                v = self.endpoint(self.labelend[b]);
            }
            if w != SENTINEL {
                core::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Shrink the odd cycle through edge k and base into a new S-blossom.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let mut v = self.edges[k].i as usize;
        let mut w = self.edges[k].j as usize;
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];

        let b = self.unusedblossoms.pop().expect("free blossom slot");
        self.blossombase[b] = base;
        self.blossomparent[b] = SENTINEL;
        self.blossomparent[bb] = b;

        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            debug_assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            debug_assert!(self.labelend[bv] != SENTINEL);
            v = self.endpoint(self.labelend[bv]);
            bv = self.inblossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            childs.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            debug_assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            debug_assert!(self.labelend[bw] != SENTINEL);
            w = self.endpoint(self.labelend[bw]);
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;

        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0.0;

        for v in self.blossom_leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                // Former T-vertex turns S; it still has to be scanned.
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        // Recompute least-slack edges to neighbouring S-blossoms.
        let mut bestedgeto = alloc::vec![SENTINEL; 2 * self.nvertex];
        for ci in 0..self.blossomchilds[b].len() {
            let bv = self.blossomchilds[b][ci];
            if self.blossombestedges[bv].is_empty() {
                // No cached list: consider every edge of every leaf.
                for v in self.blossom_leaves(bv) {
                    for u in 0..self.nvertex {
                        if u == v {
                            continue;
                        }
                        let k = edge_id(v, u);
                        let j = if self.inblossom[u] == b { v } else { u };
                        let bj = self.inblossom[j];
                        if bj != b
                            && self.label[bj] == 1
                            && (bestedgeto[bj] == SENTINEL
                                || self.slack(k) < self.slack(bestedgeto[bj]))
                        {
                            bestedgeto[bj] = k;
                        }
                    }
                }
            } else {
                let cached = core::mem::take(&mut self.blossombestedges[bv]);
                for &k in &cached {
                    let mut i = self.edges[k].i as usize;
                    let mut j = self.edges[k].j as usize;
                    if self.inblossom[j] == b {
                        core::mem::swap(&mut i, &mut j);
                    }
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == SENTINEL
                            || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv] = Vec::new();
            self.bestedge[bv] = SENTINEL;
        }
        self.blossombestedges[b] = bestedgeto.into_iter().filter(|&k| k != SENTINEL).collect();
        self.bestedge[b] = SENTINEL;
        for idx in 0..self.blossombestedges[b].len() {
            let k = self.blossombestedges[b][idx];
            if self.bestedge[b] == SENTINEL || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Undo a blossom, restoring its children to top level. During a stage
    /// (endstage == false) the sub-blossoms of a T-blossom are relabeled.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = SENTINEL;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] <= self.tol {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }

        if !endstage && self.label[b] == 2 {
            debug_assert!(self.labelend[b] != SENTINEL);
            let entrychild = self.inblossom[self.endpoint(self.labelend[b] ^ 1)];
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child in blossom") as i64;
            let jstep: i64;
            let endptrick: usize;
            if j & 1 != 0 {
                j -= self.blossomchilds[b].len() as i64;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            let mut p = self.labelend[b];
            while j != 0 {
                // Relabel the T-sub-blossom.
                let ep1 = self.endpoint(p ^ 1);
                self.label[ep1] = 0;
                let q = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick ^ 1;
                let eq = self.endpoint(q);
                self.label[eq] = 0;
                self.assign_label(ep1, 2, p);
                // Step past the S-sub-blossom.
                self.allowedge[wrap(&self.blossomendps[b], j - endptrick as i64) / 2] = true;
                j += jstep;
                p = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // The base keeps label T but is not traced through.
            let bv = wrap(&self.blossomchilds[b], j);
            let ep1 = self.endpoint(p ^ 1);
            self.label[ep1] = 2;
            self.label[bv] = 2;
            self.labelend[ep1] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = SENTINEL;
            // Unlabeled sub-blossoms on the other side get T if reachable.
            j += jstep;
            while wrap(&self.blossomchilds[b], j) != entrychild {
                let bv = wrap(&self.blossomchilds[b], j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut v = SENTINEL;
                for leaf in self.blossom_leaves(bv) {
                    v = leaf;
                    if self.label[v] != 0 {
                        break;
                    }
                }
                if v != SENTINEL && self.label[v] != 0 {
                    debug_assert_eq!(self.label[v], 2);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = 0;
                    let base_mate = self.mate[self.blossombase[bv]];
                    let em = self.endpoint(base_mate);
                    self.label[em] = 0;
                    let lblend = self.labelend[v];
                    self.assign_label(v, 2, lblend);
                }
                j += jstep;
            }
        }

        self.label[b] = 0;
        self.labelend[b] = SENTINEL;
        self.blossombase[b] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombestedges[b] = Vec::new();
        self.unusedblossoms.push(b);
    }

    /// Swap matched/unmatched edges along the path inside blossom b from
    /// vertex v to the base, then rotate the blossom onto its new base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }
        let i = self.blossomchilds[b]
            .iter()
            .position(|&c| c == t)
            .expect("sub-blossom in parent");
        let mut j = i as i64;
        let jstep: i64;
        let endptrick: usize;
        if i & 1 != 0 {
            j -= self.blossomchilds[b].len() as i64;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while j != 0 {
            j += jstep;
            let t = wrap(&self.blossomchilds[b], j);
            let p = wrap(&self.blossomendps[b], j - endptrick as i64) ^ endptrick;
            if t >= self.nvertex {
                let ep = self.endpoint(p);
                self.augment_blossom(t, ep);
            }
            j += jstep;
            let t = wrap(&self.blossomchilds[b], j);
            if t >= self.nvertex {
                let ep = self.endpoint(p ^ 1);
                self.augment_blossom(t, ep);
            }
            let ep = self.endpoint(p);
            let ep1 = self.endpoint(p ^ 1);
            self.mate[ep] = p ^ 1;
            self.mate[ep1] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    /// Augment along the path through the tight S-S edge k.
    fn augment_matching(&mut self, k: usize) {
        let v = self.edges[k].i as usize;
        let w = self.edges[k].j as usize;
        for (start, start_p) in [(v, 2 * k + 1), (w, 2 * k)] {
            let mut s = start;
            let mut p = start_p;
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                debug_assert_eq!(self.labelend[bs], self.mate[self.blossombase[bs]]);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == SENTINEL {
                    break; // reached an exposed vertex
                }
                let t = self.endpoint(self.labelend[bs]);
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.labelend[bt] != SENTINEL);
                s = self.endpoint(self.labelend[bt]);
                let j = self.endpoint(self.labelend[bt] ^ 1);
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    /// Complementary-slackness check, run only under debug assertions.
    #[cfg(debug_assertions)]
    fn verify_optimum(&self) {
        let vtol = self.tol.max(1e-12) * 64.0;
        let mut offset = 0.0f64;
        for v in 0..self.nvertex {
            offset = offset.max(-self.dualvar[v]);
        }
        for (k, e) in self.edges.iter().enumerate() {
            let (i, j) = (e.i as usize, e.j as usize);
            let mut s = self.dualvar[i] + self.dualvar[j] - 2.0 * e.weight;
            let mut iblossoms = alloc::vec![i];
            let mut jblossoms = alloc::vec![j];
            while self.blossomparent[*iblossoms.last().unwrap()] != SENTINEL {
                iblossoms.push(self.blossomparent[*iblossoms.last().unwrap()]);
            }
            while self.blossomparent[*jblossoms.last().unwrap()] != SENTINEL {
                jblossoms.push(self.blossomparent[*jblossoms.last().unwrap()]);
            }
            iblossoms.reverse();
            jblossoms.reverse();
            for (&bi, &bj) in iblossoms.iter().zip(jblossoms.iter()) {
                if bi != bj {
                    break;
                }
                s += 2.0 * self.dualvar[bi];
            }
            assert!(s >= -vtol, "edge {k} has negative slack {s}");
            if self.mate[i] / 2 == k || self.mate[j] / 2 == k {
                assert!(self.mate[i] / 2 == k && self.mate[j] / 2 == k);
                assert!(s.abs() <= vtol, "matched edge {k} has slack {s}");
            }
        }
        for v in 0..self.nvertex {
            assert!(
                self.mate[v] != SENTINEL || (self.dualvar[v] + offset).abs() <= vtol,
                "exposed vertex {v} has nonzero dual"
            );
        }
        for b in self.nvertex..2 * self.nvertex {
            if self.blossombase[b] != SENTINEL && self.dualvar[b] > vtol {
                assert!(self.blossomendps[b].len() % 2 == 1);
                for (ix, &p) in self.blossomendps[b].iter().enumerate() {
                    if ix % 2 == 1 {
                        assert_eq!(self.mate[self.endpoint(p)], p ^ 1);
                        assert_eq!(self.mate[self.endpoint(p ^ 1)], p);
                    }
                }
            }
        }
    }

    /// Runs the solver; returns mate[v] = partner vertex for every v.
    pub(crate) fn solve(mut self) -> Vec<usize> {
        for _stage in 0..self.nvertex {
            self.label.fill(0);
            self.bestedge.fill(SENTINEL);
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b] = Vec::new();
            }
            self.allowedge.fill(false);
            self.queue.clear();
            for v in 0..self.nvertex {
                if self.mate[v] == SENTINEL && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, SENTINEL);
                }
            }

            let mut augmented = false;
            loop {
                while let Some(v) = (!augmented).then(|| self.queue.pop()).flatten() {
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
                    for w in 0..self.nvertex {
                        if w == v || self.inblossom[v] == self.inblossom[w] {
                            continue; // intra-blossom edges are ignored
                        }
                        let k = edge_id(v, w);
                        let p = 2 * k + usize::from(w > v); // endpoint at w
                        let mut kslack = 0.0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= self.tol {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != SENTINEL {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                // Unreached vertex inside a T-blossom; mark it
                                // so expansion can relabel correctly.
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == SENTINEL
                                || kslack < self.slack(self.bestedge[b])
                            {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == SENTINEL
                                || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path with the current tight edges; update the
                // duals. deltatype 1 ends the algorithm, 2/3 make an edge
                // tight, 4 expands a T-blossom.
                let mut deltatype = -1;
                let mut delta = 0.0f64;
                let mut deltaedge = SENTINEL;
                let mut deltablossom = SENTINEL;

                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != SENTINEL {
                        let d2 = self.slack(self.bestedge[v]);
                        if deltatype == -1 || d2 < delta {
                            delta = d2;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == SENTINEL
                        && self.label[b] == 1
                        && self.bestedge[b] != SENTINEL
                    {
                        let d3 = self.slack(self.bestedge[b]) / 2.0;
                        if deltatype == -1 || d3 < delta {
                            delta = d3;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL
                        && self.blossomparent[b] == SENTINEL
                        && self.label[b] == 2
                        && (deltatype == -1 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == -1 {
                    // Max-cardinality optimum reached; final clean-up delta.
                    deltatype = 1;
                    let mut min_dual = f64::INFINITY;
                    for v in 0..self.nvertex {
                        min_dual = min_dual.min(self.dualvar[v]);
                    }
                    delta = min_dual.max(0.0);
                }
                delta = delta.max(0.0); // guard against float drift

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        0 => {}
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        other => unreachable!("vertex label {other}"),
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL && self.blossomparent[b] == SENTINEL {
                        match self.label[b] {
                            0 => {}
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            other => unreachable!("blossom label {other}"),
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let mut i = self.edges[deltaedge].i as usize;
                        let j = self.edges[deltaedge].j as usize;
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let i = self.edges[deltaedge].i as usize;
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(deltablossom, false),
                    other => unreachable!("deltatype {other}"),
                }
            }

            if !augmented {
                break;
            }

            // Expand S-blossoms whose dual dropped to zero.
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == SENTINEL
                    && self.blossombase[b] != SENTINEL
                    && self.label[b] == 1
                    && self.dualvar[b] <= self.tol
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        #[cfg(debug_assertions)]
        self.verify_optimum();

        let mut pairs = alloc::vec![SENTINEL; self.nvertex];
        for v in 0..self.nvertex {
            if self.mate[v] != SENTINEL {
                pairs[v] = self.endpoint(self.mate[v]);
            }
        }
        for v in 0..self.nvertex {
            debug_assert!(pairs[v] == SENTINEL || pairs[pairs[v]] == v);
        }
        pairs
    }
}

pub(crate) const UNMATCHED: usize = SENTINEL;
