//! Exact maximum-weight matching in general graphs via Edmonds' blossom
//! method in the primal-dual formulation described by Galil (ACM Computing
//! Surveys, 1986), following the array-based organization popularized by
//! Joris van Rantwijk's implementation. Runs in O(n^3); all arithmetic stays
//! in integers (vertex duals are stored doubled).
//!
//! The solver can optionally start from a greedy matching over maximum-weight
//! edges. Those edges are tight under the uniform initial duals, so the warm
//! start preserves every invariant of the cold-start algorithm and only
//! skips the corresponding trivial augmentation stages.

use crate::graph::Weight;

const NONE: usize = usize::MAX;

/// Initial matching fed to the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlossomInit {
    /// Start from the empty matching (textbook behavior).
    Empty,
    /// Greedily pre-match maximum-weight edges (they have zero slack).
    #[default]
    Greedy,
}

/// Computes a maximum-weight matching over `edges` on vertices `0..n`.
/// Returns the mate of every vertex. Edge weights must be positive and small
/// enough that `4 * max_weight * n` fits in `i64`, which holds for all
/// demand values this crate produces.
pub fn max_weight_matching(
    n: usize,
    edges: &[(u32, u32, Weight)],
    init: BlossomInit,
) -> Vec<Option<u32>> {
    if edges.is_empty() || n == 0 {
        return vec![None; n];
    }
    let edges: Vec<(usize, usize, i64)> = edges
        .iter()
        .map(|&(u, v, w)| {
            let w = i64::try_from(w).expect("weight fits i64");
            (u as usize, v as usize, w)
        })
        .collect();
    let mut solver = Solver::new(n, edges, init);
    solver.solve();
    (0..n)
        .map(|v| {
            let p = solver.mate[v];
            (p != NONE).then(|| solver.endpoint(p) as u32)
        })
        .collect()
}

struct Solver {
    nvertex: usize,
    edges: Vec<(usize, usize, i64)>,
    /// `neighbend[v]`: endpoints `p` with `endpoint(p ^ 1) == v`.
    neighbend: Vec<Vec<usize>>,
    /// Remote endpoint of the matched edge of `v`, or NONE.
    mate: Vec<usize>,
    /// Labels of top-level blossoms: 0 free, 1 = S, 2 = T (4/5 are traversal
    /// breadcrumbs).
    label: Vec<usize>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl Solver {
    fn new(nvertex: usize, edges: Vec<(usize, usize, i64)>, init: BlossomInit) -> Self {
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0);
        let mut neighbend = vec![Vec::new(); nvertex];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut mate = vec![NONE; nvertex];
        if init == BlossomInit::Greedy {
            // Under uniform initial duals only maximum-weight edges are
            // tight; matching them greedily mirrors trivial first stages.
            for (k, &(i, j, w)) in edges.iter().enumerate() {
                if w == maxweight && mate[i] == NONE && mate[j] == NONE {
                    mate[i] = 2 * k + 1;
                    mate[j] = 2 * k;
                }
            }
        }
        let mut dualvar = vec![maxweight; nvertex];
        dualvar.resize(2 * nvertex, 0);
        let mut blossombase: Vec<usize> = (0..nvertex).collect();
        blossombase.resize(2 * nvertex, NONE);
        let nedge = edges.len();
        Solver {
            nvertex,
            edges,
            neighbend,
            mate,
            label: vec![0; 2 * nvertex],
            labelend: vec![NONE; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![NONE; 2 * nvertex],
            blossomchilds: vec![Vec::new(); 2 * nvertex],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nvertex],
            bestedge: vec![NONE; 2 * nvertex],
            blossombestedges: vec![Vec::new(); 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    fn endpoint(&self, p: usize) -> usize {
        let (i, j, _) = self.edges[p / 2];
        if p % 2 == 0 {
            i
        } else {
            j
        }
    }

    /// 2 * slack of edge `k` (ignores blossom duals; only valid for edges
    /// between different top-level blossoms).
    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn blossom_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.nvertex {
            out.push(b);
        } else {
            for &c in &self.blossomchilds[b] {
                self.blossom_leaves(c, out);
            }
        }
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.blossom_leaves(b, &mut out);
        out
    }

    /// Label the top-level blossom of `w` with `t`, reached via endpoint `p`.
    fn assign_label(&mut self, w: usize, t: usize, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let leaves = self.leaves(b);
            self.queue.extend(leaves);
        } else {
            // T-blossom: its base's mate becomes an S-vertex.
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != NONE);
            let mbase = self.mate[base];
            let ep = self.endpoint(mbase);
            self.assign_label(ep, 1, mbase ^ 1);
        }
    }

    /// Trace back from `v` and `w`; returns the base of a new blossom, or
    /// NONE if the paths lead to different roots (an augmenting path).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        let mut v = v;
        let mut w = w;
        while v != NONE || w != NONE {
            if v == NONE {
                std::mem::swap(&mut v, &mut w);
            }
            let b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] = 5;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == NONE {
                v = NONE; // reached a root
            } else {
                v = self.endpoint(self.labelend[b]);
                let bt = self.inblossom[v];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.labelend[bt] != NONE);
                v = self.endpoint(self.labelend[bt]);
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Create a new S-blossom with the given base, closed by edge `k`.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slot available");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;

        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            debug_assert!(self.labelend[bv] != NONE);
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
            debug_assert!(self.labelend[bw] != NONE);
            w = self.endpoint(self.labelend[bw]);
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;

        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;

        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                // former T-vertex becomes S through the new blossom
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        // Merge least-slack edge lists of the sub-blossoms (delta3 support).
        let mut bestedgeto = vec![NONE; 2 * self.nvertex];
        for bv in self.blossomchilds[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                self.leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv].clear();
            self.bestedge[bv] = NONE;
        }
        let merged: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &merged {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.blossombestedges[b] = merged;
    }

    fn childs_at(&self, b: usize, j: i64) -> usize {
        let len = self.blossomchilds[b].len() as i64;
        self.blossomchilds[b][(((j % len) + len) % len) as usize]
    }

    fn endps_at(&self, b: usize, j: i64) -> usize {
        let len = self.blossomendps[b].len() as i64;
        self.blossomendps[b][(((j % len) + len) % len) as usize]
    }

    /// Expand the given top-level blossom into its sub-blossoms.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = NONE;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        // A T-blossom expanded during a stage must pass its label on.
        if !endstage && self.label[b] == 2 {
            debug_assert!(self.labelend[b] != NONE);
            let entrychild = self.inblossom[self.endpoint(self.labelend[b] ^ 1)];
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child present") as i64;
            let (jstep, endptrick): (i64, usize) = if j & 1 != 0 {
                j -= self.blossomchilds[b].len() as i64;
                (1, 0)
            } else {
                (-1, 1)
            };
            // Walk from the entry child down to the base, relabeling.
            let mut p = self.labelend[b];
            while j != 0 {
                let ep = self.endpoint(p ^ 1);
                self.label[ep] = 0;
                let q = self.endps_at(b, j - endptrick as i64) ^ endptrick ^ 1;
                let eq = self.endpoint(q);
                self.label[eq] = 0;
                self.assign_label(ep, 2, p);
                let allowed = self.endps_at(b, j - endptrick as i64) / 2;
                self.allowedge[allowed] = true;
                j += jstep;
                p = self.endps_at(b, j - endptrick as i64) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // Relabel the base sub-blossom without recursing to its mate.
            let bv = self.childs_at(b, j);
            let ep = self.endpoint(p ^ 1);
            self.label[ep] = 2;
            self.label[bv] = 2;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            // The remaining sub-blossoms keep label 0 unless an outside
            // S-vertex already reached one of their vertices.
            j += jstep;
            while self.childs_at(b, j) != entrychild {
                let bv = self.childs_at(b, j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut reached = NONE;
                for v in self.leaves(bv) {
                    if self.label[v] != 0 {
                        reached = v;
                        break;
                    }
                }
                if reached != NONE {
                    let v = reached;
                    debug_assert_eq!(self.label[v], 2);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = 0;
                    let base_mate = self.mate[self.blossombase[bv]];
                    let mate_ep = self.endpoint(base_mate);
                    self.label[mate_ep] = 0;
                    let lblend = self.labelend[v];
                    self.assign_label(v, 2, lblend);
                }
                j += jstep;
            }
        }
        self.label[b] = NONE;
        self.labelend[b] = NONE;
        self.blossombase[b] = NONE;
        self.bestedge[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombestedges[b].clear();
        self.unusedblossoms.push(b);
    }

    /// Swap matched/unmatched edges along the path from `v` to the base of
    /// blossom `b`, then rotate the blossom so `v` becomes the base.
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
            .expect("child found") as i64;
        let mut j = i;
        let (jstep, endptrick): (i64, usize) = if i & 1 != 0 {
            j -= self.blossomchilds[b].len() as i64;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.childs_at(b, j);
            let p = self.endps_at(b, j - endptrick as i64) ^ endptrick;
            if t >= self.nvertex {
                let ep = self.endpoint(p);
                self.augment_blossom(t, ep);
            }
            j += jstep;
            let t = self.childs_at(b, j);
            if t >= self.nvertex {
                let ep = self.endpoint(p ^ 1);
                self.augment_blossom(t, ep);
            }
            let (ep0, ep1) = (self.endpoint(p), self.endpoint(p ^ 1));
            self.mate[ep0] = p ^ 1;
            self.mate[ep1] = p;
        }
        self.blossomchilds[b].rotate_left(i as usize);
        self.blossomendps[b].rotate_left(i as usize);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    /// Augment the matching along the path through tight edge `k`.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                debug_assert_eq!(self.labelend[bs], self.mate[self.blossombase[bs]]);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break; // root reached
                }
                let t = self.endpoint(self.labelend[bs]);
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.labelend[bt] != NONE);
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

    fn solve(&mut self) {
        for _stage in 0..self.nvertex {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b].clear();
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..self.nvertex {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint(p);
                        if self.inblossom[v] == self.inblossom[w] {
                            continue; // edge internal to a blossom
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path with the current duals: adjust them.
                let mut deltatype = 1;
                let mut delta = *self.dualvar[..self.nvertex].iter().min().unwrap();
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == 1
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && self.dualvar[b] < delta
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        0 => {}
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        l => unreachable!("bad label {l}"),
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            0 => {}
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            l => unreachable!("bad label {l}"),
                        }
                    }
                }

                match deltatype {
                    1 => break, // optimum reached
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(deltablossom, false),
                    t => unreachable!("bad delta type {t}"),
                }
            }
            if !augmented {
                break;
            }
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
        #[cfg(debug_assertions)]
        self.verify_optimum();
    }

    /// Complementary-slackness check of the final primal/dual pair.
    #[cfg(debug_assertions)]
    fn verify_optimum(&self) {
        for k in 0..self.edges.len() {
            let (i, j, w) = self.edges[k];
            let mut s = self.dualvar[i] + self.dualvar[j] - 2 * w;
            let mut iblossoms = vec![i];
            let mut jblossoms = vec![j];
            while self.blossomparent[*iblossoms.last().unwrap()] != NONE {
                iblossoms.push(self.blossomparent[*iblossoms.last().unwrap()]);
            }
            while self.blossomparent[*jblossoms.last().unwrap()] != NONE {
                jblossoms.push(self.blossomparent[*jblossoms.last().unwrap()]);
            }
            iblossoms.reverse();
            jblossoms.reverse();
            for (&bi, &bj) in iblossoms.iter().zip(jblossoms.iter()) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            assert!(s >= 0, "edge {k} has negative slack");
            let mi = self.mate[i] != NONE && self.mate[i] / 2 == k;
            let mj = self.mate[j] != NONE && self.mate[j] / 2 == k;
            if mi || mj {
                assert!(mi && mj);
                assert_eq!(s, 0, "matched edge {k} is not tight");
            }
        }
        for v in 0..self.nvertex {
            assert!(
                self.mate[v] != NONE || self.dualvar[v] == 0,
                "single vertex {v} has nonzero dual"
            );
        }
        for b in self.nvertex..2 * self.nvertex {
            if self.blossombase[b] != NONE && self.dualvar[b] > 0 {
                assert_eq!(self.blossomendps[b].len() % 2, 1);
                for (ix, &p) in self.blossomendps[b].iter().enumerate() {
                    if ix % 2 == 1 {
                        assert_eq!(self.mate[self.endpoint(p)], p ^ 1);
                        assert_eq!(self.mate[self.endpoint(p ^ 1)], p);
                    }
                }
            }
        }
    }
}
