//! Maximum matching in general graphs (Edmonds' blossom algorithm) and replay.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::graph::{Graph, VertexId};

const NONE: usize = usize::MAX;

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex that ends
    /// an augmenting path, if any.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj(v).len() {
                let to = self.g.adj(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// A maximum matching as sorted edges `(u, v)` with `u < v`.
pub fn maximum_matching(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let n = g.n();
    let mut b = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for root in 0..n {
        if b.mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = b.find_path(root) {
            while v != NONE {
                let pv = b.parent[v];
                let ppv = b.mate[pv];
                b.mate[v] = pv;
                b.mate[pv] = v;
                v = ppv;
            }
        }
    }
    (0..n).filter(|&i| b.mate[i] != NONE && i < b.mate[i]).map(|i| (g.vertex(i), g.vertex(b.mate[i]))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MatchingOutcome {
    Perfect {
        edges: Vec<(VertexId, VertexId)>,
    },
    /// An odd number of vertices cannot be covered.
    OddOrder {
        vertices: usize,
    },
    /// The maximum matching leaves vertices uncovered.
    Deficient {
        maximum: Vec<(VertexId, VertexId)>,
        uncovered: usize,
    },
}

pub fn perfect_matching(g: &Graph) -> MatchingOutcome {
    if g.n() % 2 == 1 {
        return MatchingOutcome::OddOrder { vertices: g.n() };
    }
    let m = maximum_matching(g);
    if 2 * m.len() == g.n() {
        MatchingOutcome::Perfect { edges: m }
    } else {
        let uncovered = g.n() - 2 * m.len();
        MatchingOutcome::Deficient { maximum: m, uncovered }
    }
}

/// Replays a claimed perfect matching: real edges, pairwise disjoint, covering every vertex.
pub fn is_perfect_matching(g: &Graph, edges: &[(VertexId, VertexId)]) -> bool {
    let mut covered = BTreeSet::new();
    for (u, v) in edges {
        if !g.has_edge(u, v) || !covered.insert(*u) || !covered.insert(*v) {
            return false;
        }
    }
    covered.len() == g.n()
}
