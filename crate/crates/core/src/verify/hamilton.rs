//! Hamiltonian cycle search and replay.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{Graph, VertexId};

/// Default node budget for Hamiltonian cycle search.
pub const DEFAULT_HAMILTON_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum HamiltonOutcome {
    /// A cycle through every vertex; the last vertex is adjacent to the first.
    Cycle {
        cycle: Vec<VertexId>,
        nodes: u64,
    },
    /// The pruned search space was exhausted without finding a cycle.
    NoneProved {
        nodes: u64,
    },
    Exhausted {
        nodes: u64,
        budget: u64,
    },
}

/// Vertex sets as rows of `words` 64-bit words.
struct Rows {
    words: usize,
    bits: Vec<u64>,
}

impl Rows {
    fn new(rows: usize, words: usize) -> Self {
        Rows { words, bits: vec![0; rows * words] }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    fn set(&mut self, r: usize, v: usize) {
        self.bits[r * self.words + v / 64] |= 1 << (v % 64);
    }
}

fn has(set: &[u64], v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

fn flip(set: &mut [u64], v: usize) {
    set[v / 64] ^= 1 << (v % 64);
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

struct Search {
    n: usize,
    adj: Rows,
    /// Unvisited vertices.
    open: Vec<u64>,
    /// Unvisited vertices plus both path ends: the possible cycle neighbors
    /// of an unvisited vertex.
    usable: Vec<u64>,
    /// Number of usable neighbors of each vertex.
    degree: Vec<usize>,
    path: Vec<usize>,
    nodes: u64,
    budget: u64,
    seen: Vec<u64>,
    frontier: Vec<u64>,
    /// Candidate buffers, one per path length.
    scratch: Vec<Vec<(usize, usize)>>,
    /// Vertex sets `{v : deg(v) >= t}` for the largest few degrees `t`.
    heavy: Vec<Vec<u64>>,
    /// Break ties toward later vertices.
    descending: bool,
}

enum Stop {
    Found,
    Budget,
}

impl Search {
    fn start(&self) -> usize {
        self.path[0]
    }

    fn cur(&self) -> usize {
        *self.path.last().unwrap()
    }

    fn count_in(&self, v: usize, set: &[u64]) -> usize {
        self.adj.row(v).iter().zip(set).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn toggle_usable(&mut self, v: usize, on: bool) {
        flip(&mut self.usable, v);
        for i in 0..self.adj.words {
            let mut word = self.adj.bits[v * self.adj.words + i];
            while word != 0 {
                let x = i * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if on {
                    self.degree[x] += 1;
                } else {
                    self.degree[x] -= 1;
                }
            }
        }
    }

    /// Dead-end tests: every unvisited vertex keeps two usable neighbors, the
    /// unvisited vertices induce one connected piece, and both path ends can
    /// still reach it.
    fn viable(&mut self) -> bool {
        if self.open.iter().all(|&w| w == 0) {
            return true;
        }
        if ones(&self.open).any(|w| self.degree[w] < 2) {
            return false;
        }
        // An unvisited vertex with two usable neighbors uses both; no vertex
        // can take three such edges, and a path end has room for one.
        let (cur, start) = (self.cur(), self.start());
        let mut claims = vec![0usize; self.n];
        for w in ones(&self.open).filter(|&w| self.degree[w] == 2) {
            for i in 0..self.adj.words {
                let mut word = self.adj.row(w)[i] & self.usable[i];
                while word != 0 {
                    let x = i * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    claims[x] += 1;
                    let room = if x == cur || x == start { 1 + usize::from(cur == start) } else { 2 };
                    if claims[x] > room {
                        return false;
                    }
                }
            }
        }
        if self.count_in(self.cur(), &self.open) == 0 || self.count_in(self.start(), &self.open) == 0 {
            return false;
        }
        let open = self.open.clone();
        if self.components(&open, 2) != 1 {
            return false;
        }
        // Scattering: deleting k inner vertices from the rest of the cycle
        // (a path from cur to start, or a cycle at the root) leaves at most
        // k + 1 (or k) pieces.
        let mut rest = self.open.clone();
        for x in [cur, start] {
            if !has(&rest, x) {
                flip(&mut rest, x);
            }
        }
        let slack = usize::from(cur != start);
        for t in 0..self.heavy.len() {
            let mut keep = rest.clone();
            let mut k = 0;
            for ((kept, heavy), open) in keep.iter_mut().zip(&self.heavy[t]).zip(&self.open) {
                let cut = heavy & open;
                k += cut.count_ones() as usize;
                *kept &= !cut;
            }
            if k > 0 && self.components(&keep, k + slack + 1) > k + slack {
                return false;
            }
        }
        true
    }

    /// Components of the subgraph induced by `set`, counted up to `cap`.
    fn components(&mut self, set: &[u64], cap: usize) -> usize {
        self.seen.fill(0);
        let mut count = 0;
        while count < cap {
            let Some(root) = set.iter().zip(&self.seen).enumerate().find_map(|(i, (a, b))| {
                let w = a & !b;
                (w != 0).then(|| i * 64 + w.trailing_zeros() as usize)
            }) else {
                break;
            };
            count += 1;
            self.frontier.fill(0);
            flip(&mut self.seen, root);
            flip(&mut self.frontier, root);
            loop {
                let Some(u) = ones(&self.frontier).next() else { break };
                flip(&mut self.frontier, u);
                let row = &self.adj.bits[u * self.adj.words..(u + 1) * self.adj.words];
                for (i, (seen, frontier)) in self.seen.iter_mut().zip(&mut self.frontier).enumerate() {
                    let fresh = row[i] & set[i] & !*seen;
                    *seen |= fresh;
                    *frontier |= fresh;
                }
            }
        }
        count
    }

    fn visit(&mut self, w: usize) {
        flip(&mut self.open, w);
        // w stays usable while it is the path end
        let prev = self.cur();
        if prev != self.start() {
            self.toggle_usable(prev, false);
        }
        self.path.push(w);
    }

    fn unvisit(&mut self, w: usize) {
        self.path.pop();
        let prev = self.cur();
        if prev != self.start() {
            self.toggle_usable(prev, true);
        }
        flip(&mut self.open, w);
    }

    fn extend(&mut self) -> Result<(), Stop> {
        let cur = self.cur();
        if self.path.len() == self.n {
            return if has(self.adj.row(cur), self.start()) { Err(Stop::Found) } else { Ok(()) };
        }
        if !self.viable() {
            return Ok(());
        }
        let depth = self.path.len();
        let mut next = std::mem::take(&mut self.scratch[depth]);
        next.clear();
        for i in 0..self.adj.words {
            let mut word = self.adj.row(cur)[i] & self.open[i];
            while word != 0 {
                let w = i * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                next.push((self.degree[w], w));
            }
        }
        // A neighbor with only two usable neighbors must take cur's last free slot.
        if depth > 1 {
            let mut forced = next.iter().filter(|&&(d, _)| d == 2);
            match (forced.next().copied(), forced.next()) {
                (None, _) => {}
                (Some(only), None) => {
                    next.clear();
                    next.push(only);
                }
                (Some(_), Some(_)) => next.clear(),
            }
        }
        if self.descending {
            next.sort_unstable_by_key(|&(d, w)| (d, std::cmp::Reverse(w)));
        } else {
            next.sort_unstable();
        }
        let mut result = Ok(());
        for &(_, w) in &next {
            self.nodes += 1;
            if self.nodes > self.budget {
                result = Err(Stop::Budget);
                break;
            }
            self.visit(w);
            let r = self.extend();
            if matches!(r, Err(Stop::Found)) {
                result = r;
                break;
            }
            self.unvisit(w);
            if r.is_err() {
                result = r;
                break;
            }
        }
        self.scratch[depth] = next;
        result
    }
}

/// How many degree thresholds the scattering test tries.
const THRESHOLDS: usize = 3;

/// `{v : deg(v) >= t}` for the largest distinct degrees `t` above the minimum.
fn heavy_sets(g: &Graph, words: usize) -> Vec<Vec<u64>> {
    let degrees: BTreeSet<usize> = (0..g.n()).map(|v| g.adj(v).len()).collect();
    degrees
        .iter()
        .skip(1)
        .rev()
        .take(THRESHOLDS)
        .map(|&t| {
            let mut set = vec![0u64; words];
            for v in (0..g.n()).filter(|&v| g.adj(v).len() >= t) {
                flip(&mut set, v);
            }
            set
        })
        .collect()
}

/// Node cap of the first restart round; later rounds grow by [`ROUND_GROWTH`].
const FIRST_ROUND: u64 = 10_000;
const ROUND_GROWTH: u64 = 4;

/// Searches for a Hamiltonian cycle, starting from a minimum-degree vertex and
/// extending toward the neighbor with the fewest usable neighbors.
///
/// Rounds alternate between breaking ties toward earlier and toward later
/// vertices, each with a larger node cap, until the total budget is spent. A
/// round that finishes under its cap is a complete search, so it proves that
/// there is no cycle.
pub fn hamilton(g: &Graph, budget: u64) -> HamiltonOutcome {
    let n = g.n();
    if n < 3 || g.vertices().iter().any(|v| g.degree(v) < 2) || !g.is_connected() {
        return HamiltonOutcome::NoneProved { nodes: 0 };
    }
    let words = n.div_ceil(64);
    let mut adj = Rows::new(n, words);
    for v in 0..n {
        for &w in g.adj(v) {
            adj.set(v, w);
        }
    }
    let heavy = heavy_sets(g, words);
    let mut spent = 0u64;
    let mut cap = FIRST_ROUND;
    for round in 0.. {
        let descending = round % 2 == 1;
        let limit = cap.min(budget - spent);
        let mut all = vec![0u64; words];
        for v in 0..n {
            flip(&mut all, v);
        }
        let degree = |i: usize| g.adj(i).len();
        let start = if descending {
            (0..n).rev().min_by_key(|&i| degree(i)).unwrap()
        } else {
            (0..n).min_by_key(|&i| degree(i)).unwrap()
        };
        let mut open = all.clone();
        flip(&mut open, start);
        let mut s = Search {
            n,
            adj: Rows { words, bits: adj.bits.clone() },
            open,
            usable: all,
            degree: (0..n).map(degree).collect(),
            path: vec![start],
            nodes: 0,
            budget: limit,
            seen: vec![0; words],
            frontier: vec![0; words],
            scratch: vec![Vec::new(); n + 1],
            heavy: heavy.clone(),
            descending,
        };
        let outcome = s.extend();
        spent += s.nodes.min(limit);
        match outcome {
            Err(Stop::Found) => {
                return HamiltonOutcome::Cycle { cycle: s.path.iter().map(|&i| g.vertex(i)).collect(), nodes: spent }
            }
            Ok(()) => return HamiltonOutcome::NoneProved { nodes: spent },
            Err(Stop::Budget) if spent >= budget => break,
            Err(Stop::Budget) => {}
        }
        if descending {
            cap = cap.saturating_mul(ROUND_GROWTH);
        }
    }
    HamiltonOutcome::Exhausted { nodes: spent, budget }
}

/// Replays a claimed Hamiltonian cycle against the graph.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let distinct: BTreeSet<&VertexId> = cycle.iter().collect();
    if cycle.len() < 3 || cycle.len() != g.n() || distinct.len() != cycle.len() {
        return false;
    }
    if !cycle.iter().all(|v| g.contains(v)) {
        return false;
    }
    (0..cycle.len()).all(|i| g.has_edge(&cycle[i], &cycle[(i + 1) % cycle.len()]))
}
