//! Choosability: confirming blocking list assignments, exhaustive k-choosability
//! for small graphs relative to a color pool, and seeded random probes.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::lists::{Color, ListAssignment};
use crate::solve::{decide, Coloring, SolveError, Status};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChooseError {
    #[error("pool has {pool} colors, fewer than k = {k}")]
    PoolTooSmall { pool: usize, k: usize },
    #[error("k must be positive")]
    ZeroK,
    #[error("solve exhausted its budget on trial {trial}")]
    ProbeExhausted { trial: u64, lists: Box<ListAssignment> },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Why a claimed blocking assignment is not one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    /// Vertices whose list does not have exactly k colors, with the actual size.
    pub wrong_sizes: Vec<(VertexId, usize)>,
    /// A proper coloring from the lists, if one exists.
    pub coloring: Option<Coloring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub graph: GraphSummary,
    pub k: usize,
    pub trials: u64,
    pub successes: u64,
    pub seed: u64,
    pub pool: Vec<Color>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary { vertices: g.n(), edges: g.m() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ChoosabilityVerdict {
    WitnessConfirmed {
        nodes: u64,
    },
    WitnessRefuted(Refutation),
    /// Every k-list assignment drawn from `pool` is colorable.
    Choosable {
        pool: Vec<Color>,
        assignments: u64,
        nodes: u64,
    },
    /// `witness` is the lexicographically least canonical blocking assignment.
    NotChoosable {
        pool: Vec<Color>,
        witness: ListAssignment,
        assignments: u64,
        nodes: u64,
    },
    Exhausted {
        assignments: u64,
        nodes: u64,
    },
    Probe(ProbeReport),
}

/// Confirms that every list has `k` colors and that no proper coloring exists.
pub fn verify_not_choosable(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    budget: u64,
) -> Result<ChoosabilityVerdict, ChooseError> {
    let wrong_sizes: Vec<(VertexId, usize)> =
        g.vertices().iter().filter_map(|v| lists.get(v).map(|l| (*v, l.len()))).filter(|&(_, s)| s != k).collect();
    let res = decide(g, lists, budget)?;
    Ok(match res.status {
        Status::Exhausted => ChoosabilityVerdict::Exhausted { assignments: 1, nodes: res.nodes },
        Status::Unsat if wrong_sizes.is_empty() => ChoosabilityVerdict::WitnessConfirmed { nodes: res.nodes },
        _ => ChoosabilityVerdict::WitnessRefuted(Refutation { wrong_sizes, coloring: res.witness }),
    })
}

/// All k-subsets of `pool` (sorted) in lexicographic order.
fn k_subsets(pool: &[Color], k: usize) -> Vec<Vec<Color>> {
    fn rec(pool: &[Color], k: usize, start: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

struct Exhaustive<'a> {
    g: &'a Graph,
    pool: Vec<Color>,
    subsets: Vec<Vec<Color>>,
    symmetry: bool,
    budget: u64,
    nodes: u64,
    assignments: u64,
    chosen: Vec<Vec<Color>>,
}

enum Found {
    Bad(ListAssignment),
    Exhausted,
}

impl Exhaustive<'_> {
    // With symmetry pruning, a list may only introduce unused pool colors as
    // the next ones in pool order: the colors used so far are always a prefix
    // of the pool, so assignments differing by a color renaming collapse.
    fn candidates(&self) -> Vec<&Vec<Color>> {
        if !self.symmetry {
            return self.subsets.iter().collect();
        }
        let used = self.chosen.iter().flatten().map(|c| self.pool.binary_search(c).unwrap() + 1).max().unwrap_or(0);
        self.subsets
            .iter()
            .filter(|s| {
                let fresh: Vec<usize> =
                    s.iter().map(|c| self.pool.binary_search(c).unwrap()).filter(|&i| i >= used).collect();
                fresh.iter().enumerate().all(|(j, &i)| i == used + j)
            })
            .collect()
    }

    fn search(&mut self) -> Result<(), Found> {
        let depth = self.chosen.len();
        if depth == self.g.n() {
            self.assignments += 1;
            let lists = ListAssignment::new(
                self.pool.iter().copied(),
                self.g
                    .vertices()
                    .iter()
                    .zip(&self.chosen)
                    .map(|(v, l)| (*v, l.iter().copied().collect::<BTreeSet<_>>())),
            )
            .expect("subsets of the pool");
            let remaining = self.budget.saturating_sub(self.nodes);
            let res = decide(self.g, &lists, remaining).expect("lists cover the graph");
            self.nodes += res.nodes;
            return match res.status {
                Status::Sat => Ok(()),
                Status::Unsat => Err(Found::Bad(lists)),
                Status::Exhausted => Err(Found::Exhausted),
            };
        }
        let cands: Vec<Vec<Color>> = self.candidates().into_iter().cloned().collect();
        for s in cands {
            self.chosen.push(s);
            let r = self.search();
            self.chosen.pop();
            r?;
        }
        Ok(())
    }
}

/// Decides k-choosability of `g` relative to `pool` by trying every
/// assignment of k-subsets of the pool, up to color renaming.
///
/// The verdict only speaks about lists drawn from `pool`; no pool size is
/// assumed to be sufficient in general. Meant for graphs of up to about eight
/// vertices.
pub fn choosability_exhaustive(
    g: &Graph,
    k: usize,
    pool: &BTreeSet<Color>,
    budget: u64,
) -> Result<ChoosabilityVerdict, ChooseError> {
    run_exhaustive(g, k, pool, budget, true)
}

/// Same as [`choosability_exhaustive`] without the renaming reduction.
pub fn choosability_exhaustive_unpruned(
    g: &Graph,
    k: usize,
    pool: &BTreeSet<Color>,
    budget: u64,
) -> Result<ChoosabilityVerdict, ChooseError> {
    run_exhaustive(g, k, pool, budget, false)
}

fn run_exhaustive(
    g: &Graph,
    k: usize,
    pool: &BTreeSet<Color>,
    budget: u64,
    symmetry: bool,
) -> Result<ChoosabilityVerdict, ChooseError> {
    if k == 0 {
        return Err(ChooseError::ZeroK);
    }
    if pool.len() < k {
        return Err(ChooseError::PoolTooSmall { pool: pool.len(), k });
    }
    let pool: Vec<Color> = pool.iter().copied().collect();
    let mut ex = Exhaustive {
        g,
        subsets: k_subsets(&pool, k),
        pool: pool.clone(),
        symmetry,
        budget,
        nodes: 0,
        assignments: 0,
        chosen: Vec::new(),
    };
    Ok(match ex.search() {
        Ok(()) => ChoosabilityVerdict::Choosable { pool, assignments: ex.assignments, nodes: ex.nodes },
        Err(Found::Bad(witness)) => {
            ChoosabilityVerdict::NotChoosable { pool, witness, assignments: ex.assignments, nodes: ex.nodes }
        }
        Err(Found::Exhausted) => ChoosabilityVerdict::Exhausted { assignments: ex.assignments, nodes: ex.nodes },
    })
}

/// Default probe pool `{1, ..., 2k}`.
pub fn default_pool(k: usize) -> BTreeSet<Color> {
    (1..=2 * k as Color).collect()
}

/// Draws one uniform k-subset of `pool` per vertex (vertices in identity order).
///
/// Generator: ChaCha8 seeded with `seed ^ trial`; each subset is the first k
/// entries of a partial Fisher-Yates shuffle of the pool.
pub fn random_lists(g: &Graph, k: usize, pool: &[Color], seed: u64, trial: u64) -> ListAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
    let mut lists = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let mut colors = pool.to_vec();
        for i in 0..k {
            let j = rng.gen_range(i..colors.len());
            colors.swap(i, j);
        }
        lists.push((*v, colors[..k].iter().copied().collect::<BTreeSet<_>>()));
    }
    ListAssignment::new(pool.iter().copied(), lists).expect("subsets of the pool")
}

/// Solves `trials` random k-list assignments drawn from `pool` and counts the
/// colorable ones. Any exhausted solve aborts the probe.
pub fn random_probe(
    g: &Graph,
    k: usize,
    trials: u64,
    seed: u64,
    pool: &BTreeSet<Color>,
    budget: u64,
) -> Result<ProbeReport, ChooseError> {
    if k == 0 {
        return Err(ChooseError::ZeroK);
    }
    if pool.len() < k {
        return Err(ChooseError::PoolTooSmall { pool: pool.len(), k });
    }
    let pool_vec: Vec<Color> = pool.iter().copied().collect();
    let mut successes = 0;
    for trial in 0..trials {
        let lists = random_lists(g, k, &pool_vec, seed, trial);
        let res = decide(g, &lists, budget)?;
        match res.status {
            Status::Sat => successes += 1,
            Status::Unsat => {}
            Status::Exhausted => return Err(ChooseError::ProbeExhausted { trial, lists: Box::new(lists) }),
        }
    }
    Ok(ProbeReport { graph: GraphSummary::of(g), k, trials, successes, seed, pool: pool_vec, budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{wheel4, wheel_lists};
    use crate::graph::plain_graph;

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(
            k_subsets(&[1, 2, 3, 4], 2),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }

    #[test]
    fn single_edge_not_one_choosable() {
        let g = plain_graph(2, &[(0, 1)]).unwrap();
        match choosability_exhaustive(&g, 1, &BTreeSet::from([1, 2]), 1000).unwrap() {
            ChoosabilityVerdict::NotChoosable { witness, .. } => {
                for (_, l) in witness.iter() {
                    assert_eq!(l, &BTreeSet::from([1]));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wheel_lists_are_not_a_blocking_witness() {
        match verify_not_choosable(&wheel4(), &wheel_lists(), 3, 1000).unwrap() {
            ChoosabilityVerdict::WitnessRefuted(r) => {
                assert_eq!(r.wrong_sizes, vec![(crate::construct::WHEEL_CENTER, 4)]);
                assert!(r.coloring.is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pool_checks() {
        let g = plain_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(
            choosability_exhaustive(&g, 3, &BTreeSet::from([1, 2]), 10),
            Err(ChooseError::PoolTooSmall { pool: 2, k: 3 })
        );
        assert_eq!(random_probe(&g, 0, 1, 1, &BTreeSet::from([1]), 10), Err(ChooseError::ZeroK));
    }

    #[test]
    fn random_lists_are_k_subsets_and_reproducible() {
        let g = plain_graph(6, &[]).unwrap();
        let pool: Vec<Color> = (1..=8).collect();
        let a = random_lists(&g, 3, &pool, 42, 7);
        assert_eq!(a, random_lists(&g, 3, &pool, 42, 7));
        assert_ne!(a, random_lists(&g, 3, &pool, 42, 8));
        assert_eq!(a.uniform_size(), Some(3));
    }

    #[test]
    fn exhausted_budget_is_not_a_verdict() {
        let g = plain_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let v = choosability_exhaustive(&g, 3, &(1..=5).collect(), 1).unwrap();
        assert!(matches!(v, ChoosabilityVerdict::Exhausted { .. }));
    }
}
