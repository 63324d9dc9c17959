//! Exact list-coloring: decision, counting, enumeration, chromatic number and
//! CNF export.
//!
//! The engine branches on the vertex with the fewest remaining colors (ties
//! broken by vertex order), tries colors in ascending order, removes each
//! chosen color from the neighbors' domains and immediately assigns any vertex
//! left with a single color. Budgets count branching nodes, so results are
//! reproducible across machines.

mod check;
mod cnf;
mod colorset;
mod engine;

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use check::{verify_coloring, ColoringError, Constraint, Violation};
pub use cnf::{to_cnf, Cnf};
pub use colorset::{ColorSet, MAX_PALETTE};

use crate::graph::{Graph, VertexId};
use crate::lists::{Color, ListAssignment, ListError};
use engine::{Halt, Problem, Search, VarOrder};

/// Default node budget for a single solve.
pub const DEFAULT_SOLVE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("vertex {0} has no list")]
    MissingList(VertexId),
    #[error("palette has {0} colors; at most 64 are supported")]
    PaletteTooLarge(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error(transparent)]
    Lists(#[from] ListError),
}

/// Vertex to color map, total or partial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring(BTreeMap<VertexId, Color>);

impl Coloring {
    pub fn new() -> Self {
        Coloring(BTreeMap::new())
    }

    pub fn get(&self, v: &VertexId) -> Option<Color> {
        self.0.get(v).copied()
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        self.0.insert(v, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Color)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every `(v, c)` of `partial` also holds here.
    pub fn extends(&self, partial: &Coloring) -> bool {
        partial.iter().all(|(v, c)| self.get(v) == Some(*c))
    }
}

impl FromIterator<(VertexId, Color)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (VertexId, Color)>>(iter: I) -> Self {
        Coloring(iter.into_iter().collect())
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, c) in &self.0 {
            map.serialize_entry(&v.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Coloring(BTreeMap::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Exhausted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    pub witness: Option<Coloring>,
    pub nodes: u64,
    pub propagations: u64,
    pub budget: u64,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    pub fn is_unsat(&self) -> bool {
        self.status == Status::Unsat
    }

    pub fn stats(&self) -> Stats {
        Stats { nodes: self.nodes, propagations: self.propagations }
    }
}

fn to_coloring(problem: &Problem, colors: &[usize]) -> Coloring {
    problem.ids.iter().zip(colors).map(|(v, &c)| (*v, problem.palette[c])).collect()
}

/// Decides whether `g` has a proper coloring from `lists`.
///
/// Every SAT witness is replayed through [`verify_coloring`] before it is returned.
pub fn decide(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<SolveResult, SolveError> {
    let problem = Problem::compile(g, lists)?;
    let mut search = Search::new(&problem, VarOrder::MinDomain, budget);
    let mut found = None;
    let outcome = search.run(&mut |colors: &[usize]| {
        found = Some(to_coloring(&problem, colors));
        ControlFlow::Break(())
    });
    let status = match (outcome, &found) {
        (Err(Halt::Visitor), Some(_)) => Status::Sat,
        (Err(Halt::Budget), _) => Status::Exhausted,
        _ => Status::Unsat,
    };
    if let Some(w) = &found {
        if let Err(e) = verify_coloring(g, Constraint::Lists(lists), w) {
            panic!("search produced an invalid witness: {e}");
        }
    }
    Ok(SolveResult {
        status,
        witness: found,
        nodes: search.counters.nodes,
        propagations: search.counters.propagations,
        budget,
    })
}

/// Outcome of [`count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountResult {
    Exact { count: u64, stats: Stats },
    Exhausted { stats: Stats },
}

impl CountResult {
    pub fn exact(&self) -> Option<u64> {
        match self {
            CountResult::Exact { count, .. } => Some(*count),
            CountResult::Exhausted { .. } => None,
        }
    }
}

/// Number of proper list colorings.
pub fn count(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<CountResult, SolveError> {
    let problem = Problem::compile(g, lists)?;
    let mut search = Search::new(&problem, VarOrder::MinDomain, budget);
    let mut total = 0u64;
    let outcome = search.run(&mut |_: &[usize]| {
        total += 1;
        ControlFlow::Continue(())
    });
    let stats = Stats { nodes: search.counters.nodes, propagations: search.counters.propagations };
    Ok(match outcome {
        Err(Halt::Budget) => CountResult::Exhausted { stats },
        _ => CountResult::Exact { count: total, stats },
    })
}

/// Outcome of [`enumerate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationEnd {
    /// Every proper coloring was visited.
    Complete {
        visited: u64,
        stats: Stats,
    },
    /// The visitor asked to stop.
    Stopped {
        visited: u64,
        stats: Stats,
    },
    Exhausted {
        visited: u64,
        stats: Stats,
    },
}

impl EnumerationEnd {
    pub fn is_complete(&self) -> bool {
        matches!(self, EnumerationEnd::Complete { .. })
    }
}

/// Streams every proper list coloring to `visit` in lexicographic order of the
/// color vector (vertices in identity order).
pub fn enumerate<F>(g: &Graph, lists: &ListAssignment, budget: u64, mut visit: F) -> Result<EnumerationEnd, SolveError>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    let problem = Problem::compile(g, lists)?;
    let mut search = Search::new(&problem, VarOrder::Static, budget);
    let mut visited = 0u64;
    let outcome = search.run(&mut |colors: &[usize]| {
        visited += 1;
        visit(&to_coloring(&problem, colors))
    });
    let stats = Stats { nodes: search.counters.nodes, propagations: search.counters.propagations };
    Ok(match outcome {
        Ok(()) => EnumerationEnd::Complete { visited, stats },
        Err(Halt::Visitor) => EnumerationEnd::Stopped { visited, stats },
        Err(Halt::Budget) => EnumerationEnd::Exhausted { visited, stats },
    })
}

/// Collects all proper list colorings, or `None` if the budget runs out.
pub fn all_colorings(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<Option<Vec<Coloring>>, SolveError> {
    let mut out = Vec::new();
    let end = enumerate(g, lists, budget, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(end.is_complete().then_some(out))
}

/// Least `k` with a proper `k`-coloring, with both bounds certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chromatic {
    Found {
        k: u32,
        /// A proper coloring with colors `1..=k`.
        witness: Coloring,
        /// The UNSAT run for `k - 1` colors (absent when `k == 1`).
        below: Option<SolveResult>,
    },
    /// No `k <= upper` was certified (budget exhausted or bound too small).
    Exhausted { upper: u32 },
}

pub fn chromatic_number(g: &Graph, upper: u32, budget: u64) -> Result<Chromatic, SolveError> {
    if g.is_empty() {
        return Err(SolveError::EmptyGraph);
    }
    let mut below = None;
    for k in 1..=upper.min(MAX_PALETTE as u32) {
        let lists = ListAssignment::uniform(g, 1..=k)?;
        let res = decide(g, &lists, budget)?;
        match res.status {
            Status::Sat => {
                let witness = res.witness.expect("SAT carries a witness");
                return Ok(Chromatic::Found { k, witness, below });
            }
            Status::Unsat => below = Some(res),
            Status::Exhausted => break,
        }
    }
    Ok(Chromatic::Exhausted { upper })
}
