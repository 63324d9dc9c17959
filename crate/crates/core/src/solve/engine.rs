//! Backtracking search with forward checking, unit propagation and
//! conflict-directed backjumping.
//!
//! Every color removed from a domain remembers the set of decision levels that
//! caused the removal. When a domain empties, the union of those sets is the
//! conflict; a decision whose level is not in the conflict of a failed child
//! cannot repair it, so its remaining colors are skipped. Backjumping only
//! prunes subtrees without solutions, so results and the order in which
//! solutions are produced match plain chronological backtracking.

use std::ops::ControlFlow;

use super::colorset::{ColorSet, MAX_PALETTE};
use super::SolveError;
use crate::graph::{Graph, VertexId};
use crate::lists::{Color, ListAssignment};

/// How the next branching vertex is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VarOrder {
    /// Smallest remaining domain, ties by vertex order.
    MinDomain,
    /// Vertex order. Solutions then come out in lexicographic order.
    Static,
}

/// Graph and lists compiled to indices and bit sets.
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub ids: Vec<VertexId>,
    pub adj: Vec<Vec<usize>>,
    pub palette: Vec<Color>,
    pub domains: Vec<ColorSet>,
}

impl Problem {
    pub fn compile(g: &Graph, lists: &ListAssignment) -> Result<Self, SolveError> {
        let palette: Vec<Color> = lists.palette().iter().copied().collect();
        if palette.len() > MAX_PALETTE {
            return Err(SolveError::PaletteTooLarge(palette.len()));
        }
        let mut domains = Vec::with_capacity(g.n());
        for v in g.vertices() {
            let list = lists.get(v).ok_or(SolveError::MissingList(*v))?;
            domains.push(list.iter().map(|c| palette.binary_search(c).expect("lists lie in the palette")).collect());
        }
        Ok(Problem {
            ids: g.vertices().to_vec(),
            adj: (0..g.n()).map(|i| g.adj(i).to_vec()).collect(),
            palette,
            domains,
        })
    }
}

/// Set of decision levels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Levels(Vec<u64>);

impl Levels {
    fn single(level: usize) -> Self {
        let mut s = Levels::default();
        s.insert(level);
        s
    }

    fn insert(&mut self, level: usize) {
        let w = level / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (level % 64);
    }

    fn remove(&mut self, level: usize) {
        if let Some(x) = self.0.get_mut(level / 64) {
            *x &= !(1 << (level % 64));
        }
    }

    fn contains(&self, level: usize) -> bool {
        self.0.get(level / 64).is_some_and(|x| x >> (level % 64) & 1 == 1)
    }

    fn union_with(&mut self, other: &Levels) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Counters {
    pub nodes: u64,
    pub propagations: u64,
}

pub(crate) enum Halt {
    Budget,
    Visitor,
}

pub(crate) struct Search<'p> {
    problem: &'p Problem,
    domains: Vec<ColorSet>,
    color: Vec<Option<usize>>,
    /// `reason[v][c]`: levels responsible for the latest removal of `c` from `v`.
    reason: Vec<Vec<Levels>>,
    trail: Vec<(usize, ColorSet, Option<usize>)>,
    queue: Vec<usize>,
    failure: Levels,
    order: VarOrder,
    budget: u64,
    pub counters: Counters,
}

impl<'p> Search<'p> {
    pub fn new(problem: &'p Problem, order: VarOrder, budget: u64) -> Self {
        let n = problem.ids.len();
        Search {
            problem,
            domains: problem.domains.clone(),
            color: vec![None; n],
            reason: vec![vec![Levels::default(); problem.palette.len()]; n],
            trail: Vec::new(),
            queue: Vec::new(),
            failure: Levels::default(),
            order,
            budget,
            counters: Counters::default(),
        }
    }

    /// Visits every proper list coloring, stopping early when the visitor breaks
    /// or the node budget runs out. Colorings are palette indices per vertex.
    pub fn run<F>(&mut self, visit: &mut F) -> Result<(), Halt>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.domains.iter().any(|d| d.is_empty()) {
            return Ok(());
        }
        let units: Vec<usize> = (0..self.domains.len()).filter(|&v| self.domains[v].len() == 1).collect();
        self.queue.extend(units);
        if !self.propagate() {
            return Ok(());
        }
        self.descend(0, visit).map(|_| ())
    }

    /// Returns `None` if a solution was visited below this node, otherwise the
    /// conflict (decision levels) explaining why the subtree has none.
    fn descend<F>(&mut self, level: usize, visit: &mut F) -> Result<Option<Levels>, Halt>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(v) = self.pick() else {
            let full: Vec<usize> = self.color.iter().map(|c| c.expect("all assigned")).collect();
            return match visit(&full) {
                ControlFlow::Continue(()) => Ok(None),
                ControlFlow::Break(()) => Err(Halt::Visitor),
            };
        };
        let here = level + 1;
        let mut conflict = self.removal_reasons(v, None);
        let mut solved = false;
        for c in self.domains[v].iter() {
            self.counters.nodes += 1;
            if self.counters.nodes > self.budget {
                return Err(Halt::Budget);
            }
            let mark = self.trail.len();
            self.queue.clear();
            let below = if self.assign(v, c, &Levels::single(here)) && self.propagate() {
                self.descend(here, visit)?
            } else {
                Some(std::mem::take(&mut self.failure))
            };
            self.undo(mark);
            match below {
                None => solved = true,
                Some(mut cs) => {
                    if !cs.contains(here) {
                        // no color of v can fix this; skip the rest
                        return Ok(if solved { None } else { Some(cs) });
                    }
                    cs.remove(here);
                    conflict.union_with(&cs);
                }
            }
        }
        Ok(if solved { None } else { Some(conflict) })
    }

    fn pick(&self) -> Option<usize> {
        let mut open = (0..self.color.len()).filter(|&v| self.color[v].is_none());
        match self.order {
            VarOrder::Static => open.next(),
            // min_by_key keeps the first minimum, i.e. the least vertex
            VarOrder::MinDomain => open.min_by_key(|&v| self.domains[v].len()),
        }
    }

    /// Union of the reasons for every original color of `v` missing from its
    /// current domain, optionally ignoring one color.
    fn removal_reasons(&self, v: usize, except: Option<usize>) -> Levels {
        let mut out = Levels::default();
        for c in self.problem.domains[v].iter() {
            if Some(c) != except && !self.domains[v].contains(c) {
                out.union_with(&self.reason[v][c]);
            }
        }
        out
    }

    fn assign(&mut self, v: usize, c: usize, why: &Levels) -> bool {
        self.trail.push((v, self.domains[v], self.color[v]));
        self.domains[v] = ColorSet::singleton(c);
        self.color[v] = Some(c);
        for &w in &self.problem.adj[v] {
            if self.color[w].is_some() || !self.domains[w].contains(c) {
                continue;
            }
            self.trail.push((w, self.domains[w], None));
            self.domains[w].remove(c);
            self.reason[w][c] = why.clone();
            self.counters.propagations += 1;
            match self.domains[w].len() {
                0 => {
                    self.failure = self.removal_reasons(w, None);
                    return false;
                }
                1 => self.queue.push(w),
                _ => {}
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop() {
            if self.color[w].is_some() {
                continue;
            }
            let Some(c) = self.domains[w].first() else {
                self.failure = self.removal_reasons(w, None);
                return false;
            };
            let why = self.removal_reasons(w, Some(c));
            if !self.assign(w, c, &why) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, dom, col) = self.trail.pop().unwrap();
            self.domains[v] = dom;
            self.color[v] = col;
        }
    }
}
