//! CNF encoding of list coloring for external SAT solvers.

use std::fmt::Write as _;

use super::SolveError;
use crate::graph::{Graph, VertexId};
use crate::lists::{Color, ListAssignment};

/// A CNF formula with one variable per (vertex, allowed color).
///
/// Only at-least-one and conflict clauses are emitted. A satisfying assignment
/// may set several colors true at a vertex; taking the least true color at each
/// vertex always yields a proper list coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    /// Clauses as DIMACS literals (variables are 1-based).
    pub clauses: Vec<Vec<i32>>,
    /// `legend[i]` is variable `i + 1`.
    pub legend: Vec<(VertexId, Color)>,
}

pub fn to_cnf(g: &Graph, lists: &ListAssignment) -> Result<Cnf, SolveError> {
    lists
        .covers(g)
        .map_err(|_| SolveError::MissingList(*g.vertices().iter().find(|v| lists.get(v).is_none()).unwrap()))?;
    let mut legend = Vec::new();
    let mut var_of = std::collections::BTreeMap::new();
    for v in g.vertices() {
        for &c in lists.get(v).unwrap() {
            legend.push((*v, c));
            var_of.insert((*v, c), legend.len() as i32);
        }
    }
    let mut clauses = Vec::new();
    for v in g.vertices() {
        clauses.push(lists.get(v).unwrap().iter().map(|&c| var_of[&(*v, c)]).collect());
    }
    for (u, v) in g.edges() {
        let (lu, lv) = (lists.get(&u).unwrap(), lists.get(&v).unwrap());
        for c in lu.intersection(lv) {
            clauses.push(vec![-var_of[&(u, *c)], -var_of[&(v, *c)]]);
        }
    }
    Ok(Cnf { num_vars: legend.len(), clauses, legend })
}

impl Cnf {
    /// DIMACS CNF text with the variable legend as comments.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str("c list coloring; at-most-one clauses omitted, take the least true color per vertex\n");
        for (i, (v, c)) in self.legend.iter().enumerate() {
            writeln!(out, "c v{} = {v}:{c}", i + 1).unwrap();
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    /// Evaluates the formula under a truth assignment (`truth[i]` is variable `i + 1`).
    pub fn evaluate(&self, truth: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                let val = truth[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    val
                } else {
                    !val
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::plain_graph;

    #[test]
    fn isolated_vertex_two_vars_one_clause() {
        let g = plain_graph(1, &[]).unwrap();
        let cnf = to_cnf(&g, &ListAssignment::uniform(&g, [1, 2]).unwrap()).unwrap();
        assert_eq!((cnf.num_vars, cnf.clauses.len()), (2, 1));
    }

    #[test]
    fn triangle_two_colors() {
        let g = plain_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let cnf = to_cnf(&g, &ListAssignment::uniform(&g, [1, 2]).unwrap()).unwrap();
        assert_eq!(cnf.num_vars, 6);
        assert_eq!(cnf.clauses.len(), 3 + 3 * 2);
        let sat = (0u32..64).any(|mask| {
            let truth: Vec<bool> = (0..6).map(|i| mask >> i & 1 == 1).collect();
            cnf.evaluate(&truth)
        });
        assert!(!sat);
        let text = cnf.to_dimacs();
        assert!(text.contains("p cnf 6 9\n"));
        assert!(text.contains("c v1 = plain:0:1\n"));
    }
}
