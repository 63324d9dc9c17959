//! Coloring checker. Deliberately shares nothing with the search engine.

use std::fmt;

use thiserror::Error;

use super::Coloring;
use crate::graph::{Graph, VertexId};
use crate::lists::{Color, ListAssignment};

/// What a coloring is checked against.
#[derive(Debug, Clone, Copy)]
pub enum Constraint<'a> {
    Lists(&'a ListAssignment),
    /// Colors `1..=k`.
    Colors(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Both ends of an edge share a color.
    Monochromatic { u: VertexId, v: VertexId, color: Color },
    /// A vertex uses a color it may not use.
    NotAllowed { vertex: VertexId, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Monochromatic { u, v, color } => write!(f, "edge {u}-{v} has both ends colored {color}"),
            Violation::NotAllowed { vertex, color } => write!(f, "{vertex} may not use color {color}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring leaves {0} uncolored")]
    Partial(VertexId),
    #[error("{} violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<Violation>),
}

/// Checks a total coloring, reporting every violation.
pub fn verify_coloring(g: &Graph, constraint: Constraint<'_>, c: &Coloring) -> Result<(), ColoringError> {
    for v in g.vertices() {
        if c.get(v).is_none() {
            return Err(ColoringError::Partial(*v));
        }
    }
    let mut bad = Vec::new();
    for v in g.vertices() {
        let color = c.get(v).unwrap();
        let allowed = match constraint {
            Constraint::Lists(l) => l.get(v).is_some_and(|list| list.contains(&color)),
            Constraint::Colors(k) => (1..=k).contains(&color),
        };
        if !allowed {
            bad.push(Violation::NotAllowed { vertex: *v, color });
        }
    }
    for (u, v) in g.edges() {
        let color = c.get(&u).unwrap();
        if color == c.get(&v).unwrap() {
            bad.push(Violation::Monochromatic { u, v, color });
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(ColoringError::Violations(bad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::plain_graph;

    #[test]
    fn reports_monochromatic_edge() {
        let g = plain_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c: Coloring =
            [(VertexId::Plain(0), 1), (VertexId::Plain(1), 1), (VertexId::Plain(2), 2)].into_iter().collect();
        assert_eq!(
            verify_coloring(&g, Constraint::Colors(3), &c),
            Err(ColoringError::Violations(vec![Violation::Monochromatic {
                u: VertexId::Plain(0),
                v: VertexId::Plain(1),
                color: 1
            }]))
        );
    }

    #[test]
    fn partial_is_an_error() {
        let g = plain_graph(2, &[(0, 1)]).unwrap();
        let c: Coloring = [(VertexId::Plain(0), 1)].into_iter().collect();
        assert_eq!(verify_coloring(&g, Constraint::Colors(2), &c), Err(ColoringError::Partial(VertexId::Plain(1))));
    }

    #[test]
    fn list_membership_checked() {
        let g = plain_graph(2, &[]).unwrap();
        let l = ListAssignment::uniform(&g, [1, 2]).unwrap();
        let c: Coloring = [(VertexId::Plain(0), 1), (VertexId::Plain(1), 3)].into_iter().collect();
        let Err(ColoringError::Violations(v)) = verify_coloring(&g, Constraint::Lists(&l), &c) else {
            panic!("expected a violation");
        };
        assert_eq!(v, vec![Violation::NotAllowed { vertex: VertexId::Plain(1), color: 3 }]);
    }
}
