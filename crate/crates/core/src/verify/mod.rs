//! Structural certificates and the one-shot audit of the large graph.

mod embed;
mod hamilton;
mod matching;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

pub use embed::{
    apex_embed, face_census, outer_walk, outer_walk_from_layout, planarity_certificate, rotation_from_layout,
    rotation_from_points, EmbedError, FaceCensus, PlanarityCertificate, RotationSystem,
};
pub use hamilton::{hamilton, is_hamiltonian_cycle, HamiltonOutcome, DEFAULT_HAMILTON_BUDGET};
pub use matching::{is_perfect_matching, maximum_matching, perfect_matching, MatchingOutcome};

use crate::choose::{verify_not_choosable, ChoosabilityVerdict};
use crate::graph::{Graph, GraphError, VertexId};
use crate::lists::ListAssignment;
use crate::solve::{chromatic_number, verify_coloring, Chromatic, Constraint, DEFAULT_SOLVE_BUDGET};

/// Deleting `removed` leaves `components_after` pieces. A Hamiltonian graph
/// never splits into more pieces than vertices removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    pub removed: Vec<VertexId>,
    pub components_after: usize,
    pub non_hamiltonian: bool,
}

pub fn cut_certificate(g: &Graph, removed: &BTreeSet<VertexId>) -> Result<CutCertificate, GraphError> {
    let rest = g.delete_vertices(removed)?;
    let components_after = rest.components().len();
    Ok(CutCertificate {
        removed: removed.iter().copied().collect(),
        components_after,
        non_hamiltonian: components_after > removed.len(),
    })
}

/// Vertices of the given degree.
pub fn vertices_of_degree(g: &Graph, degree: usize) -> BTreeSet<VertexId> {
    g.vertices().iter().copied().filter(|v| g.degree(v) == degree).collect()
}

/// Hubs all of whose neighbors have degree 7 once the apex is removed.
pub fn central_hubs(g: &Graph) -> Vec<VertexId> {
    let rest = without_apex(g);
    rest.vertices()
        .iter()
        .copied()
        .filter(|v| v.is_hub() && rest.degree(v) > 0 && rest.neighbors(v).all(|w| rest.degree(&w) == 7))
        .collect()
}

/// The graph minus its apex (unchanged if it has none).
pub fn without_apex(g: &Graph) -> Graph {
    if g.contains(&VertexId::Apex) {
        g.delete_vertices(&BTreeSet::from([VertexId::Apex])).expect("apex is a vertex")
    } else {
        g.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub status: ClaimStatus,
    /// The claim failed only because a search ran out of budget.
    pub exhausted: bool,
    pub certificate: Value,
}

impl Claim {
    fn new(name: &str, pass: bool, certificate: Value) -> Self {
        let status = if pass { ClaimStatus::Pass } else { ClaimStatus::Fail };
        Claim { name: name.to_string(), status, exhausted: false, certificate }
    }

    fn exhausted(mut self) -> Self {
        self.exhausted = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub solve: u64,
    pub hamilton: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { solve: DEFAULT_SOLVE_BUDGET, hamilton: DEFAULT_HAMILTON_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub claims: Vec<Claim>,
    pub versions: BTreeMap<String, String>,
    pub budgets: Budgets,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    /// Some claim failed for lack of budget rather than on the merits.
    pub fn any_exhausted(&self) -> bool {
        self.claims.iter().any(|c| c.exhausted)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Claim names, in report order.
pub const CLAIMS: [&str; 7] = [
    "construction",
    "planarity",
    "chromatic_number_3",
    "not_4_choosable",
    "hamiltonian",
    "minus_apex_not_hamiltonian",
    "minus_apex_perfect_matching",
];

fn construction_claim(g: &Graph) -> Claim {
    let hubs: Vec<VertexId> = g.vertices().iter().copied().filter(VertexId::is_hub).collect();
    let corners = g.vertices().iter().filter(|v| v.is_corner()).count();
    let apex_degree = g.degree(&VertexId::Apex);
    let hist = g.degree_histogram();
    let rest_hist = without_apex(g).degree_histogram();
    let central = central_hubs(g);
    let hub_degrees_four = hubs.iter().all(|h| g.degree(h) == 4);
    let want_hist = BTreeMap::from([(4, 40), (6, 6), (8, 16), (42, 1)]);
    let pass = g.n() == 63
        && g.m() == 183
        && hubs.len() == 20
        && hub_degrees_four
        && corners == 42
        && apex_degree == 42
        && hist == want_hist
        && central.len() == 4;
    Claim::new(
        "construction",
        pass,
        json!({
            "vertices": g.n(),
            "edges": g.m(),
            "hubs": hubs.len(),
            "hub_degrees_all_4": hub_degrees_four,
            "corners": corners,
            "apex_degree": apex_degree,
            "degree_histogram": hist,
            "minus_apex_degree_histogram": rest_hist,
            "central_hubs": central,
        }),
    )
}

fn planarity_claim(g: &Graph) -> Claim {
    match planarity_certificate(g) {
        Ok(cert) => {
            let pass = cert.proves_planar() && cert.faces == 122 && cert.all_triangles;
            Claim::new("planarity", pass, json!(cert))
        }
        Err(e) => Claim::new("planarity", false, json!({ "error": e.to_string() })),
    }
}

fn chromatic_claim(g: &Graph, budget: u64) -> Claim {
    match chromatic_number(g, 5, budget) {
        Ok(Chromatic::Found { k, witness, below }) => {
            let replay = verify_coloring(g, Constraint::Colors(k), &witness).is_ok();
            let below_unsat = below.as_ref().is_some_and(|b| b.is_unsat());
            Claim::new(
                "chromatic_number_3",
                k == 3 && replay && below_unsat,
                json!({
                    "k": k,
                    "witness": witness,
                    "witness_replayed": replay,
                    "below": below.map(|b| json!({"status": b.status, "nodes": b.nodes})),
                }),
            )
        }
        Ok(Chromatic::Exhausted { upper }) => {
            Claim::new("chromatic_number_3", false, json!({ "exhausted_up_to": upper })).exhausted()
        }
        Err(e) => Claim::new("chromatic_number_3", false, json!({ "error": e.to_string() })),
    }
}

fn choosability_claim(g: &Graph, lists: &ListAssignment, budget: u64) -> Claim {
    match verify_not_choosable(g, lists, 4, budget) {
        Ok(v) => {
            let pass = matches!(v, ChoosabilityVerdict::WitnessConfirmed { .. });
            let claim = Claim::new("not_4_choosable", pass, json!(v));
            if matches!(v, ChoosabilityVerdict::Exhausted { .. }) {
                claim.exhausted()
            } else {
                claim
            }
        }
        Err(e) => Claim::new("not_4_choosable", false, json!({ "error": e.to_string() })),
    }
}

fn hamilton_claim(g: &Graph, budget: u64) -> Claim {
    let out = hamilton(g, budget);
    let pass = match &out {
        HamiltonOutcome::Cycle { cycle, .. } => cycle.len() == 63 && is_hamiltonian_cycle(g, cycle),
        _ => false,
    };
    let claim = Claim::new("hamiltonian", pass, json!(out));
    if matches!(out, HamiltonOutcome::Exhausted { .. }) {
        claim.exhausted()
    } else {
        claim
    }
}

fn cut_claim(g: &Graph) -> Claim {
    let rest = without_apex(g);
    let seven = vertices_of_degree(&rest, 7);
    match cut_certificate(&rest, &seven) {
        Ok(cert) => {
            let pass = cert.non_hamiltonian && cert.removed.len() == 16;
            Claim::new("minus_apex_not_hamiltonian", pass, json!(cert))
        }
        Err(e) => Claim::new("minus_apex_not_hamiltonian", false, json!({ "error": e.to_string() })),
    }
}

fn matching_claim(g: &Graph) -> Claim {
    let rest = without_apex(g);
    let out = perfect_matching(&rest);
    let pass = match &out {
        MatchingOutcome::Perfect { edges } => edges.len() == 31 && is_perfect_matching(&rest, edges),
        _ => false,
    };
    Claim::new("minus_apex_perfect_matching", pass, json!(out))
}

/// Runs one named claim; `None` for an unknown name.
pub fn check_claim(name: &str, g: &Graph, lists: &ListAssignment, budgets: Budgets) -> Option<Claim> {
    Some(match name {
        "construction" => construction_claim(g),
        "planarity" => planarity_claim(g),
        "chromatic_number_3" => chromatic_claim(g, budgets.solve),
        "not_4_choosable" => choosability_claim(g, lists, budgets.solve),
        "hamiltonian" => hamilton_claim(g, budgets.hamilton),
        "minus_apex_not_hamiltonian" => cut_claim(g),
        "minus_apex_perfect_matching" => matching_claim(g),
        _ => return None,
    })
}

/// Runs every claim against `g` and `lists`; failures are recorded, never raised.
pub fn audit_graph(g: &Graph, lists: &ListAssignment, budgets: Budgets) -> Report {
    let claims = CLAIMS.iter().map(|name| check_claim(name, g, lists, budgets).expect("known claim")).collect();
    let versions = BTreeMap::from([("listcolor".to_string(), env!("CARGO_PKG_VERSION").to_string())]);
    Report { claims, versions, budgets }
}

/// Audit of the built-in graph and lists with default budgets.
pub fn audit() -> Report {
    audit_graph(&crate::construct::mirzakhani(), &crate::construct::canonical_lists(), Budgets::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::plain_graph;

    #[test]
    fn path_cut_and_cycle_cut() {
        let path = plain_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let c = cut_certificate(&path, &BTreeSet::from([VertexId::Plain(1)])).unwrap();
        assert_eq!((c.components_after, c.non_hamiltonian), (2, true));
        let c4 = plain_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = cut_certificate(&c4, &BTreeSet::from([VertexId::Plain(0)])).unwrap();
        assert_eq!((c.components_after, c.non_hamiltonian), (1, false));
        assert!(cut_certificate(&c4, &BTreeSet::from([VertexId::Plain(9)])).is_err());
    }
}
