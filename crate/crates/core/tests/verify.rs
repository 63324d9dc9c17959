//! Structural certificates against brute force and known graphs.

mod common;

use std::collections::BTreeSet;

use common::*;
use listcolor::construct::{canonical_lists, gadget, mirzakhani, wheel4};
use listcolor::geometry::Point;
use listcolor::graph::plain_graph;
use listcolor::verify::*;
use listcolor::{Graph, Rational, VertexId};
use rand::Rng;

fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    plain_graph(10, &e).unwrap()
}

/// Hamiltonian cycle by trying every ordering that starts at vertex 0.
fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let vs = g.vertices().to_vec();
    fn extend(g: &Graph, vs: &[VertexId], path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if path.len() == vs.len() {
            return g.has_edge(&vs[*path.last().unwrap()], &vs[path[0]]);
        }
        for i in 0..vs.len() {
            if !used[i] && g.has_edge(&vs[*path.last().unwrap()], &vs[i]) {
                used[i] = true;
                path.push(i);
                if extend(g, vs, path, used) {
                    return true;
                }
                path.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    extend(g, &vs, &mut vec![0], &mut used)
}

/// Largest matching by trying every edge subset.
fn brute_matching_size(g: &Graph) -> usize {
    let edges = g.edges();
    fn go(edges: &[(VertexId, VertexId)], i: usize, used: &mut BTreeSet<VertexId>) -> usize {
        if i == edges.len() {
            return 0;
        }
        let mut best = go(edges, i + 1, used);
        let (u, v) = edges[i];
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            best = best.max(1 + go(edges, i + 1, used));
            used.remove(&u);
            used.remove(&v);
        }
        best
    }
    go(&edges, 0, &mut BTreeSet::new())
}

#[test]
fn petersen_is_not_hamiltonian() {
    let p = petersen();
    assert!(matches!(hamilton(&p, DEFAULT_HAMILTON_BUDGET), HamiltonOutcome::NoneProved { .. }));
    assert!(!brute_hamiltonian(&p));
    assert!(matches!(perfect_matching(&p), MatchingOutcome::Perfect { .. }));
}

#[test]
fn hamilton_matches_brute_force() {
    let mut r = rng(31);
    for _ in 0..300 {
        let n = r.gen_range(1..=10);
        let p = r.gen_range(0.25..0.8);
        let g = random_graph(&mut r, n, p);
        let want = brute_hamiltonian(&g);
        match hamilton(&g, u64::MAX) {
            HamiltonOutcome::Cycle { cycle, .. } => {
                assert!(want, "{:?}", g.edges());
                assert!(is_hamiltonian_cycle(&g, &cycle));
            }
            HamiltonOutcome::NoneProved { .. } => assert!(!want, "{:?}", g.edges()),
            HamiltonOutcome::Exhausted { .. } => panic!("unbounded search ran out"),
        }
    }
}

#[test]
fn matching_matches_brute_force() {
    let mut r = rng(32);
    for _ in 0..150 {
        let n = r.gen_range(0..=10);
        let p = r.gen_range(0.1..0.6);
        let g = random_graph(&mut r, n, p);
        let m = maximum_matching(&g);
        let covered: BTreeSet<VertexId> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
        assert_eq!(covered.len(), 2 * m.len(), "edges are disjoint");
        assert!(m.iter().all(|(u, v)| g.has_edge(u, v)));
        assert_eq!(m.len(), brute_matching_size(&g));
        match perfect_matching(&g) {
            MatchingOutcome::Perfect { edges } => assert!(is_perfect_matching(&g, &edges)),
            _ => assert!(2 * m.len() < g.n()),
        }
    }
}

#[test]
fn big_graph_structure() {
    let m = mirzakhani();
    match hamilton(&m, DEFAULT_HAMILTON_BUDGET) {
        HamiltonOutcome::Cycle { cycle, .. } => {
            assert_eq!(cycle.len(), 63);
            assert!(is_hamiltonian_cycle(&m, &cycle));
        }
        other => panic!("{other:?}"),
    }
    let rest = without_apex(&m);
    let seven = vertices_of_degree(&rest, 7);
    assert_eq!(seven.len(), 16);
    assert!(seven.iter().all(|v| v.is_corner()));
    let cut = cut_certificate(&rest, &seven).unwrap();
    // recount the pieces independently of the certificate
    let pieces = rest.delete_vertices(&seven).unwrap().components().len();
    assert_eq!((cut.components_after, pieces), (17, 17));
    assert!(cut.non_hamiltonian);
    match perfect_matching(&rest) {
        MatchingOutcome::Perfect { edges } => {
            assert_eq!(edges.len(), 31);
            assert!(is_perfect_matching(&rest, &edges));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn planarity_of_the_built_graphs() {
    let m = planarity_certificate(&mirzakhani()).unwrap();
    assert_eq!((m.vertices, m.edges, m.faces, m.euler), (63, 183, 122, 2));
    assert!(m.all_triangles && m.proves_planar());
    assert_eq!(m.outer_walk_length, Some(42));
    for g in [wheel4(), gadget().graph, without_apex(&mirzakhani())] {
        let c = planarity_certificate(&g).unwrap();
        assert!(c.proves_planar(), "{c:?}");
    }
}

#[test]
fn crossing_drawing_is_not_a_certificate() {
    // K4 drawn with its two diagonals crossing: the traced faces miss Euler's formula
    let g = plain_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
    let pts = [(0, 0), (1, 0), (1, 1), (0, 1)];
    let layout = (0..4)
        .map(|i| (VertexId::Plain(i), Point::new(Rational::from(pts[i as usize].0), Rational::from(pts[i as usize].1))))
        .collect();
    let g = g.with_layout(layout).unwrap();
    let census = face_census(&rotation_from_layout(&g).unwrap());
    assert_ne!(census.euler, 2);
}

#[test]
fn apex_edge_mutants_stay_hamiltonian() {
    let m = mirzakhani();
    for v in m.neighbors(&VertexId::Apex).collect::<Vec<_>>() {
        let g = m.without_edge(&VertexId::Apex, &v);
        match hamilton(&g, DEFAULT_HAMILTON_BUDGET) {
            HamiltonOutcome::Cycle { cycle, .. } => assert!(is_hamiltonian_cycle(&g, &cycle)),
            other => panic!("without apex-{v}: {other:?}"),
        }
    }
}

#[test]
fn apex_edge_deletion_breaks_the_audit() {
    let m = mirzakhani();
    let cut = m.without_edge(&VertexId::Apex, &VertexId::corner(1, 1));
    let report = audit_graph(&cut, &canonical_lists(), Budgets::default());
    assert!(!report.all_pass());
    assert!(!report.claim("construction").unwrap().passed());
}

#[test]
fn audit_passes_and_is_stable() {
    let a = audit();
    assert!(a.all_pass(), "{}", a.to_json());
    assert_eq!(a.to_json(), audit().to_json());
    assert_eq!(a.claims.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), CLAIMS);
    assert_eq!(a.budgets, Budgets { solve: 10_000_000, hamilton: 100_000_000 });
}
