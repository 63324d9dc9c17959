//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use common::*;
use listcolor::choose::*;
use listcolor::construct::*;
use listcolor::graph::plain_graph;
use listcolor::proof::*;
use listcolor::solve::*;
use listcolor::verify::*;
use listcolor::{ListAssignment, VertexId};
use rand::Rng;

const PROBE_SEED: u64 = 20261018;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn construction() -> Outcome {
    let m = mirzakhani();
    let hubs: Vec<_> = m.vertices().iter().filter(|v| v.is_hub()).collect();
    let hist = m.degree_histogram();
    let central = central_hubs(&m);
    let pass = m.n() == 63
        && m.degree(&VertexId::Apex) == 42
        && hubs.len() == 20
        && hubs.iter().all(|h| m.degree(h) == 4)
        && m.m() == 183
        && hist == BTreeMap::from([(4, 40), (6, 6), (8, 16), (42, 1)])
        && central.len() == 4;
    check(pass, format!("|V|={} |E|={} hubs={} histogram={hist:?} central={}", m.n(), m.m(), hubs.len(), central.len()))
}

fn theorem() -> Outcome {
    let m = mirzakhani();
    let l = canonical_lists();
    let d = decide(&m, &l, 10_000_000).unwrap();
    let v = verify_not_choosable(&m, &l, 4, 10_000_000).unwrap();
    let confirmed = matches!(v, ChoosabilityVerdict::WitnessConfirmed { .. });
    check(
        d.is_unsat() && confirmed,
        format!("decide {:?} in {} nodes; witness confirmed: {confirmed}", d.status, d.nodes),
    )
}

fn chromatic() -> Outcome {
    let m = mirzakhani();
    match chromatic_number(&m, 5, 10_000_000).unwrap() {
        Chromatic::Found { k, witness, below } => {
            let ok = verify_coloring(&m, Constraint::Colors(3), &witness).is_ok();
            let two_unsat = below.as_ref().is_some_and(|b| b.is_unsat());
            check(k == 3 && ok && two_unsat, format!("k={k} witness verified: {ok}; k=2 UNSAT: {two_unsat}"))
        }
        other => check(false, format!("{other:?}")),
    }
}

fn planarity() -> Outcome {
    let m = mirzakhani();
    let base = without_apex(&m);
    let rot = rotation_from_layout(&base).unwrap();
    let walk = outer_walk_from_layout(&base).unwrap();
    let full = apex_embed(&m, &rot, &walk).unwrap();
    let c = face_census(&full);
    let pass = c.euler == 2 && c.face_count == 122 && c.all_triangles();
    check(
        pass,
        format!(
            "V={} E={} F={} euler={} faces by length {:?}",
            c.vertices,
            c.edges,
            c.face_count,
            c.euler,
            c.length_histogram()
        ),
    )
}

fn lemmas() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for j in 1..=SECTIONS {
        let o = gadget_lemma(j).unwrap();
        pass &= o.reduced == Status::Unsat && o.unreduced == Status::Sat;
        parts.push(format!("j={j}: {:?}/{:?}", o.reduced, o.unreduced));
    }
    check(pass, parts.join(", "))
}

fn forcing_facts() -> Outcome {
    let a = wheel_forcing(WHEEL_SW, 5).unwrap();
    let b = wheel_forcing(WHEEL_SE, 4).unwrap();
    let sw5 = a.forced.get(&WHEEL_NW) == Some(3) && a.forced.get(&WHEEL_SE) == Some(3);
    let se4 = b.forced.get(&WHEEL_NE) == Some(2) && b.forced.get(&WHEEL_SW) == Some(2);
    let f = forcing_families().unwrap();
    let want: BTreeSet<CornerPattern> = [[5, 3, 2, 4], [2, 4, 5, 3], [4, 5, 3, 2]].into_iter().collect();
    let fam = f.passed && f.patterns == want;
    check(
        sw5 && se4 && fam,
        format!("sw=5 forces nw=se=3: {sw5}; se=4 forces ne=sw=2: {se4}; families {:?}", f.patterns),
    )
}

fn exercises() -> Outcome {
    let m = mirzakhani();
    let (ham, nodes) = match hamilton(&m, 100_000_000) {
        HamiltonOutcome::Cycle { cycle, nodes } => (cycle.len() == 63 && is_hamiltonian_cycle(&m, &cycle), nodes),
        HamiltonOutcome::NoneProved { nodes } | HamiltonOutcome::Exhausted { nodes, .. } => (false, nodes),
    };
    let rest = without_apex(&m);
    let seven = vertices_of_degree(&rest, 7);
    let cut = cut_certificate(&rest, &seven).unwrap();
    let recount = rest.delete_vertices(&seven).unwrap().components().len();
    let cut_ok =
        seven.len() == 16 && seven.iter().all(|v| v.is_corner()) && cut.components_after == 17 && recount == 17;
    let matching = match perfect_matching(&rest) {
        MatchingOutcome::Perfect { edges } => edges.len() == 31 && is_perfect_matching(&rest, &edges),
        _ => false,
    };
    check(
        ham && cut_ok && matching,
        format!(
            "63-cycle in {nodes} nodes: {ham}; cut 16 -> {} components: {cut_ok}; 31-edge matching: {matching}",
            cut.components_after
        ),
    )
}

fn probe() -> Outcome {
    let m = mirzakhani();
    let pool: BTreeSet<u32> = (1..=10).collect();
    match random_probe(&m, 5, 1000, PROBE_SEED, &pool, 10_000_000) {
        Ok(r) => check(
            r.successes == 1000 && r.trials == 1000,
            format!("{}/{} colorable, seed {}", r.successes, r.trials, r.seed),
        ),
        Err(e) => check(false, e.to_string()),
    }
}

fn oracle_suite() -> Outcome {
    let mut r = rng(9);
    let mut graphs = 0;
    let mut bad = 0;
    for n in 0..=12u32 {
        for round in 0..17 {
            let p = [0.25, 0.4, 0.55, 0.7][round % 4];
            let g = random_graph(&mut r, n, p);
            let lists = random_list_assignment(&mut r, &g, 2 + (round % 3) as u32);
            let truth = brute_colorings(&g, &lists);
            let d = decide(&g, &lists, u64::MAX).unwrap();
            let c = count(&g, &lists, u64::MAX).unwrap().exact();
            if d.is_sat() == truth.is_empty() || c != Some(truth.len() as u64) {
                bad += 1;
            }
            graphs += 1;
        }
    }
    let mut cnf_checked = 0;
    let mut cnf_bad = 0;
    while cnf_checked < 80 {
        let n = r.gen_range(1..=10);
        let g = random_graph(&mut r, n, 0.5);
        let palette = if n <= 6 { 3 } else { 2 };
        let lists = random_list_assignment(&mut r, &g, palette);
        let cnf = to_cnf(&g, &lists).unwrap();
        if cnf.num_vars > 20 {
            continue;
        }
        let mut truth = vec![false; cnf.num_vars];
        let sat = (0u32..1 << cnf.num_vars).any(|mask| {
            for (i, t) in truth.iter_mut().enumerate() {
                *t = mask >> i & 1 == 1;
            }
            cnf.evaluate(&truth)
        });
        if sat != decide(&g, &lists, u64::MAX).unwrap().is_sat() {
            cnf_bad += 1;
        }
        cnf_checked += 1;
    }
    check(
        graphs >= 200 && bad == 0 && cnf_bad == 0,
        format!("{graphs} graphs, {bad} decide/count mismatches; {cnf_checked} CNF instances, {cnf_bad} mismatches"),
    )
}

fn small_choosability() -> Outcome {
    let verdict = |g, k, p: u32| {
        let pool: BTreeSet<u32> = (1..=p).collect();
        match choosability_exhaustive(&g, k, &pool, u64::MAX).unwrap() {
            ChoosabilityVerdict::Choosable { .. } => Some(true),
            ChoosabilityVerdict::NotChoosable { .. } => Some(false),
            _ => None,
        }
    };
    let k3 = verdict(plain_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), 2, 4);
    let c4 = verdict(plain_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), 2, 4);
    let edge = verdict(plain_graph(2, &[(0, 1)]).unwrap(), 1, 2);
    check(
        k3 == Some(false) && c4 == Some(true) && edge == Some(false),
        format!("K3 2-choosable: {k3:?}; C4 2-choosable: {c4:?}; edge 1-choosable: {edge:?}"),
    )
}

fn determinism_and_mutation() -> Outcome {
    let same = audit().to_json() == audit().to_json();
    let m = mirzakhani();
    let lists: ListAssignment = canonical_lists();
    let baseline = audit_graph(&m, &lists, Budgets::default());
    let mut unflipped = Vec::new();
    for v in m.neighbors(&VertexId::Apex).collect::<Vec<_>>() {
        let mutant = m.without_edge(&VertexId::Apex, &v);
        let report = audit_graph(&mutant, &lists, Budgets::default());
        let flipped = baseline.claims.iter().zip(&report.claims).any(|(a, b)| a.status != b.status);
        if !flipped {
            unflipped.push(v);
        }
    }
    check(
        same && baseline.all_pass() && unflipped.is_empty(),
        format!(
            "identical reports: {same}; baseline passes: {}; 42 apex-edge deletions, unflipped: {unflipped:?}",
            baseline.all_pass()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("construction audit", construction, Duration::from_secs(1)),
        ("theorem: not 4-choosable", theorem, Duration::from_secs(60)),
        ("chromatic number 3", chromatic, Duration::from_secs(10)),
        ("planarity certificate", planarity, Duration::from_secs(1)),
        ("gadget lemma x4", lemmas, Duration::from_secs(10)),
        ("forcing facts", forcing_facts, Duration::from_secs(60)),
        ("hamilton / cut / matching", exercises, Duration::from_secs(600)),
        ("random 5-list probe", probe, Duration::from_secs(300)),
        ("oracle suite", oracle_suite, Duration::from_secs(600)),
        ("small choosability", small_choosability, Duration::from_secs(60)),
        ("determinism and mutation", determinism_and_mutation, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let pass = out.pass && took <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2} {name}: {} ({:.3}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
