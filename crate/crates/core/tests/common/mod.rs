#![allow(dead_code)]

use std::collections::BTreeSet;

use listcolor::graph::plain_graph;
use listcolor::solve::Coloring;
use listcolor::{Color, Graph, ListAssignment, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) on `plain:0..n`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    plain_graph(n, &edges).unwrap()
}

/// Random non-empty lists from `1..=palette`.
pub fn random_list_assignment(rng: &mut ChaCha8Rng, g: &Graph, palette: Color) -> ListAssignment {
    let lists = g.vertices().iter().map(|v| {
        let mut l: BTreeSet<Color> = (1..=palette).filter(|_| rng.gen_bool(0.5)).collect();
        if l.is_empty() {
            l.insert(rng.gen_range(1..=palette));
        }
        (*v, l)
    });
    ListAssignment::new(1..=palette, lists.collect::<Vec<_>>()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every proper list coloring, by plain odometer enumeration.
pub fn brute_colorings(g: &Graph, lists: &ListAssignment) -> Vec<Coloring> {
    let vs = g.vertices();
    let options: Vec<Vec<Color>> = vs.iter().map(|v| lists.get(v).unwrap().iter().copied().collect()).collect();
    let mut out = Vec::new();
    if options.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; vs.len()];
    loop {
        let proper = g.edges().iter().all(|(u, v)| {
            let iu = vs.binary_search(u).unwrap();
            let iv = vs.binary_search(v).unwrap();
            options[iu][idx[iu]] != options[iv][idx[iv]]
        });
        if proper {
            out.push(vs.iter().zip(&idx).enumerate().map(|(i, (v, &k))| (*v, options[i][k])).collect());
        }
        let mut i = vs.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

pub fn plain(i: u32) -> VertexId {
    VertexId::Plain(i)
}
