//! Simple undirected graphs over structured vertex identities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::Point;
use crate::Rational;

/// Structured vertex identity.
///
/// The derived order (`Apex < Hub < Corner < Plain`, fields lexicographic) is
/// the total order used for every deterministic output in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    /// The apex vertex, adjacent to the whole outer polygon.
    Apex,
    /// A wheel center, indexed by its cell.
    Hub { x: i32, y: i32 },
    /// A rim vertex; both coordinates are odd.
    Corner { a: i32, b: i32 },
    /// A generic vertex for graphs that are not built from cells.
    Plain(u32),
}

impl VertexId {
    pub fn hub(x: i32, y: i32) -> Self {
        VertexId::Hub { x, y }
    }

    /// Panics if either coordinate is even; use [`VertexId::from_str`] for untrusted input.
    pub fn corner(a: i32, b: i32) -> Self {
        assert!(a % 2 != 0 && b % 2 != 0, "corner coordinates must be odd, got ({a},{b})");
        VertexId::Corner { a, b }
    }

    pub fn plain(n: u32) -> Self {
        VertexId::Plain(n)
    }

    pub fn is_hub(&self) -> bool {
        matches!(self, VertexId::Hub { .. })
    }

    pub fn is_corner(&self) -> bool {
        matches!(self, VertexId::Corner { .. })
    }

    fn is_well_formed(&self) -> bool {
        match *self {
            VertexId::Corner { a, b } => a % 2 != 0 && b % 2 != 0,
            _ => true,
        }
    }

    /// Drawing position derived from the identity: corners at `(3a, 3b)`,
    /// hubs at `(6x, 6y)`, the apex at `(33, 25)`. `Plain` vertices have none.
    pub fn grid_position(&self) -> Option<Point<Rational>> {
        let p = |x: i64, y: i64| Some(Point::new(Rational::from_integer(x), Rational::from_integer(y)));
        match *self {
            VertexId::Apex => p(33, 25),
            VertexId::Hub { x, y } => p(6 * x as i64, 6 * y as i64),
            VertexId::Corner { a, b } => p(3 * a as i64, 3 * b as i64),
            VertexId::Plain(_) => None,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Apex => write!(f, "apex"),
            VertexId::Hub { x, y } => write!(f, "hub:{x},{y}"),
            VertexId::Corner { a, b } => write!(f, "corner:{a},{b}"),
            VertexId::Plain(n) => write!(f, "plain:{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid vertex id {0:?}")]
pub struct ParseVertexError(pub String);

impl FromStr for VertexId {
    type Err = ParseVertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseVertexError(s.to_string());
        if s == "apex" {
            return Ok(VertexId::Apex);
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let pair = |rest: &str| -> Result<(i32, i32), ParseVertexError> {
            let (l, r) = rest.split_once(',').ok_or_else(bad)?;
            Ok((l.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?))
        };
        let v = match kind {
            "hub" => {
                let (x, y) = pair(rest)?;
                VertexId::Hub { x, y }
            }
            "corner" => {
                let (a, b) = pair(rest)?;
                VertexId::Corner { a, b }
            }
            "plain" => VertexId::Plain(rest.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        if v.is_well_formed() {
            Ok(v)
        } else {
            Err(bad())
        }
    }
}

impl serde::Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Layout = BTreeMap<VertexId, Point<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at {0}")]
    Loop(VertexId),
    #[error("edge {0}-{1} has an endpoint that is not a vertex")]
    UnknownEndpoint(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("malformed vertex {0}: corner coordinates must be odd")]
    Malformed(VertexId),
}

/// Immutable simple undirected graph.
///
/// Vertices are kept in [`VertexId`] order and addressed internally by their
/// rank in that order, so sorted index lists are also sorted by identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    layout: Option<Layout>,
}

/// Builds a graph; duplicate vertices and duplicate edges collapse.
pub fn make_graph<V, E>(vertices: V, edges: E) -> Result<Graph, GraphError>
where
    V: IntoIterator<Item = VertexId>,
    E: IntoIterator<Item = (VertexId, VertexId)>,
{
    let set: BTreeSet<VertexId> = vertices.into_iter().collect();
    if let Some(bad) = set.iter().find(|v| !v.is_well_formed()) {
        return Err(GraphError::Malformed(*bad));
    }
    let vertices: Vec<VertexId> = set.into_iter().collect();
    let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices.len()];
    for (u, v) in edges {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) else {
            return Err(GraphError::UnknownEndpoint(u, v));
        };
        adj[iu].insert(iv);
        adj[iv].insert(iu);
    }
    Ok(Graph { vertices, index, adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(), layout: None })
}

/// Graph on `Plain(0..n)` with the given index pairs.
pub fn plain_graph(n: u32, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
    make_graph((0..n).map(VertexId::Plain), edges.iter().map(|&(u, v)| (VertexId::Plain(u), VertexId::Plain(v))))
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// A proper 2-coloring with sides 0 and 1.
    Yes(BTreeMap<VertexId, u8>),
    /// An odd cycle, listed in traversal order (the last vertex is adjacent to the first).
    No(Vec<VertexId>),
}

impl Graph {
    pub fn with_layout(mut self, layout: Layout) -> Result<Graph, GraphError> {
        if let Some(v) = layout.keys().find(|v| !self.index.contains_key(v)) {
            return Err(GraphError::UnknownVertex(*v));
        }
        self.layout = Some(layout);
        Ok(self)
    }

    /// Attaches the identity-derived grid layout, where every vertex has one.
    pub fn with_grid_layout(self) -> Graph {
        let layout: Option<Layout> = self.vertices.iter().map(|v| v.grid_position().map(|p| (*v, p))).collect();
        match layout {
            Some(l) => Graph { layout: Some(l), ..self },
            None => self,
        }
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn vertex(&self, i: usize) -> VertexId {
        self.vertices[i]
    }

    /// Sorted neighbor indices of vertex index `i`.
    pub fn adj(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbors(&self, v: &VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let list: &[usize] = self.index.get(v).map(|&i| self.adj[i].as_slice()).unwrap_or(&[]);
        list.iter().map(move |&j| self.vertices[j])
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.index.get(v).map_or(0, |&i| self.adj[i].len())
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&iu), Some(&iv)) => self.adj[iu].binary_search(&iv).is_ok(),
            _ => false,
        }
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m());
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs.iter().filter(|&&j| j > i) {
                out.push((self.vertices[i], self.vertices[j]));
            }
        }
        out
    }

    pub fn delete_vertices(&self, remove: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        if let Some(v) = remove.iter().find(|v| !self.contains(v)) {
            return Err(GraphError::UnknownVertex(*v));
        }
        let keep: BTreeSet<VertexId> = self.vertices.iter().filter(|v| !remove.contains(v)).copied().collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `keep`; layout entries follow their vertices.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        if let Some(v) = keep.iter().find(|v| !self.contains(v)) {
            return Err(GraphError::UnknownVertex(*v));
        }
        let edges = self.edges().into_iter().filter(|(u, v)| keep.contains(u) && keep.contains(v));
        let mut g = make_graph(keep.iter().copied(), edges)?;
        if let Some(layout) = &self.layout {
            g.layout = Some(layout.iter().filter(|(v, _)| keep.contains(v)).map(|(v, p)| (*v, p.clone())).collect());
        }
        Ok(g)
    }

    /// Copy of the graph without one edge. Unknown edges leave it unchanged.
    pub fn without_edge(&self, u: &VertexId, v: &VertexId) -> Graph {
        let edges = self.edges().into_iter().filter(|&(a, b)| !((a == *u && b == *v) || (a == *v && b == *u)));
        let mut g = make_graph(self.vertices.iter().copied(), edges).expect("subgraph of a valid graph");
        g.layout = self.layout.clone();
        g
    }

    /// Connected components, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|i| self.vertices[i]).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for nbrs in &self.adj {
            *hist.entry(nbrs.len()).or_insert(0) += 1;
        }
        hist
    }

    pub fn is_bipartite(&self) -> Bipartition {
        let n = self.n();
        let mut side: Vec<Option<u8>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(1 - su);
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => {
                            return Bipartition::No(self.odd_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Yes(side.into_iter().enumerate().map(|(i, s)| (self.vertices[i], s.unwrap())).collect())
    }

    // u and w are adjacent and at equal BFS parity; walk both up to their
    // common ancestor and join the two tree paths with the edge uw.
    fn odd_cycle(&self, u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<VertexId> {
        let (mut a, mut b) = (u, w);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            right.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left.into_iter().map(|i| self.vertices[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> VertexId {
        VertexId::Plain(n)
    }

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        plain_graph(n, &edges).unwrap()
    }

    #[test]
    fn vertex_order_is_apex_hub_corner_plain() {
        let mut ids = vec![p(0), VertexId::corner(-1, 1), VertexId::hub(2, 0), VertexId::Apex, VertexId::hub(0, 5)];
        ids.sort();
        assert_eq!(ids, vec![VertexId::Apex, VertexId::hub(0, 5), VertexId::hub(2, 0), VertexId::corner(-1, 1), p(0)]);
    }

    #[test]
    fn vertex_id_text_round_trip() {
        for v in [VertexId::Apex, VertexId::hub(-3, 1), VertexId::corner(21, -3), p(7)] {
            assert_eq!(v.to_string().parse::<VertexId>().unwrap(), v);
        }
        assert!("corner:2,1".parse::<VertexId>().is_err());
        assert!("hub:1".parse::<VertexId>().is_err());
        assert!("vertex".parse::<VertexId>().is_err());
    }

    #[test]
    fn empty_graph() {
        let g = make_graph([], []).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        assert!(g.components().is_empty());
    }

    #[test]
    fn triangle_and_duplicates() {
        let g = plain_graph(3, &[(0, 1), (1, 2), (2, 0), (1, 0)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.degree_histogram(), BTreeMap::from([(2, 3)]));
    }

    #[test]
    fn wheel_degrees() {
        let g = plain_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let mut degs: Vec<_> = g.vertices().iter().map(|v| g.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, vec![4, 3, 3, 3, 3]);
    }

    #[test]
    fn construction_errors_name_the_edge() {
        assert_eq!(plain_graph(2, &[(1, 1)]), Err(GraphError::Loop(p(1))));
        assert_eq!(plain_graph(2, &[(0, 5)]), Err(GraphError::UnknownEndpoint(p(0), p(5))));
        let bad = make_graph([VertexId::Corner { a: 2, b: 1 }], []);
        assert!(matches!(bad, Err(GraphError::Malformed(_))));
    }

    #[test]
    fn delete_nothing_and_unknown() {
        let g = cycle(5);
        assert_eq!(g.delete_vertices(&BTreeSet::new()).unwrap(), g);
        assert_eq!(g.delete_vertices(&BTreeSet::from([p(9)])), Err(GraphError::UnknownVertex(p(9))));
    }

    #[test]
    fn components_of_two_edges() {
        let g = plain_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![p(0), p(1)], vec![p(2), p(3)]]);
        assert_eq!(cycle(3).components().len(), 1);
    }

    #[test]
    fn bipartite_cases() {
        assert!(matches!(cycle(6).is_bipartite(), Bipartition::Yes(_)));
        match cycle(3).is_bipartite() {
            Bipartition::No(c) => assert_eq!(c.len(), 3),
            _ => panic!("triangle is not bipartite"),
        }
        match cycle(9).is_bipartite() {
            Bipartition::No(c) => assert_eq!(c.len(), 9),
            _ => panic!("odd cycle"),
        }
    }
}
