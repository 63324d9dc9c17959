//! Combinatorial embeddings: rotation systems from straight-line drawings,
//! face tracing, outer-face extraction and apex insertion.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{cmp_angle, doubled_signed_area, Point, Scalar};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("graph has no layout")]
    NoLayout,
    #[error("vertex {0} has no position")]
    MissingPosition(VertexId),
    #[error("neighbors {1} and {2} of {0} leave it at the same angle")]
    EqualAngle(VertexId, VertexId, VertexId),
    #[error("rotation at {0} is not a permutation of its neighbors")]
    BadRotation(VertexId),
    #[error("expected exactly one outer face, found {0}")]
    OuterFace(usize),
    #[error("outer face visits {0} more than once")]
    RepeatedVertex(VertexId),
    #[error("apex neighbor {0} is not on the outer walk")]
    ApexOffWalk(VertexId),
    #[error("outer walk vertex {0} is not adjacent to the apex")]
    MissingApexEdge(VertexId),
    #[error("graph has no apex")]
    NoApex,
    #[error("rotation system does not match the graph without its apex")]
    BaseMismatch,
}

/// Cyclic neighbor order at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
}

impl RotationSystem {
    pub fn new(rotation: BTreeMap<VertexId, Vec<VertexId>>) -> Self {
        RotationSystem { rotation }
    }

    pub fn at(&self, v: &VertexId) -> &[VertexId] {
        self.rotation.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.rotation.keys()
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    /// Number of directed edges.
    pub fn darts(&self) -> usize {
        self.rotation.values().map(Vec::len).sum()
    }

    /// The neighbor following `u` around `v`.
    pub fn succ(&self, v: &VertexId, u: &VertexId) -> Option<VertexId> {
        let r = self.rotation.get(v)?;
        let i = r.iter().position(|x| x == u)?;
        Some(r[(i + 1) % r.len()])
    }

    /// Checks that each rotation is a permutation of the vertex's neighbors in `g`.
    pub fn check_against(&self, g: &Graph) -> Result<(), EmbedError> {
        if self.rotation.len() != g.n() {
            return Err(EmbedError::BaseMismatch);
        }
        for v in g.vertices() {
            let mut r = self.rotation.get(v).ok_or(EmbedError::BadRotation(*v))?.clone();
            r.sort();
            let nbrs: Vec<VertexId> = g.neighbors(v).collect();
            if r != nbrs {
                return Err(EmbedError::BadRotation(*v));
            }
        }
        Ok(())
    }

    /// Same system with the order at `v` reversed.
    pub fn flipped_at(&self, v: &VertexId) -> Self {
        let mut out = self.clone();
        if let Some(r) = out.rotation.get_mut(v) {
            r.reverse();
        }
        out
    }
}

/// Orders each vertex's neighbors counterclockwise from the positive x axis.
pub fn rotation_from_points<T: Scalar>(
    g: &Graph,
    points: &BTreeMap<VertexId, Point<T>>,
) -> Result<RotationSystem, EmbedError> {
    let pos = |v: &VertexId| points.get(v).ok_or(EmbedError::MissingPosition(*v));
    let mut rotation = BTreeMap::new();
    for v in g.vertices() {
        let here = pos(v)?;
        let mut dirs = Vec::new();
        for w in g.neighbors(v) {
            let d = here.to(pos(&w)?);
            if d.is_zero() {
                return Err(EmbedError::EqualAngle(*v, w, w));
            }
            dirs.push((w, d));
        }
        dirs.sort_by(|a, b| cmp_angle(&a.1, &b.1));
        for pair in dirs.windows(2) {
            if cmp_angle(&pair[0].1, &pair[1].1).is_eq() {
                return Err(EmbedError::EqualAngle(*v, pair[0].0, pair[1].0));
            }
        }
        rotation.insert(*v, dirs.into_iter().map(|(w, _)| w).collect());
    }
    Ok(RotationSystem { rotation })
}

/// Rotation system read off the graph's own layout.
pub fn rotation_from_layout(g: &Graph) -> Result<RotationSystem, EmbedError> {
    rotation_from_points(g, g.layout().ok_or(EmbedError::NoLayout)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    /// Each face as its closed sequence of directed edges.
    pub faces: Vec<Vec<(VertexId, VertexId)>>,
    pub vertices: usize,
    pub edges: usize,
    pub face_count: usize,
    pub euler: i64,
}

impl FaceCensus {
    /// Face length to number of faces.
    pub fn length_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for f in &self.faces {
            *h.entry(f.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn all_triangles(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }
}

/// Traces every face: from the directed edge `u -> v`, continue with
/// `v -> w` where `w` follows `u` in the rotation at `v`.
pub fn face_census(rot: &RotationSystem) -> FaceCensus {
    let mut darts: Vec<(VertexId, VertexId)> = Vec::with_capacity(rot.darts());
    for (v, r) in &rot.rotation {
        darts.extend(r.iter().map(|w| (*v, *w)));
    }
    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut faces = Vec::new();
    for &start in &darts {
        if used.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while used.insert(d) {
            face.push(d);
            let (u, v) = d;
            let w = rot.succ(&v, &u).expect("rotation systems are symmetric");
            d = (v, w);
        }
        faces.push(face);
    }
    let (v, e, f) = (rot.num_vertices(), darts.len() / 2, faces.len());
    FaceCensus { faces, vertices: v, edges: e, face_count: f, euler: v as i64 - e as i64 + f as i64 }
}

/// The outer face of a straight-line drawing as a closed vertex walk.
///
/// With counterclockwise rotations the tracing rule walks inner faces
/// clockwise, so the outer face is the unique face with positive signed area.
/// The walk must be a simple cycle.
pub fn outer_walk<T: Scalar>(
    rot: &RotationSystem,
    points: &BTreeMap<VertexId, Point<T>>,
) -> Result<Vec<VertexId>, EmbedError> {
    let census = face_census(rot);
    let mut outer = Vec::new();
    for face in &census.faces {
        let poly = face
            .iter()
            .map(|(u, _)| points.get(u).cloned().ok_or(EmbedError::MissingPosition(*u)))
            .collect::<Result<Vec<_>, _>>()?;
        if doubled_signed_area(&poly) > T::zero() {
            outer.push(face);
        }
    }
    if outer.len() != 1 {
        return Err(EmbedError::OuterFace(outer.len()));
    }
    let walk: Vec<VertexId> = outer[0].iter().map(|(u, _)| *u).collect();
    let mut seen = BTreeSet::new();
    for v in &walk {
        if !seen.insert(*v) {
            return Err(EmbedError::RepeatedVertex(*v));
        }
    }
    Ok(walk)
}

/// Outer walk of a graph drawn by its own layout.
pub fn outer_walk_from_layout(g: &Graph) -> Result<Vec<VertexId>, EmbedError> {
    let layout = g.layout().ok_or(EmbedError::NoLayout)?;
    outer_walk(&rotation_from_points(g, layout)?, layout)
}

/// Extends `base` (an embedding of `g` minus its apex) by placing the apex in
/// the outer face: the apex sees the walk in reverse order and each walk
/// vertex receives the apex edge in the gap the outer face passes through.
pub fn apex_embed(g: &Graph, base: &RotationSystem, walk: &[VertexId]) -> Result<RotationSystem, EmbedError> {
    let apex = VertexId::Apex;
    if !g.contains(&apex) {
        return Err(EmbedError::NoApex);
    }
    let rest = g.delete_vertices(&BTreeSet::from([apex])).expect("apex is a vertex");
    base.check_against(&rest).map_err(|_| EmbedError::BaseMismatch)?;
    let on_walk: BTreeSet<VertexId> = walk.iter().copied().collect();
    if on_walk.len() != walk.len() {
        let mut seen = BTreeSet::new();
        let dup = walk.iter().find(|v| !seen.insert(**v)).unwrap();
        return Err(EmbedError::RepeatedVertex(*dup));
    }
    if let Some(v) = g.neighbors(&apex).find(|v| !on_walk.contains(v)) {
        return Err(EmbedError::ApexOffWalk(v));
    }
    if let Some(v) = walk.iter().find(|v| !g.has_edge(&apex, v)) {
        return Err(EmbedError::MissingApexEdge(*v));
    }
    let mut rotation = base.rotation.clone();
    let n = walk.len();
    for i in 0..n {
        let (prev, here) = (walk[(i + n - 1) % n], walk[i]);
        let r = rotation.get_mut(&here).expect("walk vertices are embedded");
        let at = r.iter().position(|x| *x == prev).ok_or(EmbedError::BadRotation(here))?;
        r.insert(at + 1, apex);
    }
    rotation.insert(apex, walk.iter().rev().copied().collect());
    let out = RotationSystem { rotation };
    out.check_against(g)?;
    Ok(out)
}

/// Evidence that a graph is planar: a connected embedding with Euler characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarityCertificate {
    pub connected: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub face_lengths: BTreeMap<usize, usize>,
    pub all_triangles: bool,
    pub outer_walk_length: Option<usize>,
}

impl PlanarityCertificate {
    pub fn proves_planar(&self) -> bool {
        self.connected && self.euler == 2
    }
}

/// Embeds `g` from its layout (falling back to the identity grid layout); if
/// the graph has an apex it is drawn off-layout through [`apex_embed`].
pub fn planarity_certificate(g: &Graph) -> Result<PlanarityCertificate, EmbedError> {
    let g = match g.layout() {
        Some(_) => g.clone(),
        None => g.clone().with_grid_layout(),
    };
    let (rot, walk_len) = if g.contains(&VertexId::Apex) {
        let base = g.delete_vertices(&BTreeSet::from([VertexId::Apex])).expect("apex is a vertex");
        let layout = base.layout().ok_or(EmbedError::NoLayout)?;
        let base_rot = rotation_from_points(&base, layout)?;
        let walk = outer_walk(&base_rot, layout)?;
        (apex_embed(&g, &base_rot, &walk)?, Some(walk.len()))
    } else {
        (rotation_from_layout(&g)?, None)
    };
    let census = face_census(&rot);
    Ok(PlanarityCertificate {
        connected: g.is_connected(),
        vertices: census.vertices,
        edges: census.edges,
        faces: census.face_count,
        euler: census.euler,
        face_lengths: census.length_histogram(),
        all_triangles: census.all_triangles(),
        outer_walk_length: walk_len,
    })
}
