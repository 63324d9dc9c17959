//! Builders for the 4-wheel, the five-wheel section gadget, the 63-vertex
//! non-4-choosable planar graph and its list assignment.
//!
//! Every builder works on a grid of square cells. Cell `(x, y)` owns the hub
//! `Hub(x, y)` and the four corners `Corner(2x +- 1, 2y +- 1)`; it contributes
//! four spokes and the 4-cycle through its corners. Cells that touch share
//! corners and rim edges, which the graph builder deduplicates.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{make_graph, Graph, VertexId};
use crate::lists::{forbidden, Color, ListAssignment, FIVE_COLORS};

/// Wheel vertex names, as a single cell at the origin.
pub const WHEEL_CENTER: VertexId = VertexId::Hub { x: 0, y: 0 };
pub const WHEEL_SW: VertexId = VertexId::Corner { a: -1, b: -1 };
pub const WHEEL_SE: VertexId = VertexId::Corner { a: 1, b: -1 };
pub const WHEEL_NE: VertexId = VertexId::Corner { a: 1, b: 1 };
pub const WHEEL_NW: VertexId = VertexId::Corner { a: -1, b: 1 };

/// Cells of one section gadget, relative to its left end.
pub const GADGET_CELLS: [(i32, i32); 5] = [(0, 0), (1, -1), (1, 0), (1, 1), (2, 0)];

/// Number of sections chained into the large graph.
pub const SECTIONS: u32 = 4;

/// Forbidden color of each section-1 corner; the list is the palette minus this color.
pub const SECTION_ONE_CORNERS: [((i32, i32), Color); 12] = [
    ((-1, -1), 2),
    ((-1, 1), 4),
    ((1, -1), 5),
    ((1, 1), 3),
    ((1, -3), 2),
    ((3, -3), 3),
    ((1, 3), 4),
    ((3, 3), 5),
    ((3, -1), 4),
    ((3, 1), 2),
    ((5, -1), 3),
    ((5, 1), 5),
];

fn cell_corners(x: i32, y: i32) -> [VertexId; 4] {
    let (a, b) = (2 * x, 2 * y);
    [
        VertexId::corner(a - 1, b - 1),
        VertexId::corner(a + 1, b - 1),
        VertexId::corner(a + 1, b + 1),
        VertexId::corner(a - 1, b + 1),
    ]
}

fn build_cells(cells: &[(i32, i32)], apex: bool) -> Graph {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for &(x, y) in cells {
        let hub = VertexId::hub(x, y);
        let corners = cell_corners(x, y);
        vertices.insert(hub);
        vertices.extend(corners);
        for i in 0..4 {
            edges.push((hub, corners[i]));
            edges.push((corners[i], corners[(i + 1) % 4]));
        }
    }
    if apex {
        let corners: Vec<VertexId> = vertices.iter().copied().filter(VertexId::is_corner).collect();
        vertices.insert(VertexId::Apex);
        edges.extend(corners.into_iter().map(|c| (VertexId::Apex, c)));
    }
    make_graph(vertices, edges).expect("cell construction yields a simple graph").with_grid_layout()
}

/// The 4-wheel: center plus the 4-cycle sw, se, ne, nw.
pub fn wheel4() -> Graph {
    build_cells(&[(0, 0)], false)
}

/// The gadget graph and its outer-face vertex set.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: Graph,
    pub outer: BTreeSet<VertexId>,
}

/// Five overlapping 4-wheels; the 12 corners form the outer face.
pub fn gadget() -> Gadget {
    let graph = build_cells(&GADGET_CELLS, false);
    let outer = graph.vertices().iter().copied().filter(VertexId::is_corner).collect();
    Gadget { graph, outer }
}

/// All cells of the chained construction: a row of 12 plus a cell above and
/// below the middle of each section.
pub fn mirzakhani_cells() -> Vec<(i32, i32)> {
    let mut cells: Vec<(i32, i32)> = (0..12).map(|x| (x, 0)).collect();
    for x in [1, 4, 7, 10] {
        cells.push((x, -1));
        cells.push((x, 1));
    }
    cells.sort_unstable();
    cells
}

/// The 63-vertex planar graph: 20 wheels chained into four sections plus an
/// apex joined to every corner.
pub fn mirzakhani() -> Graph {
    build_cells(&mirzakhani_cells(), true)
}

/// Color permutation applied to section `j`. Stored as the image of 1..=5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionPermutation {
    section: u32,
    image: [Color; 5],
}

impl SectionPermutation {
    pub fn new(section: u32) -> Result<Self, ConstructError> {
        let image = match section {
            1 => [1, 2, 3, 4, 5],
            // (1 2 3)(4 5)
            2 => [2, 3, 1, 5, 4],
            // (1 3 2)
            3 => [3, 1, 2, 4, 5],
            // (1 4 5 3)
            4 => [4, 2, 1, 5, 3],
            _ => return Err(ConstructError::Section(section)),
        };
        Ok(SectionPermutation { section, image })
    }

    pub fn section(&self) -> u32 {
        self.section
    }

    /// Colors outside 1..=5 are fixed.
    pub fn apply(&self, c: Color) -> Color {
        match c {
            1..=5 => self.image[(c - 1) as usize],
            _ => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("section index {0} is outside 1..=4")]
    Section(u32),
    #[error("section boundary {vertex} gets L^{left} from the left and L^{right} from the right")]
    Boundary { vertex: VertexId, left: Color, right: Color },
    #[error("vertex {0} is missing from the graph")]
    Missing(VertexId),
}

fn translate(v: &VertexId, cells: i32) -> VertexId {
    match *v {
        VertexId::Hub { x, y } => VertexId::Hub { x: x + cells, y },
        VertexId::Corner { a, b } => VertexId::Corner { a: a + 2 * cells, b },
        other => other,
    }
}

/// Maps a gadget vertex to its copy in section `j`.
pub fn section_vertex(v: &VertexId, j: u32) -> VertexId {
    translate(v, 3 * (j as i32 - 1))
}

/// Forbidden color of every vertex of the large graph.
///
/// Fails if two adjacent sections disagree on a shared corner.
pub fn canonical_forbidden() -> Result<BTreeMap<VertexId, Color>, ConstructError> {
    let mut out: BTreeMap<VertexId, Color> = BTreeMap::new();
    out.insert(VertexId::Apex, 5);
    for j in 1..=SECTIONS {
        let pi = SectionPermutation::new(j)?;
        for &(x, y) in &GADGET_CELLS {
            out.insert(section_vertex(&VertexId::hub(x, y), j), j);
        }
        for &((a, b), f) in &SECTION_ONE_CORNERS {
            let v = section_vertex(&VertexId::corner(a, b), j);
            let c = pi.apply(f);
            if let Some(&prev) = out.get(&v) {
                if prev != c {
                    return Err(ConstructError::Boundary { vertex: v, left: prev, right: c });
                }
            }
            out.insert(v, c);
        }
    }
    Ok(out)
}

/// The canonical assignment: every list is `{1..5}` minus one color.
pub fn canonical_lists() -> ListAssignment {
    let table = canonical_forbidden().expect("section permutations agree on shared corners");
    ListAssignment::new(FIVE_COLORS, table.into_iter().map(|(v, j)| (v, forbidden(j))))
        .expect("forbidden-color lists are valid")
}

/// Lists for [`wheel4`] once color 1 is unavailable.
pub fn wheel_lists() -> ListAssignment {
    ListAssignment::new(
        FIVE_COLORS,
        [
            (WHEEL_CENTER, BTreeSet::from([2, 3, 4, 5])),
            (WHEEL_NW, BTreeSet::from([2, 3, 5])),
            (WHEEL_NE, BTreeSet::from([2, 3, 4])),
            (WHEEL_SW, BTreeSet::from([2, 4, 5])),
            (WHEEL_SE, BTreeSet::from([3, 4, 5])),
        ],
    )
    .expect("wheel lists are valid")
}

/// One section of the large graph with its outer corners.
#[derive(Debug, Clone)]
pub struct SectionGadget {
    pub section: u32,
    pub graph: Graph,
    pub outer: BTreeSet<VertexId>,
    /// Gadget vertex to section vertex.
    pub from_gadget: BTreeMap<VertexId, VertexId>,
}

impl SectionGadget {
    pub fn central_hub(&self) -> VertexId {
        section_vertex(&VertexId::hub(1, 0), self.section)
    }

    /// The four corners of the central wheel, in the order nw, ne, se, sw.
    pub fn central_corners(&self) -> [VertexId; 4] {
        [(1, 1), (3, 1), (3, -1), (1, -1)].map(|(a, b)| section_vertex(&VertexId::corner(a, b), self.section))
    }
}

/// Induced subgraph of `m` on section `j` (hubs of cells `3j-3..=3j-1` and
/// corners with first coordinate in `6j-7..=6j-1`).
pub fn section_gadget(m: &Graph, j: u32) -> Result<SectionGadget, ConstructError> {
    if !(1..=SECTIONS).contains(&j) {
        return Err(ConstructError::Section(j));
    }
    let gadget = gadget();
    let from_gadget: BTreeMap<VertexId, VertexId> =
        gadget.graph.vertices().iter().map(|v| (*v, section_vertex(v, j))).collect();
    let keep: BTreeSet<VertexId> = from_gadget.values().copied().collect();
    let graph = m.induced(&keep).map_err(|e| match e {
        crate::graph::GraphError::UnknownVertex(v) => ConstructError::Missing(v),
        _ => unreachable!("induced only reports unknown vertices"),
    })?;
    let outer = gadget.outer.iter().map(|v| from_gadget[v]).collect();
    Ok(SectionGadget { section: j, graph, outer, from_gadget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_shape() {
        let w = wheel4();
        assert_eq!((w.n(), w.m()), (5, 8));
        assert_eq!(w.degree(&WHEEL_CENTER), 4);
        for v in [WHEEL_SW, WHEEL_SE, WHEEL_NE, WHEEL_NW] {
            assert_eq!(w.degree(&v), 3);
        }
    }

    #[test]
    fn gadget_counts() {
        let g = gadget();
        assert_eq!(g.graph.n(), 17);
        assert_eq!(g.graph.m(), 36);
        assert_eq!(g.outer.len(), 12);
        let central: Vec<_> = g.graph.neighbors(&VertexId::hub(1, 0)).collect();
        assert_eq!(
            central,
            vec![VertexId::corner(1, -1), VertexId::corner(1, 1), VertexId::corner(3, -1), VertexId::corner(3, 1)]
        );
        // removing the rim leaves the five hubs isolated
        let rest = g.graph.delete_vertices(&g.outer).unwrap();
        assert_eq!(rest.components().len(), 5);
    }

    #[test]
    fn permutations_send_one_to_section_index() {
        for j in 1..=4 {
            let pi = SectionPermutation::new(j).unwrap();
            assert_eq!(pi.apply(1), j);
            let image: BTreeSet<_> = (1..=5).map(|c| pi.apply(c)).collect();
            assert_eq!(image.len(), 5);
        }
        assert_eq!(SectionPermutation::new(0), Err(ConstructError::Section(0)));
        assert_eq!(SectionPermutation::new(5), Err(ConstructError::Section(5)));
    }

    #[test]
    fn canonical_list_spot_checks() {
        let l = canonical_lists();
        assert_eq!(l.get(&VertexId::hub(7, 0)), Some(&forbidden(3)));
        assert_eq!(l.get(&VertexId::corner(21, -3)), Some(&forbidden(1)));
        assert_eq!(l.get(&VertexId::Apex), Some(&BTreeSet::from([1, 2, 3, 4])));
        assert_eq!(l.len(), 63);
        assert_eq!(l.uniform_size(), Some(4));
    }

    #[test]
    fn wheel_lists_are_the_3_subsets_of_2345_on_the_rim() {
        let l = wheel_lists();
        assert_eq!(l.get(&WHEEL_CENTER).unwrap().len(), 4);
        let rim: BTreeSet<BTreeSet<Color>> =
            [WHEEL_SW, WHEEL_SE, WHEEL_NE, WHEEL_NW].iter().map(|v| l.get(v).unwrap().clone()).collect();
        assert_eq!(rim.len(), 4);
        for s in &rim {
            assert_eq!(s.len(), 3);
            assert!(s.is_subset(&BTreeSet::from([2, 3, 4, 5])));
        }
        let union: BTreeSet<Color> = l.iter().flat_map(|(_, s)| s.iter().copied()).collect();
        assert_eq!(union, BTreeSet::from([2, 3, 4, 5]));
    }

    #[test]
    fn section_range_checked() {
        let m = mirzakhani();
        assert!(matches!(section_gadget(&m, 0), Err(ConstructError::Section(0))));
        assert!(matches!(section_gadget(&m, 5), Err(ConstructError::Section(5))));
    }
}
