//! Per-vertex color lists.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub type Color = u32;

/// The default palette `{1, 2, 3, 4, 5}`.
pub const FIVE_COLORS: [Color; 5] = [1, 2, 3, 4, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list of {0} is empty")]
    EmptyList(VertexId),
    #[error("list of {vertex} uses color {color} outside the palette")]
    OutsidePalette { vertex: VertexId, color: Color },
    #[error("no list for vertex {0}")]
    Missing(VertexId),
}

/// `palette \ {j}` for the five-color palette.
pub fn forbidden(j: Color) -> BTreeSet<Color> {
    FIVE_COLORS.iter().copied().filter(|&c| c != j).collect()
}

/// Color lists over a finite palette. Every list is a non-empty subset of the palette.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    palette: BTreeSet<Color>,
    lists: BTreeMap<VertexId, BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn new<P, L>(palette: P, lists: L) -> Result<Self, ListError>
    where
        P: IntoIterator<Item = Color>,
        L: IntoIterator<Item = (VertexId, BTreeSet<Color>)>,
    {
        let palette: BTreeSet<Color> = palette.into_iter().collect();
        let lists: BTreeMap<_, _> = lists.into_iter().collect();
        for (v, list) in &lists {
            if list.is_empty() {
                return Err(ListError::EmptyList(*v));
            }
            if let Some(&c) = list.iter().find(|c| !palette.contains(c)) {
                return Err(ListError::OutsidePalette { vertex: *v, color: c });
            }
        }
        Ok(ListAssignment { palette, lists })
    }

    /// The same list `colors` on every vertex of `g`; the palette is `colors`.
    pub fn uniform(g: &Graph, colors: impl IntoIterator<Item = Color>) -> Result<Self, ListError> {
        let colors: BTreeSet<Color> = colors.into_iter().collect();
        Self::new(colors.iter().copied(), g.vertices().iter().map(|v| (*v, colors.clone())))
    }

    pub fn palette(&self) -> &BTreeSet<Color> {
        &self.palette
    }

    pub fn get(&self, v: &VertexId) -> Option<&BTreeSet<Color>> {
        self.lists.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &BTreeSet<Color>)> {
        self.lists.iter()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Checks that every vertex of `g` has a list.
    pub fn covers(&self, g: &Graph) -> Result<(), ListError> {
        match g.vertices().iter().find(|v| !self.lists.contains_key(v)) {
            Some(v) => Err(ListError::Missing(*v)),
            None => Ok(()),
        }
    }

    /// Lists restricted to the vertices of `g`.
    pub fn restrict_to(&self, g: &Graph) -> Result<Self, ListError> {
        self.covers(g)?;
        Ok(ListAssignment {
            palette: self.palette.clone(),
            lists: g.vertices().iter().map(|v| (*v, self.lists[v].clone())).collect(),
        })
    }

    /// Removes `color` from the lists of `targets`. Fails if a list becomes empty.
    pub fn without_color<'a>(
        &self,
        color: Color,
        targets: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self, ListError> {
        let mut out = self.clone();
        for v in targets {
            let list = out.lists.get_mut(v).ok_or(ListError::Missing(*v))?;
            list.remove(&color);
            if list.is_empty() {
                return Err(ListError::EmptyList(*v));
            }
        }
        Ok(out)
    }

    /// Replaces (or adds) one list.
    pub fn with_list(&self, v: VertexId, list: BTreeSet<Color>) -> Result<Self, ListError> {
        let mut lists = self.lists.clone();
        lists.insert(v, list);
        Self::new(self.palette.iter().copied(), lists)
    }

    /// Applies a color map to the palette and to every list.
    pub fn map_colors(&self, sigma: impl Fn(Color) -> Color) -> Self {
        ListAssignment {
            palette: self.palette.iter().map(|&c| sigma(c)).collect(),
            lists: self.lists.iter().map(|(v, l)| (*v, l.iter().map(|&c| sigma(c)).collect())).collect(),
        }
    }

    /// Moves every list to a new vertex name.
    pub fn map_vertices(&self, f: impl Fn(&VertexId) -> VertexId) -> Self {
        ListAssignment {
            palette: self.palette.clone(),
            lists: self.lists.iter().map(|(v, l)| (f(v), l.clone())).collect(),
        }
    }

    /// Size shared by all lists, if they agree.
    pub fn uniform_size(&self) -> Option<usize> {
        let mut sizes = self.lists.values().map(BTreeSet::len);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Lists<'a>(&'a BTreeMap<VertexId, BTreeSet<Color>>);
        impl Serialize for Lists<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (v, l) in self.0 {
                    map.serialize_entry(&v.to_string(), l)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("palette", &self.palette)?;
        map.serialize_entry("lists", &Lists(&self.lists))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for ListAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            palette: Vec<Color>,
            lists: BTreeMap<VertexId, Vec<Color>>,
        }
        let raw = Raw::deserialize(d)?;
        ListAssignment::new(raw.palette, raw.lists.into_iter().map(|(v, l)| (v, l.into_iter().collect())))
            .map_err(serde::de::Error::custom)
    }
}
