use serde::Serialize;

use super::{canonical_family, NestedFamily, Subset};
use crate::error::Result;

/// One marking on a tree vertex: a marked point, or the attaching point of a
/// child vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marking {
    Point(u32),
    Child(usize),
}

/// Combinatorial type of a stable `n`-pointed rooted tree.
///
/// Vertex 0 is the root `N`; the remaining vertices are the family members
/// in canonical order, so every parent index is smaller than its child's.
/// Positions of points inside a component are moduli and are not recorded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StableTree {
    n: u32,
    vertices: Vec<Subset>,
    parent: Vec<Option<usize>>,
    markings: Vec<Vec<Marking>>,
}

/// Builds the tree whose vertices are `f ∪ {N}` and whose parent links are
/// minimal strict supersets.
pub fn family_to_tree(f: &NestedFamily) -> StableTree {
    let vertices = f.vertices();
    let parent: Vec<Option<usize>> = vertices
        .iter()
        .map(|&v| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, &w)| v.is_strict_subset_of(w))
                .min_by_key(|(_, w)| w.len())
                .map(|(i, _)| i)
        })
        .collect();
    let markings = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let children: Vec<usize> = (0..vertices.len())
                .filter(|&j| parent[j] == Some(i))
                .collect();
            let covered = children
                .iter()
                .fold(Subset::EMPTY, |acc, &j| acc.union(vertices[j]));
            v.difference(covered)
                .elements()
                .map(Marking::Point)
                .chain(children.into_iter().map(Marking::Child))
                .collect()
        })
        .collect();
    StableTree {
        n: f.n(),
        vertices,
        parent,
        markings,
    }
}

impl StableTree {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn parent(&self, vertex: usize) -> Option<usize> {
        self.parent[vertex]
    }

    pub fn markings(&self, vertex: usize) -> &[Marking] {
        &self.markings[vertex]
    }

    /// Every vertex carries at least two markings.
    pub fn is_stable(&self) -> bool {
        self.markings.iter().all(|m| m.len() >= 2)
    }

    pub fn is_rooted_tree(&self) -> bool {
        self.parent[0].is_none()
            && self.parent[1..]
                .iter()
                .enumerate()
                .all(|(i, p)| matches!(p, Some(q) if *q < i + 1))
    }

    /// The nested family of non-root vertex sets.
    pub fn to_family(&self) -> Result<NestedFamily> {
        canonical_family(self.n, self.vertices[1..].iter().copied())
    }
}
