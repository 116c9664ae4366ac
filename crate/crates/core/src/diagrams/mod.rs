//! Planar diagrams over the presentation whose generators are the non-trivial
//! vertex-group elements and whose relators are product triangles (inside
//! one vertex group) and commutator squares (across adjacent vertex groups).
//!
//! A diagram is a combinatorial map. Every edge is a pair of opposite darts;
//! a dart reads its label when traversed from its origin, and the opposite
//! dart reads the inverse. `next` gives the following dart counterclockwise
//! around the origin vertex. Faces are the orbits of
//! `d -> prev(opposite(d))`, which keeps each face on the left, so interior
//! faces run counterclockwise and the outer face reads the boundary
//! clockwise.

mod build;
mod curves;
mod edit;
pub mod file;
mod moves;

use thiserror::Error;

use crate::words::{GraphProduct, Syllable, Word};

pub use build::{reduction_diagram, shuffle_diagram};
pub use curves::{CurveShape, DualCurve, Law, LawReport, LawResult, Segment};
pub use moves::{Move, MoveKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("dart {0} is labelled by an identity element")]
    IdentityEdgeLabel(usize),
    #[error("not a connected planar map: {0}")]
    NotPlanar(String),
    #[error("face through dart {dart} has {size} sides")]
    BadFaceSize { dart: usize, size: usize },
    #[error("triangle through dart {0} does not read a product relation")]
    BadTriangleRelator(usize),
    #[error("square through dart {0} does not read a commutator of adjacent vertex groups")]
    BadSquareRelator(usize),
    #[error("wrong boundary: {0}")]
    WrongBoundaryCount(String),
    #[error("swap at position {0} does not exchange syllables of adjacent vertices")]
    IllegalSwap(usize),
    #[error("move does not apply: {0}")]
    PatternMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dart {
    pub opposite: usize,
    pub next: usize,
    pub label: Syllable,
}

/// Boundary words read clockwise from the basepoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryLabel {
    pub outer: Word,
    pub inner: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    darts: Vec<Dart>,
    prev: Vec<usize>,
    outer: Option<usize>,
    inner: Option<usize>,
}

fn permutation_inverse(p: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() || inv[x] != usize::MAX {
            return None;
        }
        inv[x] = i;
    }
    Some(inv)
}

fn orbits(n: usize, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = step(d);
        }
        out.push(cycle);
    }
    out
}

fn orbit_index(n: usize, cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    for (i, c) in cycles.iter().enumerate() {
        for &d in c {
            idx[d] = i;
        }
    }
    idx
}

impl Diagram {
    /// Builds a diagram after checking only the map structure: `opposite` is
    /// a fixed-point-free involution, `next` a permutation and the
    /// basepoints are darts. Labels, relators and planarity are checked by
    /// [`Diagram::validate`].
    pub fn from_parts(
        darts: Vec<Dart>,
        outer: Option<usize>,
        inner: Option<usize>,
    ) -> Result<Self, DiagramError> {
        let n = darts.len();
        for (i, d) in darts.iter().enumerate() {
            if d.opposite >= n || d.opposite == i || darts[d.opposite].opposite != i {
                return Err(DiagramError::Malformed(format!("dart {i} has a bad opposite")));
            }
        }
        let next: Vec<usize> = darts.iter().map(|d| d.next).collect();
        let prev = permutation_inverse(&next)
            .ok_or_else(|| DiagramError::Malformed("`next` is not a permutation".into()))?;
        for b in [outer, inner].into_iter().flatten() {
            if b >= n {
                return Err(DiagramError::Malformed(format!("basepoint {b} is not a dart")));
            }
        }
        Ok(Self { darts, prev, outer, inner })
    }

    /// [`Diagram::from_parts`] followed by [`Diagram::validate`].
    pub fn new(
        product: &GraphProduct,
        darts: Vec<Dart>,
        outer: Option<usize>,
        inner: Option<usize>,
    ) -> Result<Self, DiagramError> {
        let d = Self::from_parts(darts, outer, inner)?;
        d.validate(product)?;
        Ok(d)
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn outer_basepoint(&self) -> Option<usize> {
        self.outer
    }

    pub fn inner_basepoint(&self) -> Option<usize> {
        self.inner
    }

    pub fn is_annular(&self) -> bool {
        self.inner.is_some()
    }

    pub fn opposite(&self, d: usize) -> usize {
        self.darts[d].opposite
    }

    pub fn next(&self, d: usize) -> usize {
        self.darts[d].next
    }

    pub fn label(&self, d: usize) -> Syllable {
        self.darts[d].label
    }

    /// The dart after `d` along its face.
    pub fn face_next(&self, d: usize) -> usize {
        self.prev[self.darts[d].opposite]
    }

    /// Faces as dart cycles, each starting at its smallest dart, ordered by
    /// that dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        orbits(self.darts.len(), |d| self.face_next(d))
    }

    /// Vertices as cycles of outgoing darts.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        orbits(self.darts.len(), |d| self.darts[d].next)
    }

    pub fn face_index(&self) -> Vec<usize> {
        orbit_index(self.darts.len(), &self.faces())
    }

    pub fn vertex_index(&self) -> Vec<usize> {
        orbit_index(self.darts.len(), &self.vertices())
    }

    /// One dart per edge: the smaller of each opposite pair.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.darts.len()).filter(|&d| d < self.darts[d].opposite).collect()
    }

    pub fn vertex_count(&self) -> usize {
        if self.darts.is_empty() {
            1
        } else {
            self.vertices().len()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn face_count(&self) -> usize {
        if self.darts.is_empty() {
            1
        } else {
            self.faces().len()
        }
    }

    /// Faces that are neither the outer nor the inner boundary face.
    pub fn interior_faces(&self) -> Vec<Vec<usize>> {
        let idx = self.face_index();
        let boundary: Vec<usize> = [self.outer, self.inner].into_iter().flatten().map(|b| idx[b]).collect();
        self.faces()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !boundary.contains(i))
            .map(|(_, f)| f)
            .collect()
    }

    fn cycle_from(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut d = self.face_next(start);
        while d != start {
            out.push(d);
            d = self.face_next(d);
        }
        out
    }

    /// Darts of the outer boundary in reading order from the basepoint.
    pub fn outer_boundary(&self) -> Vec<usize> {
        self.outer.map(|b| self.cycle_from(b)).unwrap_or_default()
    }

    pub fn inner_boundary(&self) -> Option<Vec<usize>> {
        self.inner.map(|b| self.cycle_from(b))
    }

    pub fn boundary_label(&self) -> BoundaryLabel {
        let read = |ds: Vec<usize>| ds.into_iter().map(|d| self.darts[d].label).collect::<Word>();
        BoundaryLabel {
            outer: read(self.outer_boundary()),
            inner: self.inner_boundary().map(read),
        }
    }

    /// Checks labels, connectivity, planarity, the boundary designation and
    /// every interior face against the relators.
    pub fn validate(&self, product: &GraphProduct) -> Result<(), DiagramError> {
        let n = self.darts.len();
        for (i, d) in self.darts.iter().enumerate() {
            if !product.contains(&d.label) {
                return Err(DiagramError::Malformed(format!("dart {i} has a foreign label")));
            }
            if d.label.is_identity() {
                return Err(DiagramError::IdentityEdgeLabel(i));
            }
            if self.darts[d.opposite].label != product.syllable_inverse(&d.label) {
                return Err(DiagramError::Malformed(format!(
                    "darts {i} and {} do not carry inverse labels",
                    d.opposite
                )));
            }
        }
        if n == 0 {
            if self.inner.is_some() {
                return Err(DiagramError::WrongBoundaryCount("empty diagram with an inner face".into()));
            }
            return Ok(());
        }
        let Some(outer) = self.outer else {
            return Err(DiagramError::WrongBoundaryCount("no outer basepoint".into()));
        };

        let mut uf = UnionFind::new(n);
        for (i, d) in self.darts.iter().enumerate() {
            uf.union(i, d.opposite);
            uf.union(i, d.next);
        }
        if (0..n).any(|i| uf.find(i) != uf.find(0)) {
            return Err(DiagramError::NotPlanar("the map is disconnected".into()));
        }
        let (v, e, f) = (self.vertices().len(), n / 2, self.faces().len());
        if v + f != e + 2 {
            return Err(DiagramError::NotPlanar(format!("V - E + F = {v} - {e} + {f} is not 2")));
        }

        let idx = self.face_index();
        if let Some(inner) = self.inner {
            if idx[inner] == idx[outer] {
                return Err(DiagramError::WrongBoundaryCount(
                    "inner and outer basepoints lie on the same face".into(),
                ));
            }
        }
        for face in self.interior_faces() {
            self.check_relator(product, &face)?;
        }
        Ok(())
    }

    fn check_relator(&self, product: &GraphProduct, face: &[usize]) -> Result<(), DiagramError> {
        let l: Vec<Syllable> = face.iter().map(|&d| self.darts[d].label).collect();
        match face.len() {
            3 => {
                let same = l.iter().all(|s| s.vertex == l[0].vertex);
                if !same || !product.merge(&product.merge(&l[0], &l[1]), &l[2]).is_identity() {
                    return Err(DiagramError::BadTriangleRelator(face[0]));
                }
            }
            4 => {
                let ok = l[2] == product.syllable_inverse(&l[0])
                    && l[3] == product.syllable_inverse(&l[1])
                    && product.graph().adjacent(l[0].vertex, l[1].vertex);
                if !ok {
                    return Err(DiagramError::BadSquareRelator(face[0]));
                }
            }
            size => return Err(DiagramError::BadFaceSize { dart: face[0], size }),
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
