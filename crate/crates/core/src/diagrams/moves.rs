//! Elementary moves: local rewrites of a diagram that keep its boundary.
//!
//! * inversion: swaps the two darts of an edge, so the edge is referred to
//!   from its other end;
//! * flip: two triangles `(d, x, y)`, `(d^-1, z, w)` sharing an edge become
//!   `(y, z, d)`, `(w, x, d^-1)`, retriangulating the quadrilateral;
//! * pentagonal: a triangle and a square sharing an edge are replaced by
//!   two squares and a triangle, moving the triangle across the curve of
//!   the square;
//! * hexagonal: three squares around a vertex of degree three are replaced
//!   by the other tiling of the hexagon they form;
//! * square reduction: two squares sharing two consecutive sides are cut
//!   out and their remaining sides zipped together.

use std::fmt;
use std::str::FromStr;

use super::edit::Editor;
use super::{Dart, Diagram, DiagramError};
use crate::words::GraphProduct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Inversion,
    Hexagonal,
    Pentagonal,
    Flip,
    SquareReduction,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::Inversion,
        MoveKind::Hexagonal,
        MoveKind::Pentagonal,
        MoveKind::Flip,
        MoveKind::SquareReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Inversion => "inversion",
            MoveKind::Hexagonal => "hexagonal",
            MoveKind::Pentagonal => "pentagonal",
            MoveKind::Flip => "flip",
            MoveKind::SquareReduction => "square-reduction",
        }
    }

    /// Change in the number of faces.
    pub fn face_delta(self) -> isize {
        match self {
            MoveKind::Pentagonal => 1,
            MoveKind::SquareReduction => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown move kind `{s}`"))
    }
}

/// A move kind anchored at a dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub kind: MoveKind,
    pub dart: usize,
}

impl Move {
    pub fn new(kind: MoveKind, dart: usize) -> Self {
        Self { kind, dart }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.dart)
    }
}

fn mismatch(mv: Move, what: impl fmt::Display) -> DiagramError {
    DiagramError::PatternMismatch(format!("{mv}: {what}"))
}

fn all_distinct(darts: &[usize]) -> bool {
    let mut v = darts.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

fn remove_faces(ed: &mut Editor, darts: &[usize]) {
    for &d in darts {
        let f = ed.face_of(d);
        ed.faces.swap_remove(f);
    }
}

impl Diagram {
    /// The face through `d`, read from `d`, if it is interior.
    fn interior_face_from(&self, d: usize) -> Option<Vec<usize>> {
        let face = self.cycle_from(d);
        let boundary = [self.outer, self.inner].into_iter().flatten().any(|b| face.contains(&b));
        (!boundary).then_some(face)
    }

    fn interior_face_of_size(&self, mv: Move, d: usize, size: usize) -> Result<Vec<usize>, DiagramError> {
        match self.interior_face_from(d) {
            Some(f) if f.len() == size => Ok(f),
            Some(f) => Err(mismatch(mv, format!("face at dart {d} has {} sides, wanted {size}", f.len()))),
            None => Err(mismatch(mv, format!("dart {d} lies on a boundary face"))),
        }
    }

    /// Applies `mv` and returns the new diagram, which is validated.
    pub fn apply_move(&self, product: &GraphProduct, mv: Move) -> Result<Diagram, DiagramError> {
        if mv.dart >= self.darts.len() {
            return Err(mismatch(mv, "no such dart"));
        }
        let out = match mv.kind {
            MoveKind::Inversion => self.invert_edge(mv.dart),
            MoveKind::Flip => self.flip(product, mv)?.finish(),
            MoveKind::Pentagonal => self.pentagonal(product, mv)?.finish(),
            MoveKind::Hexagonal => self.hexagonal(mv)?.finish(),
            MoveKind::SquareReduction => self.square_reduction(mv)?.finish(),
        }
        .map_err(|e| mismatch(mv, e))?;
        out.validate(product).map_err(|e| mismatch(mv, e))?;
        Ok(out)
    }

    /// Every move that applies, sorted by kind and dart.
    pub fn applicable_moves(&self, product: &GraphProduct) -> Vec<Move> {
        let mut out = Vec::new();
        for kind in MoveKind::ALL {
            for dart in 0..self.darts.len() {
                let mv = Move::new(kind, dart);
                if self.apply_move(product, mv).is_ok() {
                    out.push(mv);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn invert_edge(&self, d: usize) -> Result<Diagram, DiagramError> {
        let e = self.darts[d].opposite;
        let swap = |x: usize| if x == d { e } else if x == e { d } else { x };
        let mut darts = vec![self.darts[0]; self.darts.len()];
        for (i, old) in self.darts.iter().enumerate() {
            darts[swap(i)] = Dart { opposite: swap(old.opposite), next: swap(old.next), label: old.label };
        }
        Diagram::from_parts(darts, self.outer.map(swap), self.inner.map(swap))
    }

    fn flip(&self, product: &GraphProduct, mv: Move) -> Result<Editor, DiagramError> {
        let d = mv.dart;
        let od = self.darts[d].opposite;
        let f = self.interior_face_of_size(mv, d, 3)?;
        let g = self.interior_face_of_size(mv, od, 3)?;
        if f.contains(&od) {
            return Err(mismatch(mv, "both sides of the edge lie on one triangle"));
        }
        let (x, y, z, w) = (f[1], f[2], g[1], g[2]);
        let m = product.merge(&self.darts[y].label, &self.darts[z].label);
        if m.is_identity() {
            return Err(mismatch(mv, "the new diagonal would be trivial"));
        }
        let mut ed = Editor::from_diagram(self);
        remove_faces(&mut ed, &[d, od]);
        ed.label[d] = product.syllable_inverse(&m);
        ed.label[od] = m;
        ed.faces.push(vec![y, z, d]);
        ed.faces.push(vec![w, x, od]);
        Ok(ed)
    }

    fn pentagonal(&self, product: &GraphProduct, mv: Move) -> Result<Editor, DiagramError> {
        let t = mv.dart;
        let ot = self.darts[t].opposite;
        let tri = self.interior_face_of_size(mv, t, 3)?;
        let sq = self.interior_face_of_size(mv, ot, 4)?;
        let (a, b) = (tri[1], tri[2]);
        let (m, n, o) = (sq[1], sq[2], sq[3]);
        let label = |x: usize| self.darts[x].label;
        let inverse = |x: usize| product.syllable_inverse(&self.darts[x].label);

        let mut ed = Editor::from_diagram(self);
        remove_faces(&mut ed, &[t, ot]);
        let (e1, oe1) = ed.new_edge(label(m), inverse(m));
        let (e2, oe2) = ed.new_edge(inverse(a), label(a));
        let (e3, oe3) = ed.new_edge(inverse(b), label(b));
        ed.kill(t);
        ed.kill(ot);
        ed.faces.push(vec![a, e1, e2, o]);
        ed.faces.push(vec![b, m, e3, oe1]);
        ed.faces.push(vec![n, oe2, oe3]);
        Ok(ed)
    }

    fn hexagonal(&self, mv: Move) -> Result<Editor, DiagramError> {
        let e = [mv.dart, self.darts[mv.dart].next, self.darts[self.darts[mv.dart].next].next];
        if self.darts[e[2]].next != e[0] || !all_distinct(&e) {
            return Err(mismatch(mv, "the origin does not have degree three"));
        }
        let faces = e
            .iter()
            .map(|&d| self.interior_face_of_size(mv, d, 4))
            .collect::<Result<Vec<_>, _>>()?;
        let mut all: Vec<usize> = faces.concat();
        all.sort_unstable();
        all.dedup();
        if all.len() != 12 {
            return Err(mismatch(mv, "the three squares are not distinct"));
        }
        let (p, q): (Vec<usize>, Vec<usize>) = faces.iter().map(|f| (f[1], f[2])).unzip();
        let opp: Vec<usize> = e.iter().map(|&d| self.darts[d].opposite).collect();
        let mut ed = Editor::from_diagram(self);
        remove_faces(&mut ed, &e);
        for i in 0..3 {
            ed.label[e[i]] = self.darts[e[(i + 2) % 3]].label;
            ed.label[opp[i]] = self.darts[opp[(i + 2) % 3]].label;
        }
        for i in 0..3 {
            let j = (i + 1) % 3;
            ed.faces.push(vec![q[i], p[j], e[j], opp[i]]);
        }
        Ok(ed)
    }

    fn square_reduction(&self, mv: Move) -> Result<Editor, DiagramError> {
        let x = mv.dart;
        let s1 = self.interior_face_of_size(mv, x, 4)?;
        let (y, p, q) = (s1[1], s1[2], s1[3]);
        let (ox, oy) = (self.darts[x].opposite, self.darts[y].opposite);
        let s2 = self.interior_face_of_size(mv, oy, 4)?;
        if s2[1] != ox {
            return Err(mismatch(mv, "the squares do not share two consecutive sides"));
        }
        let (r, s) = (s2[2], s2[3]);
        let inner = [x, y, p, q, ox, oy, r, s];
        if !all_distinct(&inner) {
            return Err(mismatch(mv, "the two squares overlap"));
        }
        let outer: Vec<usize> = [p, q, r, s].iter().map(|&d| self.darts[d].opposite).collect();
        if outer.iter().any(|d| inner.contains(d)) {
            return Err(mismatch(mv, "a remaining side is glued to the squares"));
        }
        let vertex = self.vertex_index();
        if vertex[q] == vertex[s] {
            return Err(mismatch(mv, "zipping would pinch a vertex"));
        }
        let mut ed = Editor::from_diagram(self);
        remove_faces(&mut ed, &[x, oy]);
        for d in inner {
            ed.kill(d);
        }
        let (op, oq, or, os) = (outer[0], outer[1], outer[2], outer[3]);
        ed.opp[op] = os;
        ed.opp[os] = op;
        ed.opp[oq] = or;
        ed.opp[or] = oq;
        Ok(ed)
    }
}
