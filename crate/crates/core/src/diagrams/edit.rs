//! Face-cycle surgery. Diagrams are edited as a list of face cycles plus the
//! opposite pairing; the vertex rotation is recovered at the end from
//! `prev = face_next ∘ opposite`.

use super::{permutation_inverse, Dart, Diagram, DiagramError};
use crate::words::Syllable;

pub(crate) struct Editor {
    pub(crate) opp: Vec<usize>,
    pub(crate) label: Vec<Syllable>,
    pub(crate) alive: Vec<bool>,
    pub(crate) faces: Vec<Vec<usize>>,
    pub(crate) outer: Option<usize>,
    pub(crate) inner: Option<usize>,
}

impl Editor {
    pub(crate) fn empty() -> Self {
        Self { opp: vec![], label: vec![], alive: vec![], faces: vec![], outer: None, inner: None }
    }

    pub(crate) fn from_diagram(d: &Diagram) -> Self {
        Self {
            opp: d.darts.iter().map(|x| x.opposite).collect(),
            label: d.darts.iter().map(|x| x.label).collect(),
            alive: vec![true; d.darts.len()],
            faces: d.faces(),
            outer: d.outer,
            inner: d.inner,
        }
    }

    /// Adds an edge; returns the dart reading `label` and its opposite.
    pub(crate) fn new_edge(&mut self, label: Syllable, inverse: Syllable) -> (usize, usize) {
        let d = self.opp.len();
        self.opp.extend([d + 1, d]);
        self.label.extend([label, inverse]);
        self.alive.extend([true, true]);
        (d, d + 1)
    }

    pub(crate) fn kill(&mut self, d: usize) {
        self.alive[d] = false;
    }

    pub(crate) fn face_of(&self, d: usize) -> usize {
        self.faces
            .iter()
            .position(|f| f.contains(&d))
            .expect("every live dart lies on a face")
    }

    /// Replaces the consecutive darts `first, second` of face `f` (cyclically)
    /// with `with`.
    pub(crate) fn splice_pair(&mut self, f: usize, first: usize, second: usize, with: &[usize]) {
        let face = &mut self.faces[f];
        let i = face.iter().position(|&d| d == first).expect("dart on face");
        face.rotate_left(i);
        assert!(face.len() >= 2 && face[1] == second, "darts are not consecutive on the face");
        face.splice(0..2, with.iter().copied());
    }

    /// Compacts live darts (keeping their relative order) and rebuilds the
    /// vertex rotation.
    pub(crate) fn finish(self) -> Result<Diagram, DiagramError> {
        let n = self.opp.len();
        let mut new_id = vec![usize::MAX; n];
        let mut count = 0;
        for d in 0..n {
            if self.alive[d] {
                new_id[d] = count;
                count += 1;
            }
        }
        let map = |d: usize| -> Result<usize, DiagramError> {
            match new_id.get(d) {
                Some(&x) if x != usize::MAX => Ok(x),
                _ => Err(DiagramError::Malformed(format!("reference to removed dart {d}"))),
            }
        };
        let mut face_next = vec![usize::MAX; count];
        for face in self.faces.iter().filter(|f| !f.is_empty()) {
            for k in 0..face.len() {
                let (a, b) = (map(face[k])?, map(face[(k + 1) % face.len()])?);
                if face_next[a] != usize::MAX {
                    return Err(DiagramError::Malformed(format!("dart {a} lies on two faces")));
                }
                face_next[a] = b;
            }
        }
        if face_next.contains(&usize::MAX) {
            return Err(DiagramError::Malformed("a dart lies on no face".into()));
        }
        let mut opp = vec![0; count];
        let mut label = vec![Syllable::new(0, 0); count];
        for d in 0..n {
            if self.alive[d] {
                opp[new_id[d]] = map(self.opp[d])?;
                label[new_id[d]] = self.label[d];
            }
        }
        let prev: Vec<usize> = (0..count).map(|d| face_next[opp[d]]).collect();
        let next = permutation_inverse(&prev)
            .ok_or_else(|| DiagramError::Malformed("faces do not define a rotation".into()))?;
        let darts = (0..count)
            .map(|d| Dart { opposite: opp[d], next: next[d], label: label[d] })
            .collect();
        let outer = self.outer.map(map).transpose()?;
        let inner = self.inner.map(map).transpose()?;
        Diagram::from_parts(darts, outer, inner)
    }
}
