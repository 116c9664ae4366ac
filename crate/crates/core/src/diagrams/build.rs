//! Disc diagrams grown downwards from a top boundary path. The lower
//! frontier is rewritten one step at a time: a swap of commuting syllables
//! adds a square, a merge of same-vertex syllables adds a triangle and an
//! inverse pair is folded shut.

use super::edit::Editor;
use super::{Diagram, DiagramError};
use crate::words::{GraphProduct, Syllable, Word};

struct Frontier<'a> {
    product: &'a GraphProduct,
    ed: Editor,
    /// Frontier darts, left to right.
    path: Vec<usize>,
}

impl<'a> Frontier<'a> {
    fn new(product: &'a GraphProduct, top: &Word) -> Result<Self, DiagramError> {
        let mut ed = Editor::empty();
        let mut path = Vec::with_capacity(top.len());
        for (i, s) in top.iter().enumerate() {
            if s.is_identity() {
                return Err(DiagramError::IdentityEdgeLabel(2 * i));
            }
            path.push(ed.new_edge(*s, product.syllable_inverse(s)).0);
        }
        if !path.is_empty() {
            let mut outer = path.clone();
            outer.extend(path.iter().rev().map(|&d| ed.opp[d]));
            ed.faces.push(outer);
            ed.outer = Some(path[0]);
        }
        Ok(Self { product, ed, path })
    }

    fn word(&self) -> Word {
        self.path.iter().map(|&d| self.ed.label[d]).collect()
    }

    fn syllable(&self, i: usize) -> Syllable {
        self.ed.label[self.path[i]]
    }

    fn new_edge(&mut self, s: Syllable) -> usize {
        self.ed.new_edge(s, self.product.syllable_inverse(&s)).0
    }

    /// The two outer-face darts below frontier positions `i`, `i + 1`, in
    /// outer-face order, and that face.
    fn below(&self, i: usize) -> (usize, usize, usize) {
        let (f, g) = (self.path[i], self.path[i + 1]);
        let (first, second) = (self.ed.opp[g], self.ed.opp[f]);
        (self.ed.face_of(first), first, second)
    }

    fn swap(&mut self, i: usize) -> Result<(), DiagramError> {
        if i + 1 >= self.path.len() {
            return Err(DiagramError::IllegalSwap(i));
        }
        let (s, t) = (self.syllable(i), self.syllable(i + 1));
        if !self.product.graph().adjacent(s.vertex, t.vertex) {
            return Err(DiagramError::IllegalSwap(i));
        }
        let (face, first, second) = self.below(i);
        let n1 = self.new_edge(t);
        let n2 = self.new_edge(s);
        let (o1, o2) = (self.ed.opp[n1], self.ed.opp[n2]);
        self.ed.splice_pair(face, first, second, &[o2, o1]);
        self.ed.faces.push(vec![first, second, n1, n2]);
        self.path.splice(i..i + 2, [n1, n2]);
        Ok(())
    }

    /// Merges positions `i` and `i + 1`, which lie on one vertex.
    fn merge(&mut self, i: usize) {
        let (s, t) = (self.syllable(i), self.syllable(i + 1));
        let m = self.product.merge(&s, &t);
        let (face, first, second) = self.below(i);
        if m.is_identity() {
            let (f, g) = (self.path[i], self.path[i + 1]);
            self.ed.splice_pair(face, first, second, &[]);
            self.ed.kill(first);
            self.ed.kill(second);
            self.ed.opp[f] = g;
            self.ed.opp[g] = f;
            self.path.drain(i..i + 2);
        } else {
            let n = self.new_edge(m);
            let o = self.ed.opp[n];
            self.ed.splice_pair(face, first, second, &[o]);
            self.ed.faces.push(vec![first, second, n]);
            self.path.splice(i..i + 2, [n]);
        }
    }

    fn finish(self) -> Result<(Diagram, Word), DiagramError> {
        let bottom = self.word();
        let product = self.product;
        let d = self.ed.finish()?;
        d.validate(product)?;
        Ok((d, bottom))
    }
}

/// The stack of squares realizing a sequence of adjacent transpositions.
/// Swap `i` exchanges positions `i` and `i + 1`. Returns the diagram, whose
/// boundary reads `top w2^-1`, and the rearranged word `w2`.
pub fn shuffle_diagram(
    product: &GraphProduct,
    top: &Word,
    swaps: &[usize],
) -> Result<(Diagram, Word), DiagramError> {
    let mut fr = Frontier::new(product, top)?;
    for &i in swaps {
        fr.swap(i)?;
    }
    fr.finish()
}

/// A disc diagram for the graphical reduction of `w`: syllables are shuffled
/// next to their merge partner and merged (a triangle) or cancelled (a
/// fold). The boundary reads `w r^-1` where `r`, also returned, is
/// graphically reduced and equal to `w`.
pub fn reduction_diagram(product: &GraphProduct, w: &Word) -> Result<(Diagram, Word), DiagramError> {
    let mut fr = Frontier::new(product, w)?;
    loop {
        let cur = fr.word();
        let s = cur.syllables();
        let pair = (0..s.len()).find_map(|j| {
            (0..j)
                .rev()
                .take_while(|&i| s[i].vertex == s[j].vertex || product.commute(&s[i], &s[j]))
                .find(|&i| s[i].vertex == s[j].vertex)
                .map(|i| (i, j))
        });
        let Some((i, j)) = pair else { break };
        for k in (i + 1..j).rev() {
            fr.swap(k)?;
        }
        fr.merge(i);
    }
    fr.finish()
}
