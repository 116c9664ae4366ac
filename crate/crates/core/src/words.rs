//! Words over the vertex groups of a graph product: parsing, graphical
//! reduction, canonical normal forms and geodesic length.

use std::fmt;

use thiserror::Error;

use crate::graph::SimplicialGraph;
use crate::vertex_group::VertexGroup;

/// One factor of a word: an element of the group at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub value: i64,
}

impl Syllable {
    pub fn new(vertex: usize, value: i64) -> Self {
        Self { vertex, value }
    }

    pub fn is_identity(&self) -> bool {
        self.value == VertexGroup::IDENTITY
    }
}

/// A finite sequence of syllables. Raw words may contain identity syllables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Syllable>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Syllable> {
        self.0.iter()
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }
}

impl From<Vec<Syllable>> for Word {
    fn from(v: Vec<Syllable>) -> Self {
        Word(v)
    }
}

impl FromIterator<Syllable> for Word {
    fn from_iter<I: IntoIterator<Item = Syllable>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// The lexicographically least graphically reduced word of its element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Word);

impl NormalForm {
    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown element `{atom}` at vertex `{vertex}`")]
    UnknownElement { vertex: String, atom: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has {vertices} vertices but {groups} vertex groups were given")]
pub struct GroupCountMismatch {
    pub vertices: usize,
    pub groups: usize,
}

/// A graph product: a simplicial graph with a group at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProduct {
    graph: SimplicialGraph,
    groups: Vec<VertexGroup>,
}

impl GraphProduct {
    pub fn new(graph: SimplicialGraph, groups: Vec<VertexGroup>) -> Result<Self, GroupCountMismatch> {
        if graph.len() != groups.len() {
            return Err(GroupCountMismatch { vertices: graph.len(), groups: groups.len() });
        }
        Ok(Self { graph, groups })
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    pub fn group(&self, vertex: usize) -> &VertexGroup {
        &self.groups[vertex]
    }

    /// Per-vertex infinite flags, derived from the group kinds.
    pub fn infinite_flags(&self) -> Vec<bool> {
        self.groups.iter().map(|g| !g.is_finite()).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.groups.iter().all(VertexGroup::is_finite)
    }

    /// Whether `s` and `t` commute by virtue of the graph: distinct adjacent
    /// vertices.
    pub fn commute(&self, s: &Syllable, t: &Syllable) -> bool {
        self.graph.adjacent(s.vertex, t.vertex)
    }

    pub fn contains(&self, s: &Syllable) -> bool {
        s.vertex < self.groups.len() && self.groups[s.vertex].contains(s.value)
    }

    pub fn syllable_inverse(&self, s: &Syllable) -> Syllable {
        Syllable::new(s.vertex, self.groups[s.vertex].inv(s.value))
    }

    pub fn syllable_length(&self, s: &Syllable) -> u64 {
        self.groups[s.vertex].len(s.value)
    }

    /// Product of two syllables at the same vertex.
    pub fn merge(&self, s: &Syllable, t: &Syllable) -> Syllable {
        debug_assert_eq!(s.vertex, t.vertex);
        Syllable::new(s.vertex, self.groups[s.vertex].mul(s.value, t.value))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        for token in text.split(' ') {
            if token.is_empty() {
                return Err(WordError::SyntaxError(
                    "tokens must be separated by single spaces".into(),
                ));
            }
            let (name, atom) = token
                .split_once(':')
                .ok_or_else(|| WordError::SyntaxError(format!("token `{token}` lacks `:`")))?;
            if name.is_empty() || atom.is_empty() {
                return Err(WordError::SyntaxError(format!("malformed token `{token}`")));
            }
            let vertex = self
                .graph
                .vertex(name)
                .ok_or_else(|| WordError::UnknownVertex(name.to_string()))?;
            let value = self.groups[vertex].parse_atom(atom).ok_or_else(|| {
                WordError::UnknownElement { vertex: name.to_string(), atom: atom.to_string() }
            })?;
            out.push(Syllable::new(vertex, value));
        }
        Ok(Word(out))
    }

    pub fn format_syllable(&self, s: &Syllable) -> String {
        format!("{}:{}", self.graph.name(s.vertex), self.groups[s.vertex].format_atom(s.value))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.iter().map(|s| self.format_syllable(s)).collect::<Vec<_>>().join(" ")
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { product: self, word: w }
    }

    pub fn inverse(&self, w: &Word) -> Word {
        w.iter().rev().map(|s| self.syllable_inverse(s)).collect()
    }

    /// Reduced product of the given words.
    pub fn multiply(&self, parts: &[&Word]) -> Word {
        self.reduce(&Word::concat(parts))
    }

    /// `c a c^-1`, reduced.
    pub fn conjugate(&self, c: &Word, a: &Word) -> Word {
        self.multiply(&[c, a, &self.inverse(c)])
    }

    /// Graphical reduction: identity syllables are deleted and each incoming
    /// syllable merges into the unique earlier syllable of its vertex that it
    /// can reach through commuting syllables. The product takes the earlier
    /// position.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Syllable> = Vec::with_capacity(w.len());
        for s in w.iter() {
            self.push_reduced(&mut stack, *s);
        }
        Word(stack)
    }

    fn push_reduced(&self, stack: &mut Vec<Syllable>, s: Syllable) {
        if s.is_identity() {
            return;
        }
        let mut k = stack.len();
        while k > 0 {
            let t = stack[k - 1];
            if t.vertex == s.vertex {
                let m = self.merge(&t, &s);
                if m.is_identity() {
                    // Removing a syllable may unblock later ones; replay them.
                    let tail = stack.split_off(k);
                    stack.pop();
                    for u in tail {
                        self.push_reduced(stack, u);
                    }
                } else {
                    stack[k - 1] = m;
                }
                return;
            }
            if !self.graph.adjacent(t.vertex, s.vertex) {
                break;
            }
            k -= 1;
        }
        stack.push(s);
    }

    pub fn is_graphically_reduced(&self, w: &Word) -> bool {
        let s = w.syllables();
        for j in 0..s.len() {
            if s[j].is_identity() {
                return false;
            }
            for i in (0..j).rev() {
                if s[i].vertex == s[j].vertex {
                    return false;
                }
                if !self.graph.adjacent(s[i].vertex, s[j].vertex) {
                    break;
                }
            }
        }
        true
    }

    /// Whether `w[i]` can be shuffled to the front of `w`.
    pub fn front_shuffleable(&self, w: &[Syllable], i: usize) -> bool {
        w[..i].iter().all(|t| self.graph.adjacent(t.vertex, w[i].vertex))
    }

    /// Whether `w[j]` can be shuffled to the end of `w`.
    pub fn end_shuffleable(&self, w: &[Syllable], j: usize) -> bool {
        w[j + 1..].iter().all(|t| self.graph.adjacent(t.vertex, w[j].vertex))
    }

    /// Lex-least linearization of the reduced form: repeatedly emit the
    /// smallest syllable that commutes with every syllable still before it.
    pub fn canonical_form(&self, w: &Word) -> NormalForm {
        NormalForm(self.linearize(self.reduce(w).0))
    }

    /// Canonical form of a word already known to be graphically reduced.
    pub(crate) fn normal_form_of_reduced(&self, w: Vec<Syllable>) -> NormalForm {
        NormalForm(self.linearize(w))
    }

    fn linearize(&self, mut rest: Vec<Syllable>) -> Word {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                if best.is_some_and(|b| rest[b] <= rest[i]) {
                    continue;
                }
                if self.front_shuffleable(&rest, i) {
                    best = Some(i);
                }
            }
            out.push(rest.remove(best.expect("first syllable is always available")));
        }
        Word(out)
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> bool {
        self.canonical_form(w1) == self.canonical_form(w2)
    }

    /// Sum of the vertex-group lengths of the reduced form's syllables.
    pub fn word_length(&self, w: &Word) -> u64 {
        self.reduced_length(&self.reduce(w))
    }

    /// Length of a word already known to be graphically reduced.
    pub fn reduced_length(&self, w: &Word) -> u64 {
        w.iter().map(|s| self.syllable_length(s)).sum()
    }
}

pub struct DisplayWord<'a> {
    product: &'a GraphProduct,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.product.format_word(self.word))
    }
}
