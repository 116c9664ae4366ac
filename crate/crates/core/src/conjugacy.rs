//! Cyclic reduction with length certificates, floating syllables, the
//! conjugacy decision with explicit conjugators, and conjugacy-length bounds.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::words::{GraphProduct, NormalForm, Syllable, Word};

/// Default cap on the number of states visited by the shuffle-class search.
pub const DEFAULT_BFS_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error("word is not graphically cyclically reduced")]
    NotCyclicallyReduced,
    #[error("shuffle-class search exceeded {limit} states")]
    BfsLimitExceeded { limit: usize },
    #[error("conjugator of length {length} exceeds the certified bound {bound}")]
    CertificateFailed { length: u64, bound: u64 },
}

/// `input = conjugator * core * conjugator^-1` with `core` graphically
/// cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub conjugator: Word,
    pub core: Word,
}

/// A graphically cyclically reduced word split into its non-floating part
/// and its floating syllables (at most one per vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloatingDecomposition {
    pub core: Word,
    pub floats: Vec<Syllable>,
}

impl FloatingDecomposition {
    pub fn float_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.floats.iter().map(|s| s.vertex).collect();
        v.sort_unstable();
        v
    }
}

/// A conjugator `c` with `c a c^-1 = b` and the length bound it meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub conjugator: Word,
    pub bound: u64,
    /// The floating set shared by both elements.
    pub floating: Vec<usize>,
}

impl GraphProduct {
    pub fn is_graphically_cyclically_reduced(&self, w: &Word) -> bool {
        self.is_graphically_reduced(w) && self.cyclic_pair(w.syllables(), &[], |_, _| true).is_none()
    }

    /// First pair `i < j` on a common vertex with `w[i]` shuffleable to the
    /// front, `w[j]` shuffleable to the end, the vertex adjacent to every
    /// vertex in `outer`, and `accept(w[i], w[j])`.
    fn cyclic_pair(
        &self,
        w: &[Syllable],
        outer: &[usize],
        accept: impl Fn(&Syllable, &Syllable) -> bool,
    ) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            let v = w[i].vertex;
            if !outer.iter().all(|&u| self.graph().adjacent(u, v)) || !self.front_shuffleable(w, i) {
                continue;
            }
            for j in (i + 1..w.len()).rev() {
                if w[j].vertex == v && self.end_shuffleable(w, j) && accept(&w[i], &w[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Conjugates `w` to a graphically cyclically reduced core `b` through a
    /// conjugator `g` with `‖b‖ <= ‖w‖` and `‖g‖ <= ‖w‖ / 2`.
    ///
    /// Inverse pairs at the two ends are peeled off first. The remaining
    /// same-vertex pairs `a_t ... b_t` that can reach opposite ends are then
    /// folded together on whichever side has the smaller total length, the
    /// front on ties.
    pub fn cyclically_reduce(&self, w: &Word) -> CyclicReduction {
        let mut x: Vec<Syllable> = self.reduce(w).0;
        let mut shell: Vec<Syllable> = Vec::new();
        while let Some((i, j)) =
            self.cyclic_pair(&x, &[], |s, t| self.syllable_inverse(t) == *s)
        {
            shell.push(x[i]);
            x.remove(j);
            x.remove(i);
        }

        let mut fronts: Vec<Syllable> = Vec::new();
        let mut backs: Vec<Syllable> = Vec::new();
        let mut used: Vec<usize> = Vec::new();
        while let Some((i, j)) = self.cyclic_pair(&x, &used, |_, _| true) {
            used.push(x[i].vertex);
            fronts.push(x[i]);
            backs.push(x[j]);
            x.remove(j);
            x.remove(i);
        }

        let front_len: u64 = fronts.iter().map(|s| self.syllable_length(s)).sum();
        let back_len: u64 = backs.iter().map(|s| self.syllable_length(s)).sum();
        let folded = fronts.iter().zip(&backs).map(|(a, b)| self.merge(b, a));
        let (core, extra): (Vec<Syllable>, Vec<Syllable>) = if back_len <= front_len {
            // a' = (b_s..b_1)^-1 [(b_1 a_1)..(b_s a_s) x] (b_s..b_1)
            let core = folded.chain(x.iter().copied()).collect();
            (core, backs.iter().map(|b| self.syllable_inverse(b)).collect())
        } else {
            // a' = (a_1..a_s) [x (b_s a_s)..(b_1 a_1)] (a_1..a_s)^-1
            let mut tail: Vec<Syllable> = folded.collect();
            tail.reverse();
            (x.iter().copied().chain(tail).collect(), fronts)
        };
        shell.extend(extra);
        let core = Word(core);
        debug_assert!(self.is_graphically_cyclically_reduced(&core));
        CyclicReduction { conjugator: self.reduce(&Word(shell)), core }
    }

    /// Splits off the floating syllables: those whose vertex is adjacent to
    /// the vertex of every other syllable.
    pub fn floating_decomposition(&self, w: &Word) -> Result<FloatingDecomposition, ConjugacyError> {
        if !self.is_graphically_cyclically_reduced(w) {
            return Err(ConjugacyError::NotCyclicallyReduced);
        }
        let s = w.syllables();
        let (mut core, mut floats) = (Vec::new(), Vec::new());
        for (i, x) in s.iter().enumerate() {
            let floating = s
                .iter()
                .enumerate()
                .all(|(j, y)| j == i || self.graph().adjacent(x.vertex, y.vertex));
            if floating {
                floats.push(*x);
            } else {
                core.push(*x);
            }
        }
        Ok(FloatingDecomposition { core: Word(core), floats })
    }

    /// Every normal form reachable from `core` by shuffles and cyclic
    /// permutations, each with a conjugator `d` such that `d core d^-1`
    /// equals that normal form.
    pub fn cyclic_shuffle_class(
        &self,
        core: &Word,
        limit: usize,
    ) -> Result<HashMap<NormalForm, Word>, ConjugacyError> {
        let mut seen = HashMap::new();
        self.shuffle_search(core, None, limit, &mut seen)?;
        Ok(seen)
    }

    /// Breadth-first search over the shuffle class. A move rotates a syllable
    /// `s` that can be shuffled to the front over to the back (`s^-1 v s`)
    /// or one that can be shuffled to the back over to the front (`s v s^-1`).
    /// Stops early once `target` is found.
    fn shuffle_search(
        &self,
        core: &Word,
        target: Option<&NormalForm>,
        limit: usize,
        seen: &mut HashMap<NormalForm, Word>,
    ) -> Result<Option<Word>, ConjugacyError> {
        let start = self.canonical_form(core);
        let mut queue = VecDeque::new();
        seen.insert(start.clone(), Word::empty());
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            if Some(&v) == target {
                return Ok(seen.get(&v).cloned());
            }
            let d = seen[&v].clone();
            let s = v.as_word().syllables();
            for i in 0..s.len() {
                let mut rotations = Vec::with_capacity(2);
                if self.front_shuffleable(s, i) {
                    let mut r = s.to_vec();
                    let x = r.remove(i);
                    r.push(x);
                    rotations.push((r, self.syllable_inverse(&x)));
                }
                if self.end_shuffleable(s, i) {
                    let mut r = s.to_vec();
                    let x = r.remove(i);
                    r.insert(0, x);
                    rotations.push((r, x));
                }
                for (r, step) in rotations {
                    let next = self.normal_form_of_reduced(r);
                    if let Entry::Vacant(e) = seen.entry(next.clone()) {
                        let mut nd = vec![step];
                        nd.extend(d.iter().copied());
                        e.insert(self.reduce(&Word(nd)));
                        queue.push_back(next);
                        if seen.len() > limit {
                            return Err(ConjugacyError::BfsLimitExceeded { limit });
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Decides conjugacy. Returns a verified conjugator `c` with
    /// `c a c^-1 = b`, or `None` when `a` and `b` are not conjugate.
    pub fn are_conjugate(
        &self,
        a: &Word,
        b: &Word,
        limit: usize,
    ) -> Result<Option<ConjugacyWitness>, ConjugacyError> {
        let ra = self.cyclically_reduce(a);
        let rb = self.cyclically_reduce(b);
        let fa = self.floating_decomposition(&ra.core)?;
        let fb = self.floating_decomposition(&rb.core)?;
        if fa.float_vertices() != fb.float_vertices() {
            return Ok(None);
        }
        let mut locals = Vec::with_capacity(fa.floats.len());
        for p in &fa.floats {
            let q = fb.floats.iter().find(|q| q.vertex == p.vertex).expect("same float vertices");
            match self.group(p.vertex).conjugacy_witness_local(p.value, q.value) {
                Ok(Some(k)) => locals.push(Syllable::new(p.vertex, k)),
                Ok(None) => return Ok(None),
                Err(e) => unreachable!("syllables belong to their groups: {e}"),
            }
        }
        if !same_multiset(&fa.core, &fb.core) {
            return Ok(None);
        }
        let target = self.canonical_form(&fb.core);
        let mut seen = HashMap::new();
        let Some(d) = self.shuffle_search(&fa.core, Some(&target), limit, &mut seen)? else {
            return Ok(None);
        };

        let mut parts: Vec<Syllable> = rb.conjugator.0.clone();
        parts.extend(d.iter().copied());
        parts.extend(locals);
        parts.extend(self.inverse(&ra.conjugator).0);
        let conjugator = self.reduce(&Word(parts));

        let n = self.word_length(a) + self.word_length(b);
        let floating = fa.float_vertices();
        let bound = self.certified_bound(n, &floating);
        let length = self.reduced_length(&conjugator);
        debug_assert!(self.verify_witness(a, b, &conjugator));
        if length > bound {
            return Err(ConjugacyError::CertificateFailed { length, bound });
        }
        Ok(Some(ConjugacyWitness { conjugator, bound, floating }))
    }

    /// `(D+1) n + Σ_{u ∈ floating} CLF_u(n)`.
    pub fn certified_bound(&self, n: u64, floating: &[usize]) -> u64 {
        let d = self.graph().opposite_diameter() as u64;
        let local: u64 = floating.iter().map(|&u| self.local_clf(u, n)).sum();
        (d + 1) * n + local
    }

    fn local_clf(&self, u: usize, n: u64) -> u64 {
        self.group(u).local_clf(n).expect("every supported kind has a local bound")
    }

    pub fn verify_witness(&self, a: &Word, b: &Word, c: &Word) -> bool {
        self.equal(&self.conjugate(c, a), b)
    }

    /// `(D+1) n + max` over maximal cliques of the summed local conjugacy
    /// length functions.
    pub fn clf_upper_bound(&self, n: u64) -> u64 {
        let d = self.graph().opposite_diameter() as u64;
        let best = self
            .graph()
            .maximal_cliques()
            .iter()
            .map(|clique| clique.iter().map(|&u| self.local_clf(u, n)).sum::<u64>())
            .max()
            .unwrap_or(0);
        (d + 1) * n + best
    }
}

fn same_multiset(x: &Word, y: &Word) -> bool {
    let mut a = x.0.clone();
    let mut b = y.0.clone();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn w(p: &GraphProduct, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    fn z3_path() -> GraphProduct {
        let z3 = crate::VertexGroup::cyclic(3).unwrap();
        let g = crate::SimplicialGraph::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        GraphProduct::new(g, vec![z3.clone(), z3.clone(), z3]).unwrap()
    }

    #[test]
    fn cyclic_reducedness() {
        let p = instances::frobenius_path();
        assert!(p.is_graphically_cyclically_reduced(&Word::empty()));
        assert!(p.is_graphically_cyclically_reduced(&w(&p, "a:2 b:2 c:r2")));
        assert!(!p.is_graphically_cyclically_reduced(&w(&p, "e:1 a:1 b:2 c:r2 a:1 e:-1")));
    }

    #[test]
    fn frobenius_example_reduction() {
        let p = instances::frobenius_path();
        let g = w(&p, "e:1 a:1 b:2 c:r2 a:1 e:-1");
        let r = p.cyclically_reduce(&g);
        assert_eq!(r.conjugator, w(&p, "e:1 a:-1"));
        assert!(p.equal(&r.core, &w(&p, "a:2 b:2 c:r2")));
        let f = p.floating_decomposition(&r.core).unwrap();
        assert_eq!(f.core, w(&p, "a:2 b:2"));
        assert_eq!(f.floats, w(&p, "c:r2").0);
    }

    #[test]
    fn frobenius_example_conjugate() {
        let p = instances::frobenius_path();
        let g = w(&p, "e:1 a:1 b:2 c:r2 a:1 e:-1");
        let h = w(&p, "e:-1 b:1 a:2 c:r3 e:1 b:1");
        let wit = p.are_conjugate(&g, &h, DEFAULT_BFS_LIMIT).unwrap().unwrap();
        assert!(p.verify_witness(&g, &h, &wit.conjugator));
        assert!(p.reduced_length(&wit.conjugator) <= wit.bound);
        for x in [&g, &h] {
            let core = p.cyclically_reduce(x).core;
            assert_eq!(p.floating_decomposition(&core).unwrap().float_vertices(), vec![2]);
        }
        // r2 has order 5 and s order 4.
        let k = w(&p, "e:-1 b:1 a:2 c:s e:1 b:1");
        assert_eq!(p.are_conjugate(&g, &k, DEFAULT_BFS_LIMIT).unwrap(), None);
    }

    #[test]
    fn reduction_identity_on_reduced() {
        let p = instances::gamma_ex();
        let x = w(&p, "a:1 b:1");
        let r = p.cyclically_reduce(&x);
        assert!(r.conjugator.is_empty());
        assert_eq!(r.core, x);
    }

    #[test]
    fn decomposition_edge_cases() {
        let p = instances::gamma_ex();
        let single = w(&p, "b:1");
        let f = p.floating_decomposition(&single).unwrap();
        assert!(f.core.is_empty());
        assert_eq!(f.floats, single.0);
        let q = instances::infinite_dihedral();
        let x = w(&q, "x:1 y:1");
        assert_eq!(q.floating_decomposition(&x).unwrap().core, x);
        assert_eq!(
            p.floating_decomposition(&w(&p, "a:1 c:1 a:1")),
            Err(ConjugacyError::NotCyclicallyReduced)
        );
    }

    #[test]
    fn shuffle_classes() {
        let p = z3_path();
        let one = p.cyclic_shuffle_class(&w(&p, "a:1"), 100).unwrap();
        assert_eq!(one.len(), 1);
        let core = w(&p, "a:2 b:2");
        let class = p.cyclic_shuffle_class(&core, 100).unwrap();
        let target = p.canonical_form(&w(&p, "b:2 a:2"));
        let d = &class[&target];
        assert!(p.equal(&p.conjugate(d, &core), target.as_word()));
        for (v, d) in &class {
            assert!(p.equal(&p.conjugate(d, &core), v.as_word()));
        }
        assert_eq!(
            p.cyclic_shuffle_class(&w(&p, "a:1 b:1 a:2 b:2"), 1),
            Err(ConjugacyError::BfsLimitExceeded { limit: 1 })
        );
    }

    #[test]
    fn conjugacy_basics() {
        let p = instances::gamma_ex();
        let a = w(&p, "a:1 b:1 c:2");
        let wit = p.are_conjugate(&a, &a, DEFAULT_BFS_LIMIT).unwrap().unwrap();
        assert!(wit.conjugator.is_empty());
        assert!(p.verify_witness(&a, &a, &Word::empty()));
        assert!(p.are_conjugate(&w(&p, "a:1"), &w(&p, "b:1"), 100).unwrap().is_none());
        assert!(!p.verify_witness(&w(&p, "a:1"), &w(&p, "b:1"), &w(&p, "c:1")));
        let c = w(&p, "b:1 a:1");
        let b = p.conjugate(&c, &a);
        let wit = p.are_conjugate(&a, &b, 100).unwrap().unwrap();
        assert!(p.verify_witness(&a, &b, &wit.conjugator));
    }

    #[test]
    fn clf_bounds() {
        let p = instances::infinite_dihedral();
        assert_eq!(p.clf_upper_bound(5), 10);
        let q = instances::gamma_ex();
        assert_eq!(q.clf_upper_bound(4), 8);
        let f = instances::frobenius_path();
        let c = f.group(2).local_clf(7).unwrap();
        // D = 3: the opposite graph is the path b - a - e - c.
        assert_eq!(f.clf_upper_bound(7), 4 * 7 + c);
    }
}
