//! Brute-force ground truth for the word and conjugacy problems.
//!
//! Nothing here calls the reduction or normal-form code of [`crate::words`].
//! Equality is decided by exhaustive rewrite closures of raw words; elements
//! are identified by the lexicographically least shortest member of their
//! closure, and Cayley balls are grown one generator at a time.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::exec::Execution;
use crate::words::{GraphProduct, Syllable, Word};

/// Default syllable cap for [`Oracle::oracle_equal`] inputs.
pub const DEFAULT_WORD_CAP: usize = 8;
/// Default cap on `n` for [`Oracle::empirical_clf`].
pub const DEFAULT_CLF_CAP: u64 = 6;
/// Default cap on the number of members of a single closure.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {size}, over the oracle cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("conjugacy oracles need finite vertex groups")]
    UnsupportedKind,
}

/// All raw words reachable from a seed by deleting identity syllables,
/// swapping neighbours on adjacent vertices and merging same-vertex
/// neighbours.
#[derive(Debug, Clone)]
pub struct RewriteClosure {
    pub seed: Word,
    pub members: HashSet<Word>,
}

impl RewriteClosure {
    pub fn intersects(&self, other: &RewriteClosure) -> bool {
        let (small, large) = if self.members.len() <= other.members.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.members.iter().any(|w| large.members.contains(w))
    }

    /// The lexicographically least member among the shortest ones. Two raw
    /// words represent the same element exactly when their keys agree.
    pub fn key(&self) -> Word {
        let min = self.members.iter().map(Word::len).min().unwrap_or(0);
        self.members
            .iter()
            .filter(|w| w.len() == min)
            .min()
            .cloned()
            .unwrap_or_default()
    }
}

/// Elements of a Cayley ball, layer by layer. Layer `k` holds the keys of
/// the elements at distance exactly `k`, sorted.
#[derive(Debug, Clone)]
pub struct Ball {
    pub layers: Vec<Vec<Word>>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(distance, key)` in ball order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Word)> {
        self.layers.iter().enumerate().flat_map(|(d, l)| l.iter().map(move |w| (d, w)))
    }

    pub fn distances(&self) -> HashMap<Word, usize> {
        self.iter().map(|(d, w)| (w.clone(), d)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    product: &'a GraphProduct,
    word_cap: usize,
    clf_cap: u64,
    closure_limit: usize,
    exec: Execution,
}

impl<'a> Oracle<'a> {
    pub fn new(product: &'a GraphProduct) -> Self {
        Self {
            product,
            word_cap: DEFAULT_WORD_CAP,
            clf_cap: DEFAULT_CLF_CAP,
            closure_limit: DEFAULT_CLOSURE_LIMIT,
            exec: Execution::default(),
        }
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn with_clf_cap(mut self, cap: u64) -> Self {
        self.clf_cap = cap;
        self
    }

    pub fn with_closure_limit(mut self, limit: usize) -> Self {
        self.closure_limit = limit;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    fn check_cap(&self, w: &Word) -> Result<(), OracleError> {
        if w.len() > self.word_cap {
            return Err(OracleError::CapExceeded {
                what: "word length",
                size: w.len(),
                cap: self.word_cap,
            });
        }
        Ok(())
    }

    /// The rewrite closure of `seed`, which must respect the word cap.
    pub fn closure(&self, seed: &Word) -> Result<RewriteClosure, OracleError> {
        self.check_cap(seed)?;
        self.closure_unchecked(seed)
    }

    fn closure_unchecked(&self, seed: &Word) -> Result<RewriteClosure, OracleError> {
        let graph = self.product.graph();
        let mut members = HashSet::new();
        let mut queue = VecDeque::new();
        members.insert(seed.clone());
        queue.push_back(seed.clone());
        while let Some(w) = queue.pop_front() {
            let s = w.syllables();
            let mut next = Vec::new();
            for i in 0..s.len() {
                if s[i].value == 0 {
                    let mut v = s.to_vec();
                    v.remove(i);
                    next.push(Word(v));
                }
                if i + 1 < s.len() {
                    let (x, y) = (s[i], s[i + 1]);
                    if graph.adjacent(x.vertex, y.vertex) {
                        let mut v = s.to_vec();
                        v.swap(i, i + 1);
                        next.push(Word(v));
                    } else if x.vertex == y.vertex {
                        let mut v = s.to_vec();
                        let g = self.product.group(x.vertex);
                        v[i] = Syllable::new(x.vertex, g.compose(x.value, y.value).expect("member"));
                        v.remove(i + 1);
                        next.push(Word(v));
                    }
                }
            }
            for v in next {
                if !members.contains(&v) {
                    if members.len() >= self.closure_limit {
                        return Err(OracleError::CapExceeded {
                            what: "closure size",
                            size: members.len() + 1,
                            cap: self.closure_limit,
                        });
                    }
                    members.insert(v.clone());
                    queue.push_back(v);
                }
            }
        }
        Ok(RewriteClosure { seed: seed.clone(), members })
    }

    /// Complete equality test for words within the cap.
    pub fn oracle_equal(&self, w1: &Word, w2: &Word) -> Result<bool, OracleError> {
        Ok(self.closure(w1)?.intersects(&self.closure(w2)?))
    }

    /// Element key of a word within the cap.
    pub fn key(&self, w: &Word) -> Result<Word, OracleError> {
        Ok(self.closure(w)?.key())
    }

    /// Key of `k s` where `k` is already a key. Keys are shortest words, so
    /// this only ever closes a word one syllable longer than a key.
    pub fn key_times(&self, k: &Word, s: Syllable) -> Result<Word, OracleError> {
        let mut v = k.0.clone();
        v.push(s);
        Ok(self.closure_unchecked(&Word(v))?.key())
    }

    /// Key of `k w` for a key `k` and an arbitrary raw word `w`.
    pub fn key_times_word(&self, k: &Word, w: &Word) -> Result<Word, OracleError> {
        let mut acc = k.clone();
        for s in w.iter() {
            acc = self.key_times(&acc, *s)?;
        }
        Ok(acc)
    }

    /// Key of an arbitrary raw word, built one syllable at a time so long
    /// words never need a full closure.
    pub fn key_of(&self, w: &Word) -> Result<Word, OracleError> {
        self.key_times_word(&Word::empty(), w)
    }

    fn inverse_raw(&self, w: &Word) -> Word {
        w.iter()
            .rev()
            .map(|s| {
                let g = self.product.group(s.vertex);
                Syllable::new(s.vertex, g.invert(s.value).expect("member"))
            })
            .collect()
    }

    /// Generator steps: every declared generator of every vertex group and
    /// its inverse.
    fn steps(&self) -> Vec<Syllable> {
        self.product
            .groups()
            .iter()
            .enumerate()
            .flat_map(|(u, g)| g.symmetric_generators().into_iter().map(move |x| Syllable::new(u, x)))
            .collect()
    }

    /// The Cayley ball of the given radius with respect to the union of the
    /// vertex generating sets.
    pub fn ball(&self, radius: usize) -> Result<Ball, OracleError> {
        let steps = self.steps();
        let mut seen: HashSet<Word> = HashSet::from([Word::empty()]);
        let mut layers = vec![vec![Word::empty()]];
        for _ in 0..radius {
            let frontier = layers.last().expect("non-empty");
            let grown = self.exec.map(frontier, |x| {
                steps.iter().map(|s| self.key_times(x, *s)).collect::<Result<Vec<_>, _>>()
            });
            let mut next: Vec<Word> = Vec::new();
            for batch in grown {
                next.extend(batch?);
            }
            next.sort_unstable();
            next.dedup();
            next.retain(|w| !seen.contains(w));
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            layers.push(next);
        }
        Ok(Ball { layers })
    }

    fn require_finite(&self) -> Result<(), OracleError> {
        if self.product.all_finite() {
            Ok(())
        } else {
            Err(OracleError::UnsupportedKind)
        }
    }

    /// First `c` (in ball order) with `c a c^-1 = b` among elements of length
    /// at most `radius`.
    pub fn oracle_conjugate(
        &self,
        a: &Word,
        b: &Word,
        radius: usize,
    ) -> Result<Option<Word>, OracleError> {
        self.require_finite()?;
        self.check_cap(a)?;
        self.check_cap(b)?;
        let ball = self.ball(radius)?;
        self.conjugator_in_ball(&ball, a, b, radius)
    }

    /// [`Oracle::oracle_conjugate`] against a precomputed ball, which must
    /// have radius at least `radius` unless the group is exhausted earlier.
    pub fn conjugator_in_ball(
        &self,
        ball: &Ball,
        a: &Word,
        b: &Word,
        radius: usize,
    ) -> Result<Option<Word>, OracleError> {
        let target = self.key_of(b)?;
        for (d, c) in ball.iter() {
            if d > radius {
                break;
            }
            if self.conjugate_key(c, a)? == target {
                return Ok(Some(c.clone()));
            }
        }
        Ok(None)
    }

    /// For every conjugate `c a c^-1` with `c` in the ball, the first such
    /// `c` in ball order together with its length.
    pub fn conjugates(&self, ball: &Ball, a: &Word) -> Result<HashMap<Word, (usize, Word)>, OracleError> {
        let mut out = HashMap::new();
        for (d, c) in ball.iter() {
            out.entry(self.conjugate_key(c, a)?).or_insert_with(|| (d, c.clone()));
        }
        Ok(out)
    }

    /// Key of `c a c^-1` for a key `c`.
    fn conjugate_key(&self, c: &Word, a: &Word) -> Result<Word, OracleError> {
        let ca = self.key_times_word(c, a)?;
        self.key_times_word(&ca, &self.inverse_raw(c))
    }

    /// Measured conjugacy length function at `n`: the largest, over
    /// conjugate pairs with `‖a‖ + ‖b‖ <= n`, of the shortest conjugator.
    ///
    /// Conjugators are searched up to `search_radius`; pairs whose
    /// conjugators all lie further out are not seen, so callers comparing
    /// against an upper bound `B` should search past `B`.
    pub fn empirical_clf(&self, n: u64, search_radius: usize) -> Result<u64, OracleError> {
        self.require_finite()?;
        if n > self.clf_cap {
            return Err(OracleError::CapExceeded {
                what: "clf argument",
                size: n as usize,
                cap: self.clf_cap as usize,
            });
        }
        let conjugators = self.ball(search_radius.max(n as usize))?;
        let short: Vec<(usize, Word)> = conjugators
            .iter()
            .filter(|(d, _)| *d as u64 <= n)
            .map(|(d, w)| (d, w.clone()))
            .collect();
        let lengths: HashMap<&Word, usize> = short.iter().map(|(d, w)| (w, *d)).collect();
        let per_a = self.exec.map(&short, |(da, a)| -> Result<u64, OracleError> {
            let budget = n as usize - da;
            let mut best: HashMap<Word, usize> = HashMap::new();
            for (dc, c) in conjugators.iter() {
                let b = self.conjugate_key(c, a)?;
                if lengths.get(&b).is_some_and(|&db| db <= budget) {
                    best.entry(b).or_insert(dc);
                }
            }
            Ok(best.values().copied().max().unwrap_or(0) as u64)
        });
        let mut out = 0;
        for r in per_a {
            out = out.max(r?);
        }
        Ok(out)
    }
}
