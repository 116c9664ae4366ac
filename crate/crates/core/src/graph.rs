//! The defining graph of a graph product and the combinatorics derived from it:
//! opposite-graph diameter, cliques, Meier's condition and the symbolic Dehn
//! classifier.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("vertex name `{0}` is empty or contains whitespace or `:`")]
    BadName(String),
}

/// A finite simplicial graph. Vertices are addressed by their declaration
/// index, which is also the global vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
}

impl SimplicialGraph {
    /// Builds a graph from declared vertex names and an edge list.
    ///
    /// A repeated edge is accepted and stored once.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() || v.chars().any(|c| c.is_whitespace() || c == ':') {
                return Err(GraphError::BadName(v.to_string()));
            }
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let n = names.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index
                .get(u)
                .ok_or_else(|| GraphError::UnknownEndpoint(u.to_string()))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| GraphError::UnknownEndpoint(v.to_string()))?;
            if iu == iv {
                return Err(GraphError::SelfLoop(u.to_string()));
            }
            adjacency[iu][iv] = true;
            adjacency[iv][iu] = true;
        }
        Ok(Self {
            names,
            index,
            adjacency,
        })
    }

    /// The complete graph on `n` vertices named `v0..v{n-1}`.
    pub fn complete(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
        Self::new(&names, &edges).expect("complete graph is simple")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if self.adjacency[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn link(&self, u: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.adjacency[u][v]).collect()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.adjacency[u][v])
        })
    }

    /// True when every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.is_clique(&all)
    }

    /// Whether `u` is adjacent to every other vertex.
    pub fn is_universal(&self, u: usize) -> bool {
        (0..self.len()).all(|v| v == u || self.adjacency[u][v])
    }

    /// Largest diameter of a connected component of the opposite graph.
    /// Isolated vertices contribute 0.
    pub fn opposite_diameter(&self) -> usize {
        let n = self.len();
        let mut best = 0;
        for source in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if v != u && !self.adjacency[u][v] && dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            let eccentricity = dist.iter().filter(|&&d| d != usize::MAX).max();
            best = best.max(*eccentricity.unwrap_or(&0));
        }
        best
    }

    /// All maximal cliques, each sorted by vertex order, the list sorted
    /// lexicographically. The empty graph has the single empty clique.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let candidates: Vec<usize> = (0..self.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), candidates, Vec::new(), &mut out);
        for clique in &mut out {
            clique.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        current: &mut Vec<usize>,
        candidates: Vec<usize>,
        excluded: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .copied()
            .max_by_key(|&p| candidates.iter().filter(|&&c| self.adjacency[p][c]).count())
            .expect("non-empty");
        let mut candidates = candidates;
        let mut excluded = excluded;
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&v| !self.adjacency[pivot][v])
            .collect();
        for v in branch {
            let next_candidates = candidates
                .iter()
                .copied()
                .filter(|&w| self.adjacency[v][w])
                .collect();
            let next_excluded = excluded
                .iter()
                .copied()
                .filter(|&w| self.adjacency[v][w])
                .collect();
            current.push(v);
            self.bron_kerbosch(current, next_candidates, next_excluded, out);
            current.pop();
            candidates.retain(|&w| w != v);
            excluded.push(v);
        }
    }

    /// True when some four vertices span a 4-cycle with no diagonal.
    pub fn has_induced_square(&self) -> bool {
        let n = self.len();
        let adj = &self.adjacency;
        // An induced square is two non-adjacent pairs {a,c}, {b,d} with all
        // four cross edges present.
        for a in 0..n {
            for c in a + 1..n {
                if adj[a][c] {
                    continue;
                }
                let common: Vec<usize> = (0..n).filter(|&x| adj[a][x] && adj[c][x]).collect();
                for (i, &b) in common.iter().enumerate() {
                    if common[i + 1..].iter().any(|&d| !adj[b][d]) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Meier's condition: square-free, no two infinite vertex groups adjacent,
/// and every infinite vertex group has a complete link.
pub fn meier_condition(graph: &SimplicialGraph, infinite: &[bool]) -> bool {
    assert_eq!(infinite.len(), graph.len(), "one flag per vertex");
    if graph.has_induced_square() {
        return false;
    }
    for (u, v) in graph.edges() {
        if infinite[u] && infinite[v] {
            return false;
        }
    }
    (0..graph.len())
        .filter(|&u| infinite[u])
        .all(|u| graph.is_clique(&graph.link(u)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DehnCase {
    Clique,
    Meier,
    NonMeier,
}

impl fmt::Display for DehnCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DehnCase::Clique => "clique",
            DehnCase::Meier => "meier",
            DehnCase::NonMeier => "non-meier",
        })
    }
}

/// One argument of the max-expression describing a Dehn function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DehnTerm {
    Linear,
    Quadratic,
    /// The Dehn function of the vertex group at this vertex.
    Delta(usize),
    /// The subnegative closure of the Dehn function at this vertex.
    Closure(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnClass {
    pub case: DehnCase,
    pub terms: Vec<DehnTerm>,
}

impl DehnClass {
    /// Renders the expression with vertex names, e.g.
    /// `max(linear,closure-of-delta(a),closure-of-delta(b))`.
    pub fn expression(&self, graph: &SimplicialGraph) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match *t {
                DehnTerm::Linear => "linear".to_string(),
                DehnTerm::Quadratic => "quadratic".to_string(),
                DehnTerm::Delta(u) => format!("delta({})", graph.name(u)),
                DehnTerm::Closure(u) => format!("closure-of-delta({})", graph.name(u)),
            })
            .collect();
        format!("max({})", parts.join(","))
    }
}

/// Symbolic Dehn function of the graph product, by the three-way case split
/// (clique / Meier / not Meier).
///
/// A complete graph with two or more infinite vertex groups is classified
/// as non-Meier: the direct sum of two infinite groups has a quadratic
/// lower bound, so the quadratic term must appear.
///
/// For the Meier case the first of the two equal forms is emitted:
/// `max(linear, ~delta(u) ...)`, where `~delta(u)` is `delta(u)` for a
/// universal vertex and its subnegative closure otherwise.
pub fn dehn_class(graph: &SimplicialGraph, infinite: &[bool]) -> DehnClass {
    let tilde = |u: usize| {
        if graph.is_universal(u) {
            DehnTerm::Delta(u)
        } else {
            DehnTerm::Closure(u)
        }
    };
    let meier = meier_condition(graph, infinite);
    if graph.is_complete() && meier {
        return DehnClass {
            case: DehnCase::Clique,
            terms: (0..graph.len()).map(DehnTerm::Delta).collect(),
        };
    }
    let (case, head) = if meier {
        (DehnCase::Meier, DehnTerm::Linear)
    } else {
        (DehnCase::NonMeier, DehnTerm::Quadratic)
    };
    let mut terms = vec![head];
    terms.extend((0..graph.len()).map(tilde));
    DehnClass { case, terms }
}

/// Subnegative closure at `n`: the largest `sum f(n_i)` over compositions
/// `n = n_1 + ... + n_k`. `table[k - 1]` holds `f(k)`.
pub fn subnegative_closure(table: &[u64], n: usize) -> u64 {
    assert!(n >= 1 && n <= table.len(), "table must cover 1..=n");
    let mut best = vec![0u64; n + 1];
    for m in 1..=n {
        best[m] = (1..=m)
            .map(|last| best[m - last] + table[last - 1])
            .max()
            .expect("m >= 1");
    }
    best[n]
}

/// The closed table `k -> closure(f)(k)` for `k = 1..=table.len()`.
pub fn subnegative_closure_table(table: &[u64]) -> Vec<u64> {
    (1..=table.len())
        .map(|k| subnegative_closure(table, k))
        .collect()
}
