//! Vertex groups: finite cyclic groups, the integers, and finite groups given
//! by a multiplication table.
//!
//! Elements are carried as `i64` payloads. Cyclic payloads live in
//! `0..order`, integer payloads are the integers themselves and table
//! payloads are element indices with the identity at index 0. In every kind
//! the identity is `0` and the natural order on payloads is the element
//! serialization order.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("vertex groups must be non-trivial")]
    TrivialGroup,
    #[error("declared generators do not generate the group")]
    GeneratorsDoNotGenerate,
    #[error("element {0} does not belong to this group")]
    ForeignElement(i64),
    #[error("operation not supported for this group kind")]
    UnsupportedKind,
}

/// Largest magnitude accepted for an element of the integers kind. Products
/// of words built from such atoms stay far from `i64` overflow.
pub const INTEGER_ATOM_LIMIT: i64 = 1 << 31;

#[derive(Debug, Clone)]
pub enum VertexGroup {
    Cyclic { order: i64 },
    Integers,
    Table(Box<TableGroup>),
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct TableGroup {
    names: Vec<String>,
    index: HashMap<String, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    lengths: Vec<u64>,
    /// Elements sorted by (length, index).
    shell_order: Vec<usize>,
    /// `min_conjugator[g][h]`: length of a shortest `k` with `k g k^-1 = h`.
    min_conjugator: OnceLock<Vec<Vec<Option<u64>>>>,
}

impl PartialEq for TableGroup {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.mul == other.mul && self.generators == other.generators
    }
}

impl Eq for TableGroup {}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == ':')
}

impl TableGroup {
    pub fn new(
        names: Vec<String>,
        mul: Vec<Vec<usize>>,
        generators: &[String],
    ) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty element list".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(GroupError::NotAGroup(format!("bad element name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(GroupError::NotAGroup(format!("duplicate element `{name}`")));
            }
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotAGroup(format!("table must be {n}x{n}")));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::NotAGroup("table entry out of range".into()));
        }
        for i in 0..n {
            if mul[0][i] != i || mul[i][0] != i {
                return Err(GroupError::NotAGroup("index 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(GroupError::NotAGroup(format!("`{}` has no inverse", names[a])))
                }
            }
        }
        if n == 1 {
            return Err(GroupError::TrivialGroup);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let i = *index
                .get(g)
                .ok_or_else(|| GroupError::NotAGroup(format!("unknown generator `{g}`")))?;
            if !gens.contains(&i) {
                gens.push(i);
            }
        }
        let lengths = cayley_lengths(&mul, &inv, &gens);
        if lengths.iter().any(|&l| l == u64::MAX) {
            return Err(GroupError::GeneratorsDoNotGenerate);
        }
        let mut shell_order: Vec<usize> = (0..n).collect();
        shell_order.sort_by_key(|&i| (lengths[i], i));
        Ok(Self {
            names,
            index,
            mul,
            inv,
            generators: gens,
            lengths,
            shell_order,
            min_conjugator: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|&g| self.names[g].clone()).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn conjugator_table(&self) -> &Vec<Vec<Option<u64>>> {
        self.min_conjugator.get_or_init(|| {
            let n = self.order();
            let mut out = vec![vec![None; n]; n];
            for (g, row) in out.iter_mut().enumerate() {
                for &k in &self.shell_order {
                    let h = self.mul[self.mul[k][g]][self.inv[k]];
                    if row[h].is_none() {
                        row[h] = Some(self.lengths[k]);
                    }
                }
            }
            out
        })
    }

    fn witness(&self, g: usize, h: usize) -> Option<usize> {
        self.shell_order
            .iter()
            .copied()
            .find(|&k| self.mul[self.mul[k][g]][self.inv[k]] == h)
    }

    fn clf(&self, n: u64) -> u64 {
        let table = self.conjugator_table();
        let mut best = 0;
        for g in 0..self.order() {
            for h in 0..self.order() {
                if self.lengths[g] + self.lengths[h] <= n {
                    if let Some(len) = table[g][h] {
                        best = best.max(len);
                    }
                }
            }
        }
        best
    }
}

/// Word lengths from the identity in the Cayley graph with respect to the
/// generators and their inverses. Unreachable elements get `u64::MAX`.
fn cayley_lengths(mul: &[Vec<usize>], inv: &[usize], gens: &[usize]) -> Vec<u64> {
    let mut symmetric: Vec<usize> = gens.iter().flat_map(|&g| [g, inv[g]]).collect();
    symmetric.sort_unstable();
    symmetric.dedup();
    let mut dist = vec![u64::MAX; mul.len()];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in &symmetric {
            let y = mul[x][s];
            if dist[y] == u64::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

impl PartialEq for VertexGroup {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (VertexGroup::Cyclic { order: a }, VertexGroup::Cyclic { order: b }) => a == b,
            (VertexGroup::Integers, VertexGroup::Integers) => true,
            (VertexGroup::Table(a), VertexGroup::Table(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for VertexGroup {}

impl VertexGroup {
    pub fn cyclic(order: i64) -> Result<Self, GroupError> {
        match order {
            1 => Err(GroupError::TrivialGroup),
            o if o < 1 => Err(GroupError::NotAGroup(format!("cyclic order {o}"))),
            o => Ok(VertexGroup::Cyclic { order: o }),
        }
    }

    pub fn integers() -> Self {
        VertexGroup::Integers
    }

    pub fn table(
        names: Vec<String>,
        mul: Vec<Vec<usize>>,
        generators: &[String],
    ) -> Result<Self, GroupError> {
        TableGroup::new(names, mul, generators).map(|t| VertexGroup::Table(Box::new(t)))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            VertexGroup::Cyclic { .. } => "cyclic",
            VertexGroup::Integers => "integers",
            VertexGroup::Table(_) => "table",
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, VertexGroup::Integers)
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            VertexGroup::Table(t) => (0..t.order())
                .all(|a| (0..t.order()).all(|b| t.mul[a][b] == t.mul[b][a])),
            _ => true,
        }
    }

    /// Number of elements, `None` for the integers.
    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroup::Cyclic { order } => Some(*order as usize),
            VertexGroup::Integers => None,
            VertexGroup::Table(t) => Some(t.order()),
        }
    }

    pub const IDENTITY: i64 = 0;

    pub fn contains(&self, g: i64) -> bool {
        match self {
            VertexGroup::Cyclic { order } => (0..*order).contains(&g),
            VertexGroup::Integers => true,
            VertexGroup::Table(t) => g >= 0 && (g as usize) < t.order(),
        }
    }

    fn check(&self, g: i64) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement(g))
        }
    }

    /// All elements in serialization order. Panics for the integers.
    pub fn elements(&self) -> Vec<i64> {
        let n = self.order().expect("finite group");
        (0..n as i64).collect()
    }

    /// The declared generating set (without inverses).
    pub fn generators(&self) -> Vec<i64> {
        match self {
            VertexGroup::Cyclic { .. } | VertexGroup::Integers => vec![1],
            VertexGroup::Table(t) => t.generators.iter().map(|&g| g as i64).collect(),
        }
    }

    /// Generators together with their inverses, deduplicated and sorted.
    pub fn symmetric_generators(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .generators()
            .into_iter()
            .flat_map(|g| [g, self.inv(g)])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn mul(&self, g: i64, h: i64) -> i64 {
        debug_assert!(self.contains(g) && self.contains(h));
        match self {
            VertexGroup::Cyclic { order } => (g + h) % order,
            VertexGroup::Integers => g.checked_add(h).expect("integer vertex group overflow"),
            VertexGroup::Table(t) => t.mul[g as usize][h as usize] as i64,
        }
    }

    pub(crate) fn inv(&self, g: i64) -> i64 {
        debug_assert!(self.contains(g));
        match self {
            VertexGroup::Cyclic { order } => (order - g) % order,
            VertexGroup::Integers => -g,
            VertexGroup::Table(t) => t.inv[g as usize] as i64,
        }
    }

    pub(crate) fn len(&self, g: i64) -> u64 {
        debug_assert!(self.contains(g));
        match self {
            VertexGroup::Cyclic { order } => g.min(order - g) as u64,
            VertexGroup::Integers => g.unsigned_abs(),
            VertexGroup::Table(t) => t.lengths[g as usize],
        }
    }

    pub fn compose(&self, g: i64, h: i64) -> Result<i64, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn invert(&self, g: i64) -> Result<i64, GroupError> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    /// Geodesic distance from the identity in the Cayley graph of the
    /// declared generators and their inverses.
    pub fn element_length(&self, g: i64) -> Result<u64, GroupError> {
        self.check(g)?;
        Ok(self.len(g))
    }

    /// A shortest `k` with `k g k^-1 = h`, ties broken by serialization
    /// order; `None` when `g` and `h` are not conjugate.
    pub fn conjugacy_witness_local(&self, g: i64, h: i64) -> Result<Option<i64>, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match self {
            VertexGroup::Cyclic { .. } | VertexGroup::Integers => (g == h).then_some(0),
            VertexGroup::Table(t) => t.witness(g as usize, h as usize).map(|k| k as i64),
        })
    }

    /// The conjugacy length function of this group at `n`.
    pub fn local_clf(&self, n: u64) -> Result<u64, GroupError> {
        Ok(match self {
            VertexGroup::Cyclic { .. } | VertexGroup::Integers => 0,
            VertexGroup::Table(t) => t.clf(n),
        })
    }

    /// Parses a word-grammar atom: a signed decimal for cyclic and integer
    /// kinds, an element name for tables.
    pub fn parse_atom(&self, atom: &str) -> Option<i64> {
        match self {
            VertexGroup::Cyclic { order } => parse_decimal(atom).map(|v| v.rem_euclid(*order)),
            VertexGroup::Integers => {
                parse_decimal(atom).filter(|v| v.abs() <= INTEGER_ATOM_LIMIT)
            }
            VertexGroup::Table(t) => t.lookup(atom).map(|i| i as i64),
        }
    }

    pub fn format_atom(&self, g: i64) -> String {
        match self {
            VertexGroup::Table(t) => t.name(g as usize).to_string(),
            _ => g.to_string(),
        }
    }
}

fn parse_decimal(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || digits.len() > 18 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn f20() -> VertexGroup {
        instances::frobenius20()
    }

    fn el(g: &VertexGroup, name: &str) -> i64 {
        g.parse_atom(name).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(VertexGroup::cyclic(1), Err(GroupError::TrivialGroup));
        assert!(VertexGroup::cyclic(3).is_ok());
        assert!(matches!(VertexGroup::cyclic(0), Err(GroupError::NotAGroup(_))));
        let g = f20();
        assert_eq!(g.order(), Some(20));
        assert!(!g.is_abelian());

        let names = vec!["e".to_string(), "x".to_string()];
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            VertexGroup::table(names.clone(), bad, &["x".into()]),
            Err(GroupError::NotAGroup(_))
        ));
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            VertexGroup::table(names.clone(), z2.clone(), &[]),
            Err(GroupError::GeneratorsDoNotGenerate)
        );
        assert!(VertexGroup::table(names, z2, &["x".into()]).is_ok());
        assert_eq!(
            VertexGroup::table(vec!["e".into()], vec![vec![0]], &[]),
            Err(GroupError::TrivialGroup)
        );
    }

    #[test]
    fn arithmetic() {
        let c3 = VertexGroup::cyclic(3).unwrap();
        assert_eq!(c3.compose(2, 2), Ok(1));
        assert_eq!(c3.invert(1), Ok(2));
        assert_eq!(c3.compose(3, 1), Err(GroupError::ForeignElement(3)));
        let z = VertexGroup::integers();
        assert_eq!(z.compose(5, -5), Ok(0));
        assert_eq!(z.invert(7), Ok(-7));
        let g = f20();
        assert_eq!(g.compose(el(&g, "r"), el(&g, "r4")), Ok(0));
        assert_eq!(g.invert(el(&g, "s")), Ok(el(&g, "s3")));
    }

    #[test]
    fn lengths() {
        let c5 = VertexGroup::cyclic(5).unwrap();
        assert_eq!(c5.element_length(3), Ok(2));
        assert_eq!(VertexGroup::integers().element_length(-4), Ok(4));
        for g in [c5, VertexGroup::integers(), f20()] {
            assert_eq!(g.element_length(0), Ok(0));
        }
    }

    #[test]
    fn local_conjugacy() {
        let c6 = VertexGroup::cyclic(6).unwrap();
        assert_eq!(c6.conjugacy_witness_local(2, 2), Ok(Some(0)));
        assert_eq!(c6.conjugacy_witness_local(2, 4), Ok(None));
        let g = f20();
        let (r2, r3) = (el(&g, "r2"), el(&g, "r3"));
        let k = g.conjugacy_witness_local(r2, r3).unwrap().expect("conjugate");
        let conj = g.mul(g.mul(k, r2), g.inv(k));
        assert_eq!(conj, r3);
        // Only r^i s^2 conjugates r^2 to r^3; the shortest is s^2.
        assert_eq!(g.format_atom(k), "s2");
        assert_eq!(g.element_length(k), Ok(2));
        assert_eq!(g.conjugacy_witness_local(el(&g, "r"), el(&g, "s")), Ok(None));
    }

    #[test]
    fn local_clf_values() {
        assert_eq!(VertexGroup::cyclic(7).unwrap().local_clf(10), Ok(0));
        assert_eq!(VertexGroup::integers().local_clf(10), Ok(0));
        let g = f20();
        assert_eq!(g.local_clf(0), Ok(0));
        assert_eq!(g.local_clf(1), Ok(0));
    }

    #[test]
    fn atoms() {
        let c3 = VertexGroup::cyclic(3).unwrap();
        assert_eq!(c3.parse_atom("-1"), Some(2));
        assert_eq!(c3.parse_atom("+4"), Some(1));
        assert_eq!(c3.parse_atom("x"), None);
        assert_eq!(c3.parse_atom(""), None);
        assert_eq!(c3.parse_atom("-"), None);
        let z = VertexGroup::integers();
        assert_eq!(z.parse_atom("-12"), Some(-12));
        assert_eq!(z.parse_atom("99999999999"), None);
        assert_eq!(f20().parse_atom("r2s3").map(|i| f20().format_atom(i)), Some("r2s3".into()));
    }
}
