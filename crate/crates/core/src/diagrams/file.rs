//! JSON diagram files. A file embeds its group specification and lists the
//! darts explicitly:
//!
//! ```json
//! {
//!   "group": { "vertices": [...], "edges": [...] },
//!   "darts": [
//!     {"id": 0, "opposite": 1, "next": 0, "vertex": "a", "element": "1"},
//!     {"id": 1, "opposite": 0, "next": 1, "vertex": "a", "element": "1"}
//!   ],
//!   "outer_basepoint": 0,
//!   "inner_basepoint": null
//! }
//! ```
//!
//! `next` is the following dart counterclockwise around the origin and
//! `element` uses the atom syntax of words. A boundary face is identified by
//! its basepoint dart; the inner one is present only for annular diagrams.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Dart, Diagram, DiagramError};
use crate::config::{ConfigError, GroupSpecFile};
use crate::words::{GraphProduct, Syllable};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("invalid diagram document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("dart record {id}: {reason}")]
    Record { id: usize, reason: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartRecord {
    pub id: usize,
    pub opposite: usize,
    pub next: usize,
    pub vertex: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub group: GroupSpecFile,
    pub darts: Vec<DartRecord>,
    #[serde(default)]
    pub outer_basepoint: Option<usize>,
    #[serde(default)]
    pub inner_basepoint: Option<usize>,
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram files always serialize")
    }

    pub fn of(product: &GraphProduct, diagram: &Diagram) -> Self {
        let darts = diagram
            .darts()
            .iter()
            .enumerate()
            .map(|(id, d)| DartRecord {
                id,
                opposite: d.opposite,
                next: d.next,
                vertex: product.graph().name(d.label.vertex).to_string(),
                element: product.group(d.label.vertex).format_atom(d.label.value),
            })
            .collect();
        Self {
            group: GroupSpecFile::of(product),
            darts,
            outer_basepoint: diagram.outer_basepoint(),
            inner_basepoint: diagram.inner_basepoint(),
        }
    }

    /// Builds the group and the map without checking the diagram against
    /// the relators, so that faulty diagrams can still be inspected.
    pub fn load_unchecked(&self) -> Result<(GraphProduct, Diagram), FileError> {
        let product = self.group.build()?;
        let n = self.darts.len();
        let mut slots: Vec<Option<Dart>> = vec![None; n];
        for r in &self.darts {
            let bad = |reason: String| FileError::Record { id: r.id, reason };
            if r.id >= n {
                return Err(bad(format!("id out of range for {n} darts")));
            }
            if slots[r.id].is_some() {
                return Err(bad("duplicate id".into()));
            }
            let vertex = product
                .graph()
                .vertex(&r.vertex)
                .ok_or_else(|| bad(format!("unknown vertex `{}`", r.vertex)))?;
            let value = product
                .group(vertex)
                .parse_atom(&r.element)
                .ok_or_else(|| bad(format!("unknown element `{}`", r.element)))?;
            slots[r.id] = Some(Dart { opposite: r.opposite, next: r.next, label: Syllable::new(vertex, value) });
        }
        let darts = slots.into_iter().map(|d| d.expect("ids form a permutation")).collect();
        let diagram = Diagram::from_parts(darts, self.outer_basepoint, self.inner_basepoint)?;
        Ok((product, diagram))
    }

    pub fn load(&self) -> Result<(GraphProduct, Diagram), FileError> {
        let (product, diagram) = self.load_unchecked()?;
        diagram.validate(&product)?;
        Ok((product, diagram))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{reduction_diagram, shuffle_diagram};
    use crate::instances;

    #[test]
    fn round_trip() {
        let p = instances::gamma_ex_s3();
        let w = p.parse_word("a:1 c:r b:1 c:s a:1").unwrap();
        let (d, _) = reduction_diagram(&p, &w).unwrap();
        let text = DiagramFile::of(&p, &d).to_json();
        let (q, e) = DiagramFile::from_json(&text).unwrap().load().unwrap();
        assert_eq!(q, p);
        assert_eq!(e, d);
    }

    #[test]
    fn bad_records() {
        let p = instances::gamma_ex();
        let (d, _) = shuffle_diagram(&p, &p.parse_word("a:1 c:1").unwrap(), &[0]).unwrap();
        let good = DiagramFile::of(&p, &d);

        let mut f = good.clone();
        f.darts[0].vertex = "z".into();
        assert!(matches!(f.load(), Err(FileError::Record { id: 0, .. })));

        let mut f = good.clone();
        f.darts[1].id = 0;
        assert!(matches!(f.load(), Err(FileError::Record { .. })));

        // The square now reads a commutator of the non-adjacent a and b.
        let mut f = good.clone();
        for r in f.darts.iter_mut().filter(|r| r.vertex == "c") {
            r.vertex = "b".into();
            r.element = "1".into();
        }
        assert!(f.load_unchecked().is_ok());
        assert!(matches!(f.load(), Err(FileError::Diagram(DiagramError::BadSquareRelator(_)))));

        let mut f = good;
        f.darts[2].element = "0".into();
        assert!(matches!(f.load(), Err(FileError::Diagram(_))));
    }
}
