//! JSON group specification files.
//!
//! ```json
//! {
//!   "vertices": [
//!     {"name": "a", "group": {"kind": "cyclic", "order": 2}},
//!     {"name": "e", "group": {"kind": "integers"}},
//!     {"name": "c", "group": {"kind": "table",
//!                             "elements": ["e", "x"],
//!                             "table": [[0, 1], [1, 0]],
//!                             "generators": ["x"]}}
//!   ],
//!   "edges": [["a", "c"]],
//!   "limits": {"bfs-states": 100000, "oracle-cap": 6}
//! }
//! ```
//!
//! Vertex declaration order is the global vertex order. Table entries are
//! element indices and element 0 must be the identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, SimplicialGraph};
use crate::vertex_group::{GroupError, VertexGroup};
use crate::words::GraphProduct;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid spec document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex `{vertex}`: {source}")]
    Group { vertex: String, source: GroupError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: i64 },
    Integers,
    Table { elements: Vec<String>, table: Vec<Vec<usize>>, generators: Vec<String> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<VertexGroup, GroupError> {
        match self {
            GroupSpec::Cyclic { order } => VertexGroup::cyclic(*order),
            GroupSpec::Integers => Ok(VertexGroup::integers()),
            GroupSpec::Table { elements, table, generators } => {
                VertexGroup::table(elements.clone(), table.clone(), generators)
            }
        }
    }

    pub fn of(group: &VertexGroup) -> Self {
        match group {
            VertexGroup::Cyclic { order } => GroupSpec::Cyclic { order: *order },
            VertexGroup::Integers => GroupSpec::Integers,
            VertexGroup::Table(t) => GroupSpec::Table {
                elements: t.names().to_vec(),
                table: t.table().to_vec(),
                generators: t.generator_names(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub name: String,
    pub group: GroupSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Limits {
    /// States visited by the shuffle-class search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bfs_states: Option<usize>,
    /// Largest `n` accepted by the empirical conjugacy-length scan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_cap: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub limits: Limits,
}

fn is_default(l: &Limits) -> bool {
    *l == Limits::default()
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    pub fn build(&self) -> Result<GraphProduct, ConfigError> {
        let names: Vec<&str> = self.vertices.iter().map(|v| v.name.as_str()).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
        let graph = SimplicialGraph::new(&names, &edges)?;
        let groups = self
            .vertices
            .iter()
            .map(|v| v.group.build().map_err(|source| ConfigError::Group { vertex: v.name.clone(), source }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GraphProduct::new(graph, groups).expect("one group per declared vertex"))
    }

    pub fn of(product: &GraphProduct) -> Self {
        let graph = product.graph();
        let vertices = (0..graph.len())
            .map(|v| VertexSpec { name: graph.name(v).to_string(), group: GroupSpec::of(product.group(v)) })
            .collect();
        let edges = graph
            .edges()
            .into_iter()
            .map(|(u, v)| (graph.name(u).to_string(), graph.name(v).to_string()))
            .collect();
        Self { vertices, edges, limits: Limits::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn documented_example_parses() {
        let text = r#"{
          "vertices": [
            {"name": "a", "group": {"kind": "cyclic", "order": 2}},
            {"name": "e", "group": {"kind": "integers"}},
            {"name": "c", "group": {"kind": "table", "elements": ["e", "x"],
                                    "table": [[0, 1], [1, 0]], "generators": ["x"]}}
          ],
          "edges": [["a", "c"]],
          "limits": {"bfs-states": 100000, "oracle-cap": 6}
        }"#;
        let spec = GroupSpecFile::from_json(text).unwrap();
        assert_eq!(spec.limits.bfs_states, Some(100000));
        assert_eq!(spec.limits.oracle_cap, Some(6));
        let p = spec.build().unwrap();
        assert!(p.graph().adjacent(0, 2) && !p.graph().adjacent(0, 1));
        assert!(!p.group(1).is_finite());
        assert_eq!(p.group(2).order(), Some(2));
    }

    #[test]
    fn round_trip_through_products() {
        for p in [instances::gamma_ex(), instances::frobenius_path(), instances::gamma_ex_s3()] {
            let spec = GroupSpecFile::of(&p);
            let again = GroupSpecFile::from_json(&spec.to_json()).unwrap();
            assert_eq!(again, spec);
            assert_eq!(again.build().unwrap(), p);
        }
    }

    #[test]
    fn errors() {
        let bad_kind = r#"{"vertices": [{"name": "a", "group": {"kind": "free"}}]}"#;
        assert!(matches!(GroupSpecFile::from_json(bad_kind), Err(ConfigError::Json(_))));
        let trivial = r#"{"vertices": [{"name": "a", "group": {"kind": "cyclic", "order": 1}}]}"#;
        let err = GroupSpecFile::from_json(trivial).unwrap().build().unwrap_err();
        assert!(matches!(err, ConfigError::Group { source: GroupError::TrivialGroup, .. }));
        let dangling = r#"{"vertices": [{"name": "a", "group": {"kind": "integers"}}], "edges": [["a", "b"]]}"#;
        let err = GroupSpecFile::from_json(dangling).unwrap().build().unwrap_err();
        assert!(matches!(err, ConfigError::Graph(GraphError::UnknownEndpoint(_))));
        let colon = r#"{"vertices": [{"name": "a:b", "group": {"kind": "integers"}}]}"#;
        let err = GroupSpecFile::from_json(colon).unwrap().build().unwrap_err();
        assert!(matches!(err, ConfigError::Graph(GraphError::BadName(_))));
    }
}
