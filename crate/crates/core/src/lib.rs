//! Algorithms for graph products of groups.
//!
//! A graph product is built from a simplicial graph with a group at every
//! vertex; groups on adjacent vertices commute. This crate decides the word
//! and conjugacy problems with explicit certificates, bounds conjugator
//! lengths, classifies Dehn functions symbolically and manipulates van Kampen
//! diagrams over the standard presentation. Every decision procedure has a
//! brute-force counterpart in [`oracle`] used for cross-checking.

pub mod config;
pub mod conjugacy;
pub mod diagrams;
pub mod exec;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod vertex_group;
pub mod words;

pub use config::{ConfigError, GroupSpecFile};
pub use conjugacy::{ConjugacyError, ConjugacyWitness, CyclicReduction, FloatingDecomposition};
pub use diagrams::{Diagram, DiagramError, Move, MoveKind};
pub use exec::Execution;
pub use oracle::{Oracle, OracleError};
pub use graph::{DehnCase, DehnClass, DehnTerm, GraphError, SimplicialGraph};
pub use vertex_group::{GroupError, VertexGroup};
pub use words::{GraphProduct, NormalForm, Syllable, Word, WordError};
