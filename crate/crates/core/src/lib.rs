//! Compact manifolds with boundary encoded as edge-colored graphs.
//!
//! An `(n+1)`-colored graph is a connected regular graph whose edges carry
//! one of `n+1` colors, each vertex meeting every color exactly once. Such a
//! graph determines an `n`-dimensional quasi-manifold `ĥM` by iterated coning
//! over its residues, and a compact manifold `M` obtained by cutting out a
//! neighborhood of the singular cone points. This crate computes the
//! combinatorial and topological invariants of both, implements the dipole
//! and suspension moves, and enumerates small censuses.
//!
//! ```
//! use gemkit::{fixtures, singularity::Analysis};
//!
//! let g = fixtures::f_tb();
//! let analysis = Analysis::new(&g);
//! let summary = analysis.singular_summary().unwrap();
//! assert_eq!(summary.dimension, Some(1));
//! assert_eq!(summary.euler, 0);
//! ```

pub mod canonical;
pub mod census;
pub mod dot;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod moves;
pub mod residues;
pub mod singularity;

pub use canonical::{canonical_form, canonical_graph, is_isomorphic, CanonicalCode, Equivalence};
pub use format::{parse_code, parse_gem, to_code, to_gem, ParseError};
pub use graph::{Bipartition, Color, ColorSet, ColoredGraph, GraphError, Vertex};
pub use residues::{residue_count, residues, is_supercontracted, ResidueLattice, ResidueView};
pub use singularity::{Analysis, TriBool};
