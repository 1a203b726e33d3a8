//! Exact computations on hereditary classes of finite ordered relational
//! structures.
//!
//! A structure is a finite set `0..n`, ordered by position, carrying `d`
//! reflexive binary relations, each either a linear order or an arbitrary
//! reflexive relation. Permutations are bichains: the position order plus
//! a second linear order. The crate covers embedding tests, substitution
//! decomposition, level-by-level enumeration of hereditary classes and of
//! sum-closures, and the truncated power series used to check their
//! generating functions.
//!
//! ```
//! use hereditary::{OrderedStructure, Permutation};
//!
//! let host: Permutation = "391867452".parse().unwrap();
//! let pattern: Permutation = "51342".parse().unwrap();
//! assert!(host.contains(&pattern));
//! assert!(pattern.to_bichain().embeds_into(&host.to_bichain()).unwrap());
//! # let _ = OrderedStructure::singleton(hereditary::Signature::bichain());
//! ```

pub mod catalog;
pub mod classes;
pub mod decomposition;
pub mod error;
pub mod labeled;
pub mod permutation;
pub mod series;
pub mod structure;

pub use classes::{EnumConfig, GeneratorFamily, GeneratorSpec, LevelSets, Provenance, SumType};
pub use decomposition::{decompose, DecompositionTree, QuotientKind};
pub use error::{Error, Result};
pub use labeled::{FinitePoset, LabeledStructure};
pub use permutation::{Permutation, Symmetry};
pub use series::{BivariatePolynomial, SeriesOp, TruncatedSeries};
pub use structure::{OrderedStructure, RelationKind, Signature};
