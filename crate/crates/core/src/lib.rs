//! Exact-arithmetic toolkit for (super) Cartan matrices of hyperbolic
//! type.
//!
//! The crate classifies generalized Cartan matrices of Lie algebras and
//! superalgebras, implements the desuperization/superization
//! correspondence between almost affine Lie superalgebras and hyperbolic
//! Lie algebras, enumerates all such matrices at ranks 3 through 10 up to
//! permutation equivalence, replays the bundled pairing catalogs, and
//! exposes the Lorentzian billiard-wall geometry each pair shares.
//!
//! All core computations use exact integer and rational arithmetic;
//! floating point appears only in the optional Minkowski wall embedding.
//!
//! Module map:
//!
//! - [`matrix`] — validation, normalization and structural decomposition
//! - [`classify`] — finite/affine/indefinite trichotomy, almost-affine test
//! - [`equivalence`] — canonical forms and permutation witnesses
//! - [`supermap`] — desuperization, superization search, pair verification
//! - [`enumeration`] — isomorphism-rejecting census at ranks 3–10
//! - [`geometry`] — Gram cosines, Lorentzian signature, wall embedding
//! - [`catalog`] — bundled pairing tables, verifier and statistics

pub mod catalog;
pub mod classify;
pub mod enumeration;
pub mod equivalence;
pub mod error;
pub mod geometry;
mod linalg;
pub mod matrix;
pub mod supermap;

pub use catalog::{CatalogEntry, CatalogStats, EntryReport, Section};
pub use classify::{Kind, TypeVerdict, VerdictKind};
pub use enumeration::{CensusReport, EnumerationOptions, SymFilter};
pub use equivalence::Permutation;
pub use error::{Error, Result};
pub use geometry::{GramData, WallEmbedding};
pub use matrix::{CartanMatrix, MatrixJson, Parity, Symmetrizer};
pub use supermap::SuperizationReport;
