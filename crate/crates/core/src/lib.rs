//! Exact computer algebra for matrix factorisations of hypersurface
//! singularities, their module blowups, and simple flops.

pub mod blowup;
pub mod catalogue;
pub mod error;
pub mod flop;
pub mod format;
pub mod graph;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod matrix;
pub mod mf;
pub mod points;
pub mod poly;

pub use blowup::{AdeLabel, HypersurfaceSingularity};
pub use catalogue::{Catalogue, CatalogueEntry};
pub use error::{Error, Result};
pub use graph::{fundamental_cycle, katz_morrison, ChernVector, Cycle, DualGraph};
pub use groebner::GroebnerBasis;
pub use ideal::{ideal_equal, Ideal};
pub use matrix::{minors, PolyMatrix};
pub use poly::{rat, Monomial, MonomialOrder, ParseError, Poly, Rational, Ring};
pub use mf::{knorrer_lift, verify_mf, KnorrerDatum, MatrixFactorisation};
