//! Exact frequencies of closed curves on surfaces.
//!
//! This crate computes the frequency constants governing how often very long
//! closed curves of a given topological type appear on a surface, using
//! exact rational arithmetic throughout: psi-class intersection numbers,
//! Kontsevich volume polynomials, arc-system charts with boundary
//! identifications, polytope integration, integral ribbon-graph counts, and
//! the generating-function machinery that extracts large-genus asymptotic
//! orders.
//!
//! The narrative guide lives in `book/`; its code snippets are compiled as
//! doc-tests of this crate.

pub mod arcs;
pub mod asym;
pub mod cli;
pub mod comb;
pub mod error;
pub mod frequency;
pub mod integrate;
pub mod lattice;
pub mod poly;
pub mod rational;
pub mod report;
pub mod scenario_io;
pub mod series;
pub mod tau;
pub mod volume;

pub use error::{Error, Result};
pub use poly::{MultiPoly, UniPoly};
pub use rational::Rational;
pub use series::PowerSeries;
pub use tau::TauEngine;
