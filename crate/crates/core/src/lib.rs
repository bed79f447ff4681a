//! Degree-k oriented matroids: the sign structure of planar point sets with
//! respect to graphs of degree-k polynomials.
//!
//! - [`chirotope`]: sign maps on `(k+2)`-tuples, canonical form, reorientation, cocircuits.
//! - [`pointgeom`]: exact point configurations and their chirotopes.
//! - [`axioms`]: chirotope and cocircuit axioms, unimodality, acyclicity, extreme points.
//! - [`enumeration`]: exhaustive backtracking over all uniform degree-k chirotopes.
//! - [`catalog`] and [`realizability`]: persisted catalogs and random realizability search.

pub mod axioms;
pub mod catalog;
pub mod chirotope;
pub mod enumeration;
pub mod error;
pub mod pointgeom;
pub mod realizability;
pub mod sign;
pub mod tuple;

pub use chirotope::{Chirotope, SignArray, SignVector};
pub use error::{Error, Result};
pub use pointgeom::{Point, PointConfig, Rational};
pub use sign::Sign;
