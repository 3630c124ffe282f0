//! Desk-scale knot invariant computation and the geography of invariant pairs.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`notation`] parses knot expressions (`C(2,3)`, `P(3,-2,3)`, `T(2,5)`,
//!   braid closures, named table knots, mirrors, connected sums, doubles)
//!   and builds their standard diagrams.
//! * [`diagram`] is the oriented planar diagram model (PD code plus derived
//!   signed Gauss code) every invariant computation runs on.
//! * [`seifert`] runs Seifert's algorithm: circles, Seifert graph, canonical
//!   genus, Seifert matrix, signature, Conway polynomial.
//! * [`skein`] computes HOMFLY-PT polynomials by skein recursion at desk
//!   scale, with the Morton and Morton-Franks-Williams bounds.
//! * [`rational`] is the continued-fraction calculus for 2-bridge knots.
//! * [`delta`] carries the delta-move bookkeeping and the quadratic
//!   delta-unknotting bound.
//! * [`geography`] exposes the relation sets of invariant pairs, their
//!   witness generators and the verification machinery.
//! * [`facts`] is the curated table of literature-backed invariant values.

pub mod delta;
pub mod diagram;
pub mod facts;
pub mod geography;
pub mod notation;
pub mod rational;
pub mod seifert;
pub mod skein;

pub use diagram::Diagram;
pub use notation::KnotExpr;
pub use rational::Fraction;
