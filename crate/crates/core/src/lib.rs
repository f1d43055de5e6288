//! Exact equivariant localization for Hamiltonian circle actions with
//! isolated fixed points.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, polynomials in `u`, Gauss-Jordan solving.
//! - [`fixedpoints`]: weights, moment values, indices, Euler products and the
//!   necessary-condition validator.
//! - [`delzant`]: smooth moment polytopes, vertex/edge enumeration, circle
//!   restriction, triangulated volume, divisor classes.
//! - [`cohomology`]: classes as restriction tuples, localization, flow-up
//!   basis and canonical classes.
//! - [`verifier`]: Betti/unimodality witness and the contradiction
//!   certificate for inconsistent 8-dimensional data.
//! - [`io`] and [`bundled`]: JSON formats and the shipped examples.

pub mod bundled;
pub mod cohomology;
pub mod delzant;
pub mod error;
pub mod exact;
pub mod fixedpoints;
pub mod io;
pub mod verifier;

pub use cohomology::{CanonicalClass, EquivariantClass, FlowUpClass, LocalizationValue};
pub use delzant::{CircleSelector, DelzantPolytope, GkmGraph, HalfSpace};
pub use error::{Error, Result};
pub use exact::{LinearSolution, Matrix, Poly, Rational};
pub use fixedpoints::{BettiVector, FixedPointDatum, FixedPointSet, ValidationReport};
pub use io::{AbstractData, Input};
