//! Exact rational arithmetic, polynomials in `u`, and Gauss-Jordan solving.

mod linalg;
mod poly;
mod rational;

pub use linalg::{solve_exact, LinearSolution, Matrix, SolutionKind};
pub use poly::{poly_mul, Poly};
pub use rational::{ParseRationalError, Rational};
