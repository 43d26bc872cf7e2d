//! Exact computations with Z-graded semisimple Lie algebras and the Lax
//! operator algebras they define on the projective line with marked points.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rational scalars, matrices, polynomials, rational functions
//!   and partial fractions;
//! * [`rootsys`]: root systems of types A, B, C, D and G2;
//! * [`liealg`]: matrix models with brackets, invariant forms and root spaces;
//! * [`grading`]: Z-gradings defined by a nonnegative integer vector on the
//!   simple roots;
//! * [`surface`]: marked points, degree schedules, divisors and Riemann-Roch
//!   spaces on the projective line;
//! * [`current`]: the current algebra itself, its degree subspaces and the
//!   almost-graded checks;
//! * [`cocycle`]: the connection form, the cocycle and its verification;
//! * [`tyurin`]: explicit parametric matrix families for the classical
//!   gradings and their comparison with computed grading subspaces;
//! * [`reference`]: the four small configurations used as fixtures.

pub mod cocycle;
pub mod current;
pub mod exactnum;
pub mod grading;
pub mod liealg;
pub mod reference;
pub mod rootsys;
pub mod surface;
pub mod tyurin;

mod error;

pub use error::{Error, Result};
pub use exactnum::Scalar;

/// Statements that only concern curves of positive genus and are outside
/// what computations on the projective line can check.
pub const NOT_REPRODUCED: &[&str] = &[
    "positive genus: the upper spread g of the almost-graded structure",
    "positive genus: Riemann-Roch counts for points in generic position",
    "uniqueness of the almost-graded central extension (cited, not proved)",
];
