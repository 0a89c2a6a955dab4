//! Exact symbolic machinery for deciding point linearizability of ODEs.
//!
//! The crate is organized around a small exact-arithmetic kernel
//! ([`expr`], [`poly`], [`canonical`]) on top of which the decision
//! procedures are built:
//!
//! * [`jetode`] — the ODE data model `y⁽ⁿ⁾ + M/N = 0` and its parser,
//! * [`lie2`] — the closed-form criterion for second-order equations,
//! * [`candidate`] — the pullback of a linear equation in Laguerre form
//!   under a generic point transformation and the resulting determining
//!   systems,
//! * [`diffdec`] — a bounded Thomas-style decomposition of
//!   polynomially-nonlinear PDE systems into simple systems,
//! * [`symmetry`] — point-symmetry determining equations and the
//!   dimension prefilter,
//! * [`heuristics`] — a best-effort explicit solver for simple systems.
//!
//! All coefficient arithmetic is over arbitrary-precision rationals;
//! there is no floating point anywhere in a verdict path.

pub mod budget;
pub mod candidate;
pub mod canonical;
pub mod corpus;
pub mod diffdec;
pub mod error;
pub mod expr;
pub mod heuristics;
pub mod jetode;
pub mod lie2;
pub mod poly;
pub mod scalar;
pub mod symbol;
pub mod symmetry;

pub use budget::Budget;
pub use canonical::CanonicalRat;
pub use error::Error;
pub use expr::Expr;
pub use poly::{MPoly, Monomial};
pub use scalar::Scalar;
pub use symbol::{FuncName, Symbol};
