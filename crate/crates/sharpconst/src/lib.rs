//! Sharp constants of dilation-invariant integral inequalities.
//!
//! The library has three layers:
//!
//! * closed-form constants from Gamma-function formulas ([`specfun`]),
//!   ball capacities and isocapacitary checks ([`capacity`]);
//! * variational constants computed as smallest eigenvalues of weighted
//!   Sturm-Liouville problems on an interval ([`sl_eigen`]);
//! * a verification layer that evaluates every inequality on analytic
//!   test-function families ([`fields`]) with adaptive quadrature
//!   ([`quad`]) and reports left/right sides, ratios and verdicts
//!   ([`verifier`]).

pub mod capacity;
pub mod fields;
pub mod quad;
pub mod sl_eigen;
pub mod specfun;
pub mod verifier;

pub use specfun::HSParams;
