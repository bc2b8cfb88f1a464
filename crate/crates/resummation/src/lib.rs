//! Resummation of divergent weak-coupling perturbation series whose
//! large-order behavior is known, combining a variational reexpansion around
//! a trial frequency with a dispersion-integral treatment of the tip of the
//! left-hand cut.  The engine is instantiated and validated on the
//! ground-state energy of the quartic anharmonic oscillator.
//!
//! Pipeline, module by module:
//!
//! * [`series`] generates the exact weak-coupling coefficients and encodes
//!   their factorial large-order growth.
//! * [`variational`] reexpands the series around a trial frequency, locates
//!   the optimal (possibly complex) frequency among the stationary and
//!   turning points, and evaluates the resummed energy.
//! * [`dispersion`] models the semiclassical discontinuity across the cut,
//!   subtracts the near-origin cut segment from the coefficients through its
//!   moment integrals, iterates the subtraction cutoff to self-consistency,
//!   and restores the segment as an explicit integral.
//! * [`oracle`] provides reference energies by basis diagonalization.
//! * [`cli`] emits coefficient tables, sweeps, iteration reports, and the
//!   curve datasets as CSV/JSON.
//! * [`check`] runs the full self-validation suite.

pub mod check;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod oracle;
pub mod polyroots;
pub mod quadrature;
pub mod series;
pub mod variational;

pub use error::{ResumError, Result};
