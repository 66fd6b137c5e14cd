//! Implicit-explicit local differential transform (IELDTM) time integration
//! for Chebyshev-collocated viscous Burgers equations in one and two space
//! dimensions.
//!
//! The crate is layered bottom-up:
//!
//! * [`cheb`] builds Chebyshev–Gauss–Lobatto grids, differentiation matrices
//!   and interpolants.
//! * [`burgers`] assembles the method-of-lines system and its differential
//!   transform recurrence.
//! * [`integrator`] solves the continuity equation between consecutive local
//!   Taylor expansions, with fixed or adaptive step sizes.
//! * [`oracle`] provides exact solutions of the two benchmark problems.
//! * [`harness`] runs experiments and writes CSV/JSON reports.

pub mod burgers;
pub mod cheb;
mod error;
pub mod harness;
pub mod integrator;
pub mod oracle;

pub use burgers::{BoundaryProvider, InteriorField, SemiDiscreteSystem, Side, TaylorCoeffs};
pub use cheb::{CollocationGrid, DiffMatrices};
pub use error::{Error, Result};
pub use integrator::{IntegratorConfig, RunReport, StepControl, StepRecord};
