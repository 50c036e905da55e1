//! Finite-difference WENO solver for hyperbolic conservation laws with
//! adaptive-order reconstructions.
//!
//! The crate is organized bottom-up:
//!
//! * [`reconstruction`]: stateless five-point kernels for the original
//!   adaptive-order (AO) and the convex (AOA) combination.
//! * [`flux`]: flux models, global Lax–Friedrichs splitting and the
//!   characteristic decomposition of the Euler equations.
//! * [`solver`]: grids with ghost layers, boundary conditions, the
//!   conservative right-hand side and TVD Runge–Kutta stepping.
//! * [`cases`]: the named experiments, exact solutions and error norms.
//!
//! ```
//! use adaptive_weno::reconstruction::{reconstruct_interface, ReconConfig, ReconWindow};
//!
//! let window = ReconWindow::new([-2.0, -1.0, 0.0, 1.0, 2.0]);
//! let value = reconstruct_interface(&window, &ReconConfig::default());
//! assert!((value - 0.5).abs() < 1e-15);
//! ```

pub mod cases;
pub mod flux;
pub mod reconstruction;
pub mod solver;

pub use cases::{make_case, CaseOverrides, CaseSpec};
pub use flux::{Axis, ConservedState, FluxModel};
pub use reconstruction::{ReconConfig, Variant};
pub use solver::{run_to_time, FieldArray, Grid, RunOptions, SolverError};
