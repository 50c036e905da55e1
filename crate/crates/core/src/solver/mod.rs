//! Structured-grid state, boundaries, the semi-discrete operator and time
//! stepping.

mod boundary;
mod grid;
mod rhs;
mod run;
mod time;

pub use boundary::{apply_boundaries, BoundaryCondition, BoundarySpec, ShockTrace};
pub use grid::{FieldArray, Grid, GHOST};
pub use rhs::{interior_alpha, numerical_flux_line, rhs, LineError, SpatialOperator};
pub use run::{run_to_time, RunOptions, RunOutcome, Snapshot};
pub use time::{max_wave_speed, rk3_step, stable_dt, DtRule, RunState};

use thiserror::Error;

use crate::flux::{Axis, FluxError};
use crate::reconstruction::ReconError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("flux evaluation failed at cell ({i}, {j}) along {axis:?}: {source}")]
    Flux {
        axis: Axis,
        i: isize,
        j: isize,
        #[source]
        source: FluxError,
    },
    #[error("blow-up in `{case}` at step {step}, t = {t}: {detail}")]
    BlowUp {
        case: String,
        step: usize,
        t: f64,
        detail: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Recon(#[from] ReconError),
}
