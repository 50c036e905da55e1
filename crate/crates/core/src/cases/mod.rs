//! Experiment definitions: initial and boundary data, exact solutions and
//! error measurement.

pub mod dmr;
mod norms;
pub mod profiles;

pub use norms::{
    convergence_table, convergence_table_with, error_norms, observed_order, scan_extrema_and_tv,
    ErrorReport, Extrema,
};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::flux::{ConservedState, FluxModel};
use crate::solver::{BoundarySpec, DtRule, Grid, SolverError};

use self::dmr::DmrSetup;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CaseError {
    #[error("unknown case `{0}` (expected one of: {known})", known = CASE_NAMES.join(", "))]
    UnknownCase(String),
    #[error("case `{0}` has no exact solution")]
    NoExactSolution(String),
    #[error("invalid override for `{case}`: {reason}")]
    Override { case: String, reason: String },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

pub const CASE_NAMES: [&str; 4] = ["sine_advection", "jiang_shu_composite", "dmr", "sod"];

pub type InitialFn = Arc<dyn Fn(f64, f64) -> ConservedState + Send + Sync>;
pub type ExactFn = Arc<dyn Fn(f64, f64, f64) -> ConservedState + Send + Sync>;

/// A fully resolved experiment.
#[derive(Clone)]
pub struct CaseSpec {
    pub name: String,
    pub model: FluxModel,
    pub grid: Grid,
    pub bc: BoundarySpec,
    /// Initial state at `(x, y)`.
    pub initial: InitialFn,
    pub t_final: f64,
    pub dt_rule: DtRule,
    /// Exact state at `(x, y, t)`.
    pub exact: Option<ExactFn>,
}

impl fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseSpec")
            .field("name", &self.name)
            .field("model", &self.model)
            .field("grid", &self.grid)
            .field("bc", &self.bc)
            .field("t_final", &self.t_final)
            .field("dt_rule", &self.dt_rule)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

/// Optional adjustments applied by [`make_case`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CaseOverrides {
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    /// Switches the case to a Courant-limited step with this number.
    pub cfl: Option<f64>,
    pub t_final: Option<f64>,
}

pub const DEFAULT_CFL: f64 = 0.5;

impl CaseSpec {
    pub fn initial_field(&self) -> crate::solver::FieldArray {
        let init = &self.initial;
        crate::solver::FieldArray::from_fn(&self.grid, self.model.num_vars(), |x, y| init(x, y))
    }

    /// Same case on a grid with `nx` (and `ny`) cells.
    pub fn with_resolution(&self, nx: usize, ny: Option<usize>) -> Result<CaseSpec, SolverError> {
        use crate::flux::Axis;
        let g = &self.grid;
        let x = (g.origin(Axis::X), g.origin(Axis::X) + g.extent(Axis::X));
        let grid = if g.dim() == 1 {
            Grid::line(nx, x.0, x.1)?
        } else {
            let y = (g.origin(Axis::Y), g.origin(Axis::Y) + g.extent(Axis::Y));
            Grid::plane(nx, ny.unwrap_or(g.n(Axis::Y)), x, y)?
        };
        Ok(CaseSpec {
            grid,
            ..self.clone()
        })
    }

    /// Grid nodes per axis (cells + 1), the count usually quoted for a mesh.
    pub fn mesh_points(&self) -> (usize, usize) {
        use crate::flux::Axis;
        let pts = |a| self.grid.n(a) + 1;
        if self.grid.dim() == 1 {
            (pts(Axis::X), 1)
        } else {
            (pts(Axis::X), pts(Axis::Y))
        }
    }
}

/// Exact solution of periodic linear advection: the profile translated by
/// `a t` and wrapped into `[lo, hi)`. Whole periods return the profile at
/// `x` itself.
fn periodic_translate(
    profile: fn(f64) -> f64,
    speed: f64,
    lo: f64,
    hi: f64,
) -> ExactFn {
    let period = hi - lo;
    Arc::new(move |x, _, t| {
        let shift = (speed * t).rem_euclid(period);
        if shift == 0.0 {
            return ConservedState::scalar(profile(x));
        }
        let mut y = x - shift;
        if y < lo {
            y += period;
        }
        if y >= hi {
            y -= period;
        }
        ConservedState::scalar(profile(y))
    })
}

fn advection_case(
    name: &str,
    n: usize,
    profile: fn(f64) -> f64,
    t_final: f64,
    dt_rule: DtRule,
) -> Result<CaseSpec, SolverError> {
    let speed = 1.0;
    Ok(CaseSpec {
        name: name.to_string(),
        model: FluxModel::Advection { speed },
        grid: Grid::line(n, -1.0, 1.0)?,
        bc: BoundarySpec::periodic(),
        initial: Arc::new(move |x, _| ConservedState::scalar(profile(x))),
        t_final,
        dt_rule,
        exact: Some(periodic_translate(profile, speed, -1.0, 1.0)),
    })
}

/// Builds one of the named experiments:
///
/// * `sine_advection`: `sin(pi x)` on `[-1, 1]`, periodic, to `t = 2`, 50 cells,
///   `dt = dx^(5/3)`.
/// * `jiang_shu_composite`: the four-feature profile, 400 cells, to `t = 20`.
/// * `dmr`: double Mach reflection on `[0, 4] x [0, 1]` to `t = 0.28`,
///   1600 x 400 cells.
/// * `sod`: shock tube on `[0, 1]` to `t = 0.2`, 200 cells.
pub fn make_case(name: &str, overrides: &CaseOverrides) -> Result<CaseSpec, CaseError> {
    let bad = |reason: String| CaseError::Override {
        case: name.to_string(),
        reason,
    };
    if let Some(c) = overrides.cfl {
        if !(c > 0.0) {
            return Err(bad(format!("CFL number must be positive, got {c}")));
        }
    }
    if let Some(t) = overrides.t_final {
        if !(t >= 0.0) {
            return Err(bad(format!("final time must be non-negative, got {t}")));
        }
    }
    let nx = overrides.nx;
    let mut case = match name {
        "sine_advection" => advection_case(
            name,
            nx.unwrap_or(50),
            profiles::sine,
            2.0,
            DtRule::CONVERGENCE,
        )?,
        "jiang_shu_composite" => advection_case(
            name,
            nx.unwrap_or(400),
            profiles::composite,
            20.0,
            DtRule::Cfl(DEFAULT_CFL),
        )?,
        "dmr" => {
            let setup = DmrSetup::default();
            CaseSpec {
                name: name.to_string(),
                model: setup.model(),
                grid: Grid::plane(
                    nx.unwrap_or(1600),
                    overrides.ny.unwrap_or(400),
                    (0.0, 4.0),
                    (0.0, 1.0),
                )?,
                bc: setup.boundaries(),
                initial: Arc::new(move |x, y| setup.initial(x, y)),
                t_final: 0.28,
                dt_rule: DtRule::Cfl(DEFAULT_CFL),
                exact: None,
            }
        }
        "sod" => {
            let model = FluxModel::Euler1d { gamma: 1.4 };
            CaseSpec {
                name: name.to_string(),
                model,
                grid: Grid::line(nx.unwrap_or(200), 0.0, 1.0)?,
                bc: BoundarySpec::outflow(),
                initial: Arc::new(move |x, _| {
                    if x < 0.5 {
                        model.from_primitive(&[1.0, 0.0, 1.0])
                    } else {
                        model.from_primitive(&[0.125, 0.0, 0.1])
                    }
                }),
                t_final: 0.2,
                dt_rule: DtRule::Cfl(DEFAULT_CFL),
                exact: None,
            }
        }
        other => return Err(CaseError::UnknownCase(other.to_string())),
    };
    if overrides.ny.is_some() && case.grid.dim() == 1 {
        return Err(bad("ny given for a one-dimensional case".into()));
    }
    if let Some(c) = overrides.cfl {
        case.dt_rule = DtRule::Cfl(c);
    }
    if let Some(t) = overrides.t_final {
        case.t_final = t;
    }
    Ok(case)
}

/// Exact state of `case` at `(x, t)` (1D cases).
pub fn exact_solution(case: &CaseSpec, x: f64, t: f64) -> Result<ConservedState, CaseError> {
    case.exact
        .as_ref()
        .map(|f| f(x, 0.0, t))
        .ok_or_else(|| CaseError::NoExactSolution(case.name.clone()))
}
