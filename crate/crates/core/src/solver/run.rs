use std::time::Instant;

use rayon::ThreadPoolBuilder;

use crate::cases::CaseSpec;
use crate::reconstruction::ReconConfig;

use super::grid::{FieldArray, Grid};
use super::rhs::SpatialOperator;
use super::time::{rk3_step, RunState};
use super::SolverError;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunOptions {
    /// Worker threads for the grid-line sweeps; 0 uses the global rayon
    /// pool.
    pub workers: usize,
    /// Interval between observer snapshots, in simulation time.
    pub snapshot_every: Option<f64>,
}

/// State handed to observers.
#[derive(Debug)]
pub struct Snapshot<'a> {
    pub t: f64,
    pub step: usize,
    pub grid: &'a Grid,
    pub field: &'a FieldArray,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub field: FieldArray,
    pub t: f64,
    pub steps: usize,
    pub wall_seconds: f64,
}

/// Integrates `case` from its initial condition to `case.t_final`.
///
/// The last step is shortened to land exactly on the final time. Observers
/// see the initial state, then a snapshot each time the solution passes a
/// multiple of `snapshot_every`.
pub fn run_to_time(
    case: &CaseSpec,
    cfg: &ReconConfig,
    opts: &RunOptions,
    observer: &mut (dyn FnMut(&Snapshot) + Send),
) -> Result<RunOutcome, SolverError> {
    cfg.validate()?;
    case.bc.validate(&case.grid)?;
    if !(case.t_final >= 0.0) {
        return Err(SolverError::Config(format!("final time {} is negative", case.t_final)));
    }
    let mut body = move || integrate(case, cfg, opts, observer);
    if opts.workers == 0 {
        body()
    } else {
        let pool = ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| SolverError::Config(format!("cannot start worker pool: {e}")))?;
        pool.install(body)
    }
}

fn integrate(
    case: &CaseSpec,
    cfg: &ReconConfig,
    opts: &RunOptions,
    observer: &mut (dyn FnMut(&Snapshot) + Send),
) -> Result<RunOutcome, SolverError> {
    let start = Instant::now();
    let grid = &case.grid;
    let op = SpatialOperator {
        grid,
        bc: &case.bc,
        model: case.model,
        recon: *cfg,
    };
    let mut field = case.initial_field();
    let mut run = RunState {
        t: 0.0,
        dt: 0.0,
        step_count: 0,
        cfl: case.dt_rule.cfl().unwrap_or(f64::NAN),
    };
    let blow_up = |run: &RunState, detail: String| SolverError::BlowUp {
        case: case.name.clone(),
        step: run.step_count,
        t: run.t,
        detail,
    };
    observer(&Snapshot { t: 0.0, step: 0, grid, field: &field });
    let mut next_snapshot = opts.snapshot_every.filter(|s| *s > 0.0);

    while run.t < case.t_final {
        let dt = case
            .dt_rule
            .dt(&field, grid, &case.model)
            .map_err(|e| blow_up(&run, e.to_string()))?;
        let remaining = case.t_final - run.t;
        let last = dt >= remaining;
        run.dt = if last { remaining } else { dt };
        if !(run.dt > 0.0) || !run.dt.is_finite() {
            return Err(blow_up(&run, format!("invalid time step {}", run.dt)));
        }
        rk3_step(&mut field, &run, |u, t| op.rhs(u, t)).map_err(|e| match e {
            SolverError::BlowUp { detail, .. } => blow_up(&run, detail),
            other => blow_up(&run, other.to_string()),
        })?;
        for (i, j, u) in field.interior() {
            if let Err(e) = case.model.check_admissible(u) {
                return Err(blow_up(&run, format!("cell ({i}, {j}): {e}")));
            }
        }
        run.step_count += 1;
        run.t = if last { case.t_final } else { run.t + run.dt };

        if let Some(every) = opts.snapshot_every.filter(|s| *s > 0.0) {
            let due = next_snapshot.unwrap_or(every);
            if run.t >= due || last {
                observer(&Snapshot { t: run.t, step: run.step_count, grid, field: &field });
                next_snapshot = Some(((run.t / every).floor() + 1.0) * every);
            }
        }
    }
    Ok(RunOutcome {
        field,
        t: run.t,
        steps: run.step_count,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}
