use crate::flux::{Axis, FluxModel};

use super::grid::{FieldArray, Grid};
use super::SolverError;

/// Progress of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunState {
    pub t: f64,
    pub dt: f64,
    pub step_count: usize,
    pub cfl: f64,
}

/// How each step size is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DtRule {
    /// Courant-limited step with the given CFL number.
    Cfl(f64),
    /// `dt = dx^p`, independent of the solution.
    FixedPower(f64),
}

impl DtRule {
    /// Exponent used by convergence studies, so that the third-order time
    /// error scales like the fifth-order space error.
    pub const CONVERGENCE: DtRule = DtRule::FixedPower(5.0 / 3.0);

    pub fn dt(&self, field: &FieldArray, grid: &Grid, model: &FluxModel) -> Result<f64, SolverError> {
        match *self {
            DtRule::Cfl(cfl) => stable_dt(field, grid, model, cfl),
            DtRule::FixedPower(p) => {
                let dx = grid.axes().iter().map(|a| grid.dx(*a)).fold(f64::INFINITY, f64::min);
                Ok(dx.powf(p))
            }
        }
    }

    pub fn cfl(&self) -> Option<f64> {
        match *self {
            DtRule::Cfl(c) => Some(c),
            DtRule::FixedPower(_) => None,
        }
    }
}

/// Courant-limited step: `cfl dx / a` in 1D, `cfl / (a_x/dx + a_y/dy)` in
/// 2D, with `a` the largest spectral radius over the interior. Returns
/// infinity when nothing moves.
pub fn stable_dt(field: &FieldArray, grid: &Grid, model: &FluxModel, cfl: f64) -> Result<f64, SolverError> {
    let mut rate = 0.0;
    for &axis in grid.axes() {
        rate += max_wave_speed(field, model, axis)? / grid.dx(axis);
    }
    Ok(if rate > 0.0 { cfl / rate } else { f64::INFINITY })
}

fn check_stage(field: &FieldArray, run: &RunState, stage: usize) -> Result<(), SolverError> {
    if field.is_finite() {
        Ok(())
    } else {
        Err(SolverError::BlowUp {
            case: String::new(),
            step: run.step_count,
            t: run.t,
            detail: format!("non-finite value after RK stage {stage}"),
        })
    }
}

/// One step of the three-stage TVD Runge–Kutta scheme,
///
/// ```text
/// u1 = u + dt L(u)
/// u2 = 3/4 u + 1/4 (u1 + dt L(u1))
/// u  = 1/3 u + 2/3 (u2 + dt L(u2))
/// ```
///
/// with `L` evaluated at stage times `t`, `t + dt`, `t + dt/2`. The convex
/// stages are applied as increments `u + w ((v - u) + dt L(v))`, so a zero
/// operator leaves `u` bitwise unchanged. The operator may refresh ghost
/// cells of the field it is given.
pub fn rk3_step<L>(field: &mut FieldArray, run: &RunState, mut operator: L) -> Result<(), SolverError>
where
    L: FnMut(&mut FieldArray, f64) -> Result<FieldArray, SolverError>,
{
    let (t, dt) = (run.t, run.dt);
    if !(dt > 0.0) {
        return Err(SolverError::Config(format!("time step must be positive, got {dt}")));
    }
    let l0 = operator(field, t)?;
    let mut u1 = field.clone();
    u1.add_scaled(dt, &l0);
    check_stage(&u1, run, 1)?;

    let l1 = operator(&mut u1, t + dt)?;
    let mut u2 = field.clone();
    u2.relax_towards(0.25, &u1, dt, &l1);
    check_stage(&u2, run, 2)?;

    let l2 = operator(&mut u2, t + 0.5 * dt)?;
    field.relax_towards(2.0 / 3.0, &u2, dt, &l2);
    check_stage(field, run, 3)
}

/// Largest spectral radius over the interior along `axis`.
pub fn max_wave_speed(field: &FieldArray, model: &FluxModel, axis: Axis) -> Result<f64, SolverError> {
    let mut a_max = 0.0_f64;
    for (i, j, u) in field.interior() {
        a_max = a_max.max(model.spectral_radius(u, axis).map_err(|source| SolverError::Flux {
            axis,
            i: i as isize,
            j: j as isize,
            source,
        })?);
    }
    Ok(a_max)
}
