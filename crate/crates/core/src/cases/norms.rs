use crate::flux::Axis;
use crate::reconstruction::ReconConfig;
use crate::solver::{run_to_time, FieldArray, RunOptions, SolverError};

use super::{exact_solution, CaseError, CaseSpec};

/// Error of the first conserved component against the exact solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport {
    /// Mean absolute error over the cells.
    pub l1: f64,
    pub linf: f64,
    pub n: usize,
    pub order_l1: Option<f64>,
    pub order_linf: Option<f64>,
}

/// `L1 = sum |u_i - u(x_i, t)| / N` and `Linf = max |u_i - u(x_i, t)|`.
pub fn error_norms(field: &FieldArray, case: &CaseSpec, t: f64) -> Result<ErrorReport, CaseError> {
    let mut sum = 0.0;
    let mut max = 0.0_f64;
    let mut n = 0;
    for (i, j, u) in field.interior() {
        let x = case.grid.center(Axis::X, i as isize);
        let exact = match &case.exact {
            Some(f) if case.grid.dim() == 2 => f(x, case.grid.center(Axis::Y, j as isize), t),
            _ => exact_solution(case, x, t)?,
        };
        let e = (u[0] - exact[0]).abs();
        sum += e;
        max = max.max(e);
        n += 1;
    }
    Ok(ErrorReport {
        l1: sum / n as f64,
        linf: max,
        n,
        order_l1: None,
        order_linf: None,
    })
}

/// Convergence rate between two levels with `n_coarse` and `n_fine` cells;
/// absent when the levels coincide or an error vanishes.
pub fn observed_order(e_coarse: f64, e_fine: f64, n_coarse: usize, n_fine: usize) -> Option<f64> {
    if n_coarse == n_fine || !(e_coarse > 0.0 && e_fine > 0.0) {
        return None;
    }
    Some((e_coarse / e_fine).ln() / (n_fine as f64 / n_coarse as f64).ln())
}

/// Runs `case` at each resolution in `levels` (cells along x) with
/// `run`, and tabulates errors at the final time together with the rates
/// between consecutive levels.
pub fn convergence_table_with<R>(
    case: &CaseSpec,
    levels: &[usize],
    mut run: R,
) -> Result<Vec<ErrorReport>, CaseError>
where
    R: FnMut(&CaseSpec) -> Result<FieldArray, SolverError>,
{
    let mut reports: Vec<ErrorReport> = Vec::with_capacity(levels.len());
    for &n in levels {
        let level = case.with_resolution(n, None)?;
        let field = run(&level)?;
        let mut report = error_norms(&field, &level, level.t_final)?;
        if let Some(prev) = reports.last() {
            report.order_l1 = observed_order(prev.l1, report.l1, prev.n, report.n);
            report.order_linf = observed_order(prev.linf, report.linf, prev.n, report.n);
        }
        reports.push(report);
    }
    Ok(reports)
}

/// [`convergence_table_with`] using the WENO solver.
pub fn convergence_table(
    case: &CaseSpec,
    cfg: &ReconConfig,
    levels: &[usize],
) -> Result<Vec<ErrorReport>, CaseError> {
    convergence_table_with(case, levels, |c| {
        run_to_time(c, cfg, &RunOptions::default(), &mut |_| {}).map(|o| o.field)
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrema {
    pub min: f64,
    pub max: f64,
    /// `sum |u_{i+1} - u_i|` over neighboring interior cells.
    pub total_variation: f64,
}

/// Minimum, maximum and total variation of the first component of a 1D
/// field.
pub fn scan_extrema_and_tv(field: &FieldArray) -> Extrema {
    let u = field.component(0);
    let (min, max) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    Extrema {
        min,
        max,
        total_variation: u.windows(2).map(|w| (w[1] - w[0]).abs()).sum(),
    }
}
