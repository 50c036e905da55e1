//! Conservative finite-difference right-hand side.

use rayon::prelude::*;

use crate::flux::{
    eigensystem, global_alpha, lf_split, Axis, ConservedState, FluxError, FluxModel, SplitAlpha,
    MAX_VARS,
};
use crate::reconstruction::{reconstruct_interface, ReconConfig, ReconWindow};

use super::boundary::{apply_boundaries, BoundarySpec};
use super::grid::{FieldArray, Grid};
use super::SolverError;

/// A flux failure at point `index` of a grid line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineError {
    pub index: usize,
    pub source: FluxError,
}

/// Interface fluxes along one grid line.
///
/// `points` holds `L` states including three ghost points at each end;
/// the result has the `L - 5` fluxes at the interfaces between points
/// `p` and `p + 1` for `p = 2..=L-4`.
pub fn numerical_flux_line(
    points: &[ConservedState],
    model: &FluxModel,
    axis: Axis,
    alpha: &SplitAlpha,
    cfg: &ReconConfig,
) -> Result<Vec<ConservedState>, LineError> {
    let m = model.num_vars();
    let flat: Vec<f64> = points.iter().flat_map(|s| s.iter().copied()).collect();
    let mut out = vec![0.0; points.len().saturating_sub(5) * m];
    let mut scratch = Vec::new();
    flux_line_into(&flat, model, axis, alpha.values(), cfg, &mut scratch, &mut out)?;
    Ok(out.chunks(m).map(ConservedState::new).collect())
}

/// Flat-buffer kernel behind [`numerical_flux_line`]: `points` is the line
/// with stride `m`, `out` receives `(L - 5) * m` values.
pub(crate) fn flux_line_into(
    points: &[f64],
    model: &FluxModel,
    axis: Axis,
    alpha: &[f64],
    cfg: &ReconConfig,
    phys: &mut Vec<f64>,
    out: &mut [f64],
) -> Result<(), LineError> {
    let m = model.num_vars();
    let len = points.len() / m;
    if len < 6 {
        return Ok(());
    }
    phys.clear();
    phys.resize(points.len(), 0.0);
    for (p, (u, f)) in points.chunks_exact(m).zip(phys.chunks_exact_mut(m)).enumerate() {
        model
            .physical_flux_into(u, axis, f)
            .map_err(|source| LineError { index: p, source })?;
    }
    let state = |p: usize| &points[p * m..(p + 1) * m];
    let flux = |p: usize| &phys[p * m..(p + 1) * m];

    for (f_idx, p) in (2..len - 3).enumerate() {
        let target = &mut out[f_idx * m..(f_idx + 1) * m];
        if m == 1 {
            let (mut plus, mut minus) = ([0.0; 6], [0.0; 6]);
            for s in 0..6 {
                (plus[s], minus[s]) = lf_split(flux(p - 2 + s)[0], state(p - 2 + s)[0], alpha[0]);
            }
            target[0] = split_reconstruct(&plus, &minus, cfg);
            continue;
        }
        let es = eigensystem(model, state(p), state(p + 1), axis)
            .map_err(|source| LineError { index: p, source })?;
        let mut q = [[0.0; MAX_VARS]; 6];
        let mut g = [[0.0; MAX_VARS]; 6];
        for s in 0..6 {
            q[s] = es.to_characteristic(state(p - 2 + s));
            g[s] = es.to_characteristic(flux(p - 2 + s));
        }
        let mut fhat = [0.0; MAX_VARS];
        for k in 0..m {
            let (mut plus, mut minus) = ([0.0; 6], [0.0; 6]);
            for s in 0..6 {
                (plus[s], minus[s]) = lf_split(g[s][k], q[s][k], alpha[k]);
            }
            fhat[k] = split_reconstruct(&plus, &minus, cfg);
        }
        target.copy_from_slice(&es.from_characteristic(&fhat[..m])[..m]);
    }
    Ok(())
}

/// Upwind reconstruction of the positive split from points `0..5` plus the
/// mirrored reconstruction of the negative split from points `5..0`.
#[inline]
fn split_reconstruct(plus: &[f64; 6], minus: &[f64; 6], cfg: &ReconConfig) -> f64 {
    debug_assert!(
        plus.iter().chain(minus).all(|v| v.is_finite()),
        "non-finite split flux {plus:?} / {minus:?}"
    );
    let up = ReconWindow([plus[0], plus[1], plus[2], plus[3], plus[4]]);
    let down = ReconWindow([minus[5], minus[4], minus[3], minus[2], minus[1]]);
    reconstruct_interface(&up, cfg) + reconstruct_interface(&down, cfg)
}

/// Everything the semi-discrete operator needs besides the field.
#[derive(Clone, Copy, Debug)]
pub struct SpatialOperator<'a> {
    pub grid: &'a Grid,
    pub bc: &'a BoundarySpec,
    pub model: FluxModel,
    pub recon: ReconConfig,
}

impl SpatialOperator<'_> {
    /// Refreshes ghosts and returns the tendency `-(dF/dx + dG/dy)` on the
    /// interior (ghost entries of the result are zero).
    ///
    /// Grid lines are processed in parallel on the current rayon pool; the
    /// result does not depend on the number of workers.
    pub fn rhs(&self, field: &mut FieldArray, t: f64) -> Result<FieldArray, SolverError> {
        apply_boundaries(field, self.bc, self.grid, t);
        let field = &*field;
        let m = field.num_vars();
        let (nx, ny) = field.shape();
        let (tx, _) = field.totals();
        let (gx, gy) = field.ghosts();
        let mut tend = FieldArray::zeros(self.grid, m);

        let alpha_x = interior_alpha(field, &self.model, Axis::X)?;
        let inv_dx = 1.0 / self.grid.dx(Axis::X);
        let row_len = tx * m;
        let field_data = field.data();
        tend.data_mut()
            .par_chunks_mut(row_len)
            .enumerate()
            .skip(gy)
            .take(ny)
            .try_for_each_init(
                || (Vec::new(), vec![0.0; (nx + 1) * m]),
                |(phys, fluxes), (row, out)| {
                    let line = &field_data[row * row_len..(row + 1) * row_len];
                    flux_line_into(line, &self.model, Axis::X, alpha_x.values(), &self.recon, phys, fluxes)
                        .map_err(|e| locate(e, Axis::X, row as isize - gy as isize, gx))?;
                    for i in 0..nx {
                        let dst = &mut out[(gx + i) * m..(gx + i + 1) * m];
                        for k in 0..m {
                            dst[k] = -(fluxes[(i + 1) * m + k] - fluxes[i * m + k]) * inv_dx;
                        }
                    }
                    Ok::<(), SolverError>(())
                },
            )?;

        if self.grid.dim() == 2 {
            let alpha_y = interior_alpha(field, &self.model, Axis::Y)?;
            let inv_dy = 1.0 / self.grid.dx(Axis::Y);
            let ty = ny + 2 * gy;
            // column-major y-tendencies, added in a fixed order afterwards
            let mut by_column = vec![0.0; nx * ny * m];
            by_column
                .par_chunks_mut(ny * m)
                .enumerate()
                .try_for_each_init(
                    || (Vec::new(), vec![0.0; ty * m], vec![0.0; (ny + 1) * m]),
                    |(phys, line, fluxes), (i, out)| {
                        for j in 0..ty {
                            let src = field.cell(i as isize, j as isize - gy as isize);
                            line[j * m..(j + 1) * m].copy_from_slice(src);
                        }
                        flux_line_into(line, &self.model, Axis::Y, alpha_y.values(), &self.recon, phys, fluxes)
                            .map_err(|e| locate(e, Axis::Y, i as isize, gy))?;
                        for j in 0..ny {
                            for k in 0..m {
                                out[j * m + k] =
                                    -(fluxes[(j + 1) * m + k] - fluxes[j * m + k]) * inv_dy;
                            }
                        }
                        Ok::<(), SolverError>(())
                    },
                )?;
            for i in 0..nx {
                for j in 0..ny {
                    let src = &by_column[(i * ny + j) * m..(i * ny + j + 1) * m];
                    for (d, s) in tend.cell_mut(i as isize, j as isize).iter_mut().zip(src) {
                        *d += s;
                    }
                }
            }
        }
        Ok(tend)
    }
}

fn locate(e: LineError, axis: Axis, line: isize, ghost: usize) -> SolverError {
    let along = e.index as isize - ghost as isize;
    let (i, j) = match axis {
        Axis::X => (along, line),
        Axis::Y => (line, along),
    };
    SolverError::Flux {
        axis,
        i,
        j,
        source: e.source,
    }
}

/// Per-field splitting speeds over the interior, taken fresh for each
/// evaluation.
pub fn interior_alpha(field: &FieldArray, model: &FluxModel, axis: Axis) -> Result<SplitAlpha, SolverError> {
    let mut alpha: Option<SplitAlpha> = None;
    for (i, j, u) in field.interior() {
        let a = global_alpha(model, [u], axis).map_err(|source| SolverError::Flux {
            axis,
            i: i as isize,
            j: j as isize,
            source,
        })?;
        alpha = Some(match alpha {
            Some(acc) => acc.max(a),
            None => a,
        });
    }
    alpha.ok_or(SolverError::Config("empty grid".into()))
}

/// Free-function form of [`SpatialOperator::rhs`].
pub fn rhs(
    field: &mut FieldArray,
    grid: &Grid,
    bc: &BoundarySpec,
    model: &FluxModel,
    cfg: &ReconConfig,
    t: f64,
) -> Result<FieldArray, SolverError> {
    SpatialOperator {
        grid,
        bc,
        model: *model,
        recon: *cfg,
    }
    .rhs(field, t)
}
