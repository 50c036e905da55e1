//! The `run`, `converge` and `compare` commands.
//!
//! Every command writes the resolved configuration as `config.toml` next to
//! its results, so a run can be repeated with `--config`. Wall-clock time
//! goes to `timing.json` only; every other file depends on the inputs alone
//! and is byte-identical across repeated runs and worker counts.

use std::fmt::Write as _;
use std::path::Path;

use adaptive_weno::cases::{error_norms, scan_extrema_and_tv, CaseError, ErrorReport};
use adaptive_weno::solver::{RunOutcome, Snapshot};
use adaptive_weno::{run_to_time, Axis, CaseSpec, FieldArray, SolverError};
use serde::Serialize;

use crate::config::{RunConfig, Scheme};
use crate::output::{component_names, write_field_csv, write_field_vtk, write_json, write_text};
use crate::BenchError;

pub const FIELD_CSV: &str = "field.csv";
pub const FIELD_VTK: &str = "field.vtk";
pub const SUMMARY_JSON: &str = "summary.json";
pub const TIMING_JSON: &str = "timing.json";
pub const CONFIG_TOML: &str = "config.toml";
pub const DIAGNOSTICS_JSON: &str = "diagnostics.json";
pub const CONVERGENCE_CSV: &str = "convergence.csv";
pub const COMPARE_JSON: &str = "compare.json";
pub const DIFFERENCE_CSV: &str = "difference.csv";
pub const SNAPSHOT_DIR: &str = "snapshots";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Norms {
    pub l1: f64,
    pub linf: f64,
}

impl From<ErrorReport> for Norms {
    fn from(r: ErrorReport) -> Self {
        Norms { l1: r.l1, linf: r.linf }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentStats {
    pub name: String,
    pub min: f64,
    pub max: f64,
    /// Integral over the domain.
    pub total: f64,
    /// Sum of jumps between row neighbors; one-dimensional fields only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_variation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnapshotEntry {
    pub file: String,
    pub t: f64,
    pub step: usize,
}

/// Deterministic description of a finished run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub case: String,
    pub scheme: String,
    pub model: String,
    pub cells: [usize; 2],
    pub mesh_points: [usize; 2],
    pub t: f64,
    pub steps: usize,
    /// Error of the first component against the exact solution, when the
    /// case has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Norms>,
    pub components: Vec<ComponentStats>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub snapshots: Vec<SnapshotEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub steps: usize,
    pub workers: usize,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub summary: RunSummary,
    pub field: FieldArray,
    pub wall_seconds: f64,
}

#[derive(Serialize)]
struct Diagnostics<'a> {
    case: &'a str,
    scheme: &'a str,
    step: usize,
    t: f64,
    detail: &'a str,
    /// Time of the last state written, if snapshots were on.
    last_snapshot_t: Option<f64>,
    config: &'a RunConfig,
}

fn run_case(
    cfg: &RunConfig,
    case: &CaseSpec,
    observer: &mut (dyn FnMut(&Snapshot) + Send),
) -> Result<RunOutcome, BenchError> {
    run_to_time(case, &cfg.recon(), &cfg.run_options(), observer).map_err(BenchError::from)
}

/// Error norms if the case has an exact solution.
pub fn optional_error(field: &FieldArray, case: &CaseSpec, t: f64) -> Result<Option<Norms>, BenchError> {
    match error_norms(field, case, t) {
        Ok(r) => Ok(Some(r.into())),
        Err(CaseError::NoExactSolution(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn component_stats(case: &CaseSpec, field: &FieldArray) -> Vec<ComponentStats> {
    let cell_volume: f64 = case.grid.axes().iter().map(|&a| case.grid.dx(a)).product();
    let one_d = case.grid.dim() == 1;
    component_names(&case.model)
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let values = field.component(k);
            let (min, max) = values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
            let total_variation = if one_d && k == 0 {
                Some(scan_extrema_and_tv(field).total_variation)
            } else if one_d {
                Some(values.windows(2).map(|w| (w[1] - w[0]).abs()).sum())
            } else {
                None
            };
            ComponentStats {
                name: name.to_string(),
                min,
                max,
                total: field.component_sum(k) * cell_volume,
                total_variation,
            }
        })
        .collect()
}

fn summarize(
    cfg: &RunConfig,
    case: &CaseSpec,
    outcome: &RunOutcome,
    snapshots: Vec<SnapshotEntry>,
) -> Result<RunSummary, BenchError> {
    let (nx, ny) = outcome.field.shape();
    let (px, py) = case.mesh_points();
    Ok(RunSummary {
        case: case.name.clone(),
        scheme: cfg.scheme.variant.name().to_string(),
        model: case.model.name().to_string(),
        cells: [nx, ny],
        mesh_points: [px, py],
        t: outcome.t,
        steps: outcome.steps,
        error: optional_error(&outcome.field, case, outcome.t)?,
        components: component_stats(case, &outcome.field),
        snapshots,
    })
}

/// Runs one configuration and writes the final field (CSV and VTK),
/// `summary.json`, `timing.json` and any snapshots into the output
/// directory. A blow-up leaves `diagnostics.json` behind.
pub fn run(cfg: &RunConfig) -> Result<RunReport, BenchError> {
    let dir = cfg.output.dir.clone();
    let case = cfg.case_spec()?;
    write_text(&dir.join(CONFIG_TOML), &cfg.to_toml())?;

    let mut snapshots = Vec::new();
    let mut snapshot_error = None;
    let snapshot_dir = dir.join(SNAPSHOT_DIR);
    let mut observer = |s: &Snapshot| {
        if cfg.output.snapshot_every.is_none() || snapshot_error.is_some() {
            return;
        }
        let file = format!("{SNAPSHOT_DIR}/snapshot_{:04}.csv", snapshots.len());
        let path = snapshot_dir.join(Path::new(&file).file_name().unwrap());
        match write_field_csv(&path, s.grid, &case.model, s.field) {
            Ok(()) => snapshots.push(SnapshotEntry { file, t: s.t, step: s.step }),
            Err(e) => snapshot_error = Some(e),
        }
    };
    let result = run_case(cfg, &case, &mut observer);
    if let Some(e) = snapshot_error {
        return Err(e);
    }
    let outcome = match result {
        Ok(o) => o,
        Err(BenchError::BlowUp { source, .. }) => {
            let path = dir.join(DIAGNOSTICS_JSON);
            if let SolverError::BlowUp { step, t, detail, .. } = &source {
                write_json(
                    &path,
                    &Diagnostics {
                        case: &case.name,
                        scheme: cfg.scheme.variant.name(),
                        step: *step,
                        t: *t,
                        detail,
                        last_snapshot_t: snapshots.last().map(|s| s.t),
                        config: cfg,
                    },
                )?;
            }
            return Err(BenchError::BlowUp {
                source,
                diagnostics: Some(path),
            });
        }
        Err(e) => return Err(e),
    };

    let summary = summarize(cfg, &case, &outcome, snapshots)?;
    write_field_csv(&dir.join(FIELD_CSV), &case.grid, &case.model, &outcome.field)?;
    let title = format!("{} {} t={}", case.name, summary.scheme, outcome.t);
    write_field_vtk(&dir.join(FIELD_VTK), &case.grid, &case.model, &outcome.field, &title)?;
    write_json(&dir.join(SUMMARY_JSON), &summary)?;
    write_json(
        &dir.join(TIMING_JSON),
        &Timing {
            wall_seconds: outcome.wall_seconds,
            steps: outcome.steps,
            workers: cfg.run.workers,
        },
    )?;
    Ok(RunReport {
        summary,
        field: outcome.field,
        wall_seconds: outcome.wall_seconds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub scheme: String,
    pub n: usize,
    pub dx: f64,
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
}

/// Mesh levels for `converge`: the case resolution doubled `levels - 1`
/// times.
pub fn level_sizes(base: usize, levels: usize) -> Vec<usize> {
    (0..levels).map(|k| base << k).collect()
}

/// Error table for each scheme in `schemes`. Written to
/// `convergence.csv`; the order columns appear only with two or more
/// levels.
pub fn converge(cfg: &RunConfig, schemes: &[Scheme]) -> Result<Vec<ConvergenceRow>, BenchError> {
    let case = cfg.case_spec()?;
    if case.grid.dim() != 1 {
        return Err(BenchError::Config(format!("case `{}` is not one-dimensional", case.name)));
    }
    if optional_error(&case.initial_field(), &case, 0.0)?.is_none() {
        return Err(BenchError::Config(format!("case `{}` has no exact solution", case.name)));
    }
    if schemes.is_empty() {
        return Err(BenchError::Config("no schemes to converge".into()));
    }
    let dir = &cfg.output.dir;
    write_text(&dir.join(CONFIG_TOML), &cfg.to_toml())?;
    let sizes = level_sizes(case.grid.n(Axis::X), cfg.run.levels);
    let mut rows = Vec::new();
    for &scheme in schemes {
        let scfg = cfg.with_scheme(scheme);
        let table = adaptive_weno::cases::convergence_table_with(&case, &sizes, |c| {
            run_to_time(c, &scfg.recon(), &scfg.run_options(), &mut |_| {}).map(|o| o.field)
        })?;
        for r in table {
            rows.push(ConvergenceRow {
                scheme: scheme.name().to_string(),
                n: r.n,
                dx: case.grid.extent(Axis::X) / r.n as f64,
                l1: r.l1,
                l1_order: r.order_l1,
                linf: r.linf,
                linf_order: r.order_linf,
            });
        }
    }
    write_text(&dir.join(CONVERGENCE_CSV), &convergence_csv(&rows, sizes.len() > 1))?;
    Ok(rows)
}

pub fn convergence_csv(rows: &[ConvergenceRow], with_orders: bool) -> String {
    let mut out = String::from(if with_orders {
        "scheme,n,dx,l1,l1_order,linf,linf_order\n"
    } else {
        "scheme,n,dx,l1,linf\n"
    });
    let order = |o: Option<f64>| o.map(|v| format!("{v:.6}")).unwrap_or_default();
    for r in rows {
        if with_orders {
            writeln!(
                out,
                "{},{},{:.16e},{:.16e},{},{:.16e},{}",
                r.scheme,
                r.n,
                r.dx,
                r.l1,
                order(r.l1_order),
                r.linf,
                order(r.linf_order)
            )
        } else {
            writeln!(out, "{},{},{:.16e},{:.16e},{:.16e}", r.scheme, r.n, r.dx, r.l1, r.linf)
        }
        .unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentDifference {
    pub name: String,
    /// Mean absolute difference over the cells.
    pub l1: f64,
    pub linf: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub a: RunSummary,
    pub b: RunSummary,
    pub difference: Vec<ComponentDifference>,
}

fn same_grid(a: &CaseSpec, b: &CaseSpec) -> bool {
    a.grid.dim() == b.grid.dim()
        && a.model.num_vars() == b.model.num_vars()
        && a.grid.axes().iter().all(|&ax| {
            a.grid.n(ax) == b.grid.n(ax)
                && a.grid.origin(ax) == b.grid.origin(ax)
                && a.grid.extent(ax) == b.grid.extent(ax)
        })
}

/// Runs two configurations on the same grid and writes their
/// cell-by-cell difference `a - b` to `difference.csv` and the summaries
/// to `compare.json` in `out`.
pub fn compare(a: &RunConfig, b: &RunConfig, out: &Path) -> Result<CompareReport, BenchError> {
    let (case_a, case_b) = (a.case_spec()?, b.case_spec()?);
    if !same_grid(&case_a, &case_b) {
        return Err(BenchError::Config(format!(
            "grids differ: {:?} vs {:?}",
            case_a.grid, case_b.grid
        )));
    }
    write_text(&out.join("a.toml"), &a.to_toml())?;
    write_text(&out.join("b.toml"), &b.to_toml())?;
    let ra = run_case(a, &case_a, &mut |_| {})?;
    let rb = run_case(b, &case_b, &mut |_| {})?;

    let mut diff = ra.field.clone();
    for ((_, _, x), (i, j, y)) in ra.field.interior().zip(rb.field.interior()) {
        let cell = diff.cell_mut(i as isize, j as isize);
        for k in 0..x.len() {
            cell[k] = x[k] - y[k];
        }
    }
    let n = diff.shape().0 * diff.shape().1;
    let difference = component_names(&case_a.model)
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let d = diff.component(k);
            ComponentDifference {
                name: name.to_string(),
                l1: d.iter().map(|v| v.abs()).sum::<f64>() / n as f64,
                linf: d.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
            }
        })
        .collect();
    let report = CompareReport {
        a: summarize(a, &case_a, &ra, Vec::new())?,
        b: summarize(b, &case_b, &rb, Vec::new())?,
        difference,
    };
    write_field_csv(&out.join(DIFFERENCE_CSV), &case_a.grid, &case_a.model, &diff)?;
    write_json(&out.join(COMPARE_JSON), &report)?;
    Ok(report)
}
