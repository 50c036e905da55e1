//! Field files: CSV with full precision and legacy ASCII VTK.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use adaptive_weno::{Axis, FieldArray, FluxModel, Grid};
use serde::Serialize;

use crate::BenchError;

/// Column names of the conserved components of `model`.
pub fn component_names(model: &FluxModel) -> &'static [&'static str] {
    match model {
        FluxModel::Advection { .. } | FluxModel::Burgers => &["u"],
        FluxModel::Euler1d { .. } => &["density", "momentum_x", "energy"],
        FluxModel::Euler2d { .. } => &["density", "momentum_x", "momentum_y", "energy"],
    }
}

fn is_euler(model: &FluxModel) -> bool {
    matches!(model, FluxModel::Euler1d { .. } | FluxModel::Euler2d { .. })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), BenchError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), BenchError> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write_text(path, &text)
}

/// Cell centers and conserved components, one interior cell per row in
/// row-major order. Values use 17 significant digits, so they read back
/// bit for bit.
pub fn field_csv(grid: &Grid, model: &FluxModel, field: &FieldArray) -> String {
    let two_d = grid.dim() == 2;
    let mut out = String::from("x");
    if two_d {
        out.push_str(",y");
    }
    for name in component_names(model) {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, j, u) in field.interior() {
        write!(out, "{:.16e}", grid.center(Axis::X, i as isize)).unwrap();
        if two_d {
            write!(out, ",{:.16e}", grid.center(Axis::Y, j as isize)).unwrap();
        }
        for v in u {
            write!(out, ",{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_field_csv(path: &Path, grid: &Grid, model: &FluxModel, field: &FieldArray) -> Result<(), BenchError> {
    write_text(path, &field_csv(grid, model, field))
}

/// A CSV file read back into a header and numeric rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

pub fn parse_csv(text: &str) -> Result<Table, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("row {}: {e}", n + 1))?;
        if row.len() != header.len() {
            return Err(format!("row {} has {} fields, expected {}", n + 1, row.len(), header.len()));
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}

pub fn read_csv(path: &Path) -> Result<Table, BenchError> {
    let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_csv(&text).map_err(|detail| BenchError::Parse {
        what: "CSV",
        path: path.to_path_buf(),
        detail,
    })
}

/// Legacy ASCII VTK on `STRUCTURED_POINTS` with cell data. Euler fields
/// also carry the pressure.
pub fn field_vtk(grid: &Grid, model: &FluxModel, field: &FieldArray, title: &str) -> String {
    let (nx, ny) = field.shape();
    let dy = if grid.dim() == 2 { grid.dx(Axis::Y) } else { 1.0 };
    let y0 = if grid.dim() == 2 { grid.origin(Axis::Y) } else { 0.0 };
    let mut out = String::new();
    writeln!(out, "# vtk DataFile Version 3.0").unwrap();
    writeln!(out, "{}", title.replace('\n', " ")).unwrap();
    writeln!(out, "ASCII\nDATASET STRUCTURED_POINTS").unwrap();
    writeln!(out, "DIMENSIONS {} {} 1", nx + 1, ny + 1).unwrap();
    writeln!(out, "ORIGIN {:.16e} {y0:.16e} 0", grid.origin(Axis::X)).unwrap();
    writeln!(out, "SPACING {:.16e} {dy:.16e} 1", grid.dx(Axis::X)).unwrap();
    writeln!(out, "CELL_DATA {}", nx * ny).unwrap();

    let mut scalar = |name: &str, values: &mut dyn Iterator<Item = f64>| {
        writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for v in values {
            writeln!(out, "{v:.16e}").unwrap();
        }
    };
    let names = component_names(model);
    if is_euler(model) {
        let m = field.num_vars();
        scalar("density", &mut field.interior().map(|(_, _, u)| u[0]));
        scalar("momentum_x", &mut field.interior().map(|(_, _, u)| u[1]));
        // VTK viewers expect both momenta in 2D sets; 1D gets a zero column
        let my = |u: &[f64]| if m == 4 { u[2] } else { 0.0 };
        scalar("momentum_y", &mut field.interior().map(|(_, _, u)| my(u)));
        scalar("energy", &mut field.interior().map(|(_, _, u)| u[m - 1]));
        scalar("pressure", &mut field.interior().map(|(_, _, u)| model.to_primitive(u)[m - 1]));
    } else {
        scalar(names[0], &mut field.interior().map(|(_, _, u)| u[0]));
    }
    out
}

pub fn write_field_vtk(
    path: &Path,
    grid: &Grid,
    model: &FluxModel,
    field: &FieldArray,
    title: &str,
) -> Result<(), BenchError> {
    write_text(path, &field_vtk(grid, model, field, title))
}
