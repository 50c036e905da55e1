use crate::flux::{Axis, ConservedState};

use super::SolverError;

/// Ghost layers per side, enough for both split stencils.
pub const GHOST: usize = 3;

/// Uniform structured grid of `n` cells per axis. Solution points sit at
/// cell centers `origin + (i + 1/2) dx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    n: [usize; 2],
    origin: [f64; 2],
    extent: [f64; 2],
}

impl Grid {
    pub fn line(n: usize, lo: f64, hi: f64) -> Result<Self, SolverError> {
        Self::build(1, [n, 1], [lo, 0.0], [hi - lo, 1.0])
    }

    pub fn plane(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self, SolverError> {
        Self::build(2, [nx, ny], [x.0, y.0], [x.1 - x.0, y.1 - y.0])
    }

    fn build(dim: usize, n: [usize; 2], origin: [f64; 2], extent: [f64; 2]) -> Result<Self, SolverError> {
        for a in 0..dim {
            if n[a] == 0 || !(extent[a] > 0.0) || !extent[a].is_finite() {
                return Err(SolverError::Config(format!(
                    "axis {a}: need at least one cell and positive extent (n = {}, extent = {})",
                    n[a], extent[a]
                )));
            }
        }
        Ok(Grid {
            dim,
            n,
            origin,
            extent,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(axis: Axis) -> usize {
        match axis {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }

    pub fn axes(&self) -> &'static [Axis] {
        if self.dim == 1 {
            &[Axis::X]
        } else {
            &[Axis::X, Axis::Y]
        }
    }

    /// Interior cells along `axis` (1 for the unused axis of a 1D grid).
    pub fn n(&self, axis: Axis) -> usize {
        self.n[Self::slot(axis)]
    }

    pub fn origin(&self, axis: Axis) -> f64 {
        self.origin[Self::slot(axis)]
    }

    pub fn extent(&self, axis: Axis) -> f64 {
        self.extent[Self::slot(axis)]
    }

    pub fn dx(&self, axis: Axis) -> f64 {
        self.extent(axis) / self.n(axis) as f64
    }

    /// Ghost width along `axis`; zero for the unused axis of a 1D grid.
    pub fn ghost(&self, axis: Axis) -> usize {
        if Self::slot(axis) < self.dim {
            GHOST
        } else {
            0
        }
    }

    /// Stored cells along `axis`, ghosts included.
    pub fn total(&self, axis: Axis) -> usize {
        self.n(axis) + 2 * self.ghost(axis)
    }

    /// Center of cell `i` (may be a ghost index, i.e. negative or `>= n`).
    pub fn center(&self, axis: Axis, i: isize) -> f64 {
        if Self::slot(axis) >= self.dim {
            return 0.0;
        }
        self.origin(axis) + (i as f64 + 0.5) * self.dx(axis)
    }

    pub fn interior_cells(&self) -> usize {
        self.n[0] * self.n[1]
    }
}

/// Conserved variables on a grid, ghosts included, row-major with the
/// components of one cell contiguous: `((j * total_x) + i) * m + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldArray {
    m: usize,
    tx: usize,
    ty: usize,
    gx: usize,
    gy: usize,
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl FieldArray {
    pub fn zeros(grid: &Grid, m: usize) -> Self {
        let (tx, ty) = (grid.total(Axis::X), grid.total(Axis::Y));
        FieldArray {
            m,
            tx,
            ty,
            gx: grid.ghost(Axis::X),
            gy: grid.ghost(Axis::Y),
            nx: grid.n(Axis::X),
            ny: grid.n(Axis::Y),
            data: vec![0.0; tx * ty * m],
        }
    }

    /// Samples `f(x, y)` at every interior cell center.
    pub fn from_fn<F>(grid: &Grid, m: usize, f: F) -> Self
    where
        F: Fn(f64, f64) -> ConservedState,
    {
        let mut field = Self::zeros(grid, m);
        for j in 0..field.ny as isize {
            let y = grid.center(Axis::Y, j);
            for i in 0..field.nx as isize {
                let s = f(grid.center(Axis::X, i), y);
                assert_eq!(s.len(), m, "initial state has wrong component count");
                field.cell_mut(i, j).copy_from_slice(&s);
            }
        }
        field
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    /// Interior extent `(nx, ny)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub(crate) fn totals(&self) -> (usize, usize) {
        (self.tx, self.ty)
    }

    pub(crate) fn ghosts(&self) -> (usize, usize) {
        (self.gx, self.gy)
    }

    #[inline]
    pub(crate) fn offset(&self, i: isize, j: isize) -> usize {
        let ii = (i + self.gx as isize) as usize;
        let jj = (j + self.gy as isize) as usize;
        debug_assert!(ii < self.tx && jj < self.ty, "cell ({i}, {j}) out of range");
        (jj * self.tx + ii) * self.m
    }

    /// Components of cell `(i, j)`, interior-relative; ghosts have negative
    /// or out-of-range indices.
    #[inline]
    pub fn cell(&self, i: isize, j: isize) -> &[f64] {
        let o = self.offset(i, j);
        &self.data[o..o + self.m]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: isize, j: isize) -> &mut [f64] {
        let o = self.offset(i, j);
        let m = self.m;
        &mut self.data[o..o + m]
    }

    pub fn state(&self, i: isize, j: isize) -> ConservedState {
        ConservedState::new(self.cell(i, j))
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Interior cells in row-major order.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize, &[f64])> + '_ {
        (0..self.ny).flat_map(move |j| {
            (0..self.nx).map(move |i| (i, j, self.cell(i as isize, j as isize)))
        })
    }

    /// Interior values of one component, row-major.
    pub fn component(&self, k: usize) -> Vec<f64> {
        self.interior().map(|(_, _, c)| c[k]).collect()
    }

    /// Sum of one component over the interior, in fixed row-major order.
    pub fn component_sum(&self, k: usize) -> f64 {
        self.interior().map(|(_, _, c)| c[k]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.interior().all(|(_, _, c)| c.iter().all(|x| x.is_finite()))
    }

    /// Checks that `other` has the same layout.
    pub fn same_layout(&self, other: &FieldArray) -> bool {
        (self.m, self.tx, self.ty, self.gx, self.gy) == (other.m, other.tx, other.ty, other.gx, other.gy)
    }

    /// `self += w * ((x - self) + dt * y)`, element-wise over all storage.
    pub(crate) fn relax_towards(&mut self, w: f64, x: &FieldArray, dt: f64, y: &FieldArray) {
        debug_assert!(self.same_layout(x) && self.same_layout(y));
        for ((s, xv), yv) in self.data.iter_mut().zip(&x.data).zip(&y.data) {
            *s += w * ((xv - *s) + dt * yv);
        }
    }

    /// `self += dt * y`
    pub(crate) fn add_scaled(&mut self, dt: f64, y: &FieldArray) {
        debug_assert!(self.same_layout(y));
        for (s, yv) in self.data.iter_mut().zip(&y.data) {
            *s += dt * yv;
        }
    }
}
