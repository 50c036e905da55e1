//! Ghost-cell boundary conditions.

use crate::flux::{Axis, ConservedState};

use super::grid::{FieldArray, Grid};
use super::SolverError;

/// Straight shock line moving at constant speed along its normal.
///
/// At `t = 0` it passes through `(x0, 0)` inclined at `angle` (radians) to
/// the x-axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShockTrace {
    pub x0: f64,
    pub angle: f64,
    /// Normal propagation speed.
    pub speed: f64,
}

impl ShockTrace {
    /// x-position of the shock at height `y` and time `t`.
    pub fn x_at(&self, y: f64, t: f64) -> f64 {
        self.x0 + y / self.angle.tan() + self.speed * t / self.angle.sin()
    }

    /// Horizontal speed of the trace along any line `y = const`.
    pub fn x_speed(&self) -> f64 {
        self.speed / self.angle.sin()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-gradient outflow.
    Outflow,
    /// Mirror with the wall-normal momentum negated.
    Reflecting,
    Dirichlet(ConservedState),
    /// Bottom wall that is a fixed inflow state for `x < x_split` and a
    /// reflecting wall beyond.
    DmrBottom { x_split: f64, post: ConservedState },
    /// Top boundary following a moving shock: `post` left of the trace,
    /// `pre` right of it.
    DmrTop {
        trace: ShockTrace,
        pre: ConservedState,
        post: ConservedState,
    },
}

/// One condition per side. `bottom` and `top` are ignored on 1D grids.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySpec {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
    pub bottom: BoundaryCondition,
    pub top: BoundaryCondition,
}

impl BoundarySpec {
    pub fn uniform(bc: BoundaryCondition) -> Self {
        BoundarySpec {
            left: bc.clone(),
            right: bc.clone(),
            bottom: bc.clone(),
            top: bc,
        }
    }

    pub fn periodic() -> Self {
        Self::uniform(BoundaryCondition::Periodic)
    }

    pub fn outflow() -> Self {
        Self::uniform(BoundaryCondition::Outflow)
    }

    pub fn validate(&self, grid: &Grid) -> Result<(), SolverError> {
        let mut pairs = vec![("left/right", &self.left, &self.right)];
        if grid.dim() == 2 {
            pairs.push(("bottom/top", &self.bottom, &self.top));
        }
        for (name, a, b) in pairs {
            let pa = matches!(a, BoundaryCondition::Periodic);
            let pb = matches!(b, BoundaryCondition::Periodic);
            if pa != pb {
                return Err(SolverError::Config(format!(
                    "periodic boundary on {name} must be paired with periodic"
                )));
            }
        }
        Ok(())
    }
}

/// Index of the momentum component normal to a wall across `axis`.
fn normal_momentum(m: usize, axis: Axis) -> Option<usize> {
    match (m, axis) {
        (3, Axis::X) => Some(1),
        (4, Axis::X) => Some(1),
        (4, Axis::Y) => Some(2),
        _ => None,
    }
}

#[derive(Clone, Copy)]
enum Side {
    Low,
    High,
}

/// Fills every ghost cell that a grid-line sweep reads: x-ghosts of the
/// interior rows and y-ghosts of the interior columns.
pub fn apply_boundaries(field: &mut FieldArray, bc: &BoundarySpec, grid: &Grid, t: f64) {
    fill_axis(field, grid, Axis::X, Side::Low, &bc.left, t);
    fill_axis(field, grid, Axis::X, Side::High, &bc.right, t);
    if grid.dim() == 2 {
        fill_axis(field, grid, Axis::Y, Side::Low, &bc.bottom, t);
        fill_axis(field, grid, Axis::Y, Side::High, &bc.top, t);
    }
}

fn fill_axis(
    field: &mut FieldArray,
    grid: &Grid,
    axis: Axis,
    side: Side,
    bc: &BoundaryCondition,
    t: f64,
) {
    let m = field.num_vars();
    let n = grid.n(axis) as isize;
    let g = grid.ghost(axis) as isize;
    let (nx, ny) = field.shape();
    let lines = match axis {
        Axis::X => ny,
        Axis::Y => nx,
    } as isize;
    // (ghost index, mirror index, periodic source, nearest interior)
    let at = |l: isize, along: isize| match axis {
        Axis::X => (along, l),
        Axis::Y => (l, along),
    };
    let mut tmp = [0.0; crate::flux::MAX_VARS];
    for l in 0..lines {
        for k in 1..=g {
            let (ghost, mirror, wrap, edge) = match side {
                Side::Low => (-k, k - 1, n - k, 0),
                Side::High => (n - 1 + k, n - k, k - 1, n - 1),
            };
            let (gi, gj) = at(l, ghost);
            let src = match bc {
                BoundaryCondition::Periodic => Some(at(l, wrap)),
                BoundaryCondition::Outflow => Some(at(l, edge)),
                _ => None,
            };
            if let Some((si, sj)) = src {
                tmp[..m].copy_from_slice(field.cell(si, sj));
                field.cell_mut(gi, gj).copy_from_slice(&tmp[..m]);
                continue;
            }
            let x = grid.center(Axis::X, gi);
            let y = grid.center(Axis::Y, gj);
            let reflect = |field: &mut FieldArray| {
                let (mi, mj) = at(l, mirror);
                let mut s = [0.0; crate::flux::MAX_VARS];
                s[..m].copy_from_slice(field.cell(mi, mj));
                if let Some(c) = normal_momentum(m, axis) {
                    s[c] = -s[c];
                }
                field.cell_mut(gi, gj).copy_from_slice(&s[..m]);
            };
            match bc {
                BoundaryCondition::Reflecting => reflect(field),
                BoundaryCondition::Dirichlet(s) => field.cell_mut(gi, gj).copy_from_slice(s),
                BoundaryCondition::DmrBottom { x_split, post } => {
                    if x < *x_split {
                        field.cell_mut(gi, gj).copy_from_slice(post);
                    } else {
                        reflect(field);
                    }
                }
                BoundaryCondition::DmrTop { trace, pre, post } => {
                    let s = if x < trace.x_at(y, t) { post } else { pre };
                    field.cell_mut(gi, gj).copy_from_slice(s);
                }
                BoundaryCondition::Periodic | BoundaryCondition::Outflow => unreachable!(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_wraps() {
        let g = Grid::line(8, 0.0, 1.0).unwrap();
        let mut f = FieldArray::from_fn(&g, 1, |x, _| ConservedState::scalar(x));
        apply_boundaries(&mut f, &BoundarySpec::periodic(), &g, 0.0);
        for k in 1..=3isize {
            assert_eq!(f.cell(-k, 0), f.cell(8 - k, 0));
            assert_eq!(f.cell(7 + k, 0), f.cell(k - 1, 0));
        }
    }

    #[test]
    fn outflow_copies_edge() {
        let g = Grid::line(5, 0.0, 1.0).unwrap();
        let mut f = FieldArray::from_fn(&g, 1, |x, _| ConservedState::scalar(x));
        apply_boundaries(&mut f, &BoundarySpec::outflow(), &g, 0.0);
        assert_eq!(f.cell(-3, 0), f.cell(0, 0));
        assert_eq!(f.cell(7, 0), f.cell(4, 0));
    }

    #[test]
    fn reflecting_wall_negates_normal_momentum() {
        let g = Grid::plane(3, 4, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let mut f = FieldArray::from_fn(&g, 4, |x, y| ConservedState::new(&[1.0 + x, x, y + 0.1, 3.0 + y]));
        let mut bc = BoundarySpec::outflow();
        bc.bottom = BoundaryCondition::Reflecting;
        apply_boundaries(&mut f, &bc, &g, 0.0);
        for i in 0..3 {
            for k in 1..=3isize {
                let inner = f.state(i, k - 1);
                let ghost = f.state(i, -k);
                assert_eq!(ghost.as_slice(), &[inner[0], inner[1], -inner[2], inner[3]]);
            }
        }
    }

    #[test]
    fn dmr_top_follows_trace() {
        let trace = ShockTrace {
            x0: 1.0 / 6.0,
            angle: std::f64::consts::FRAC_PI_3,
            speed: 10.0,
        };
        let pre = ConservedState::new(&[1.4, 0.0, 0.0, 2.5]);
        let post = ConservedState::new(&[8.0, 57.0, -33.0, 563.5]);
        let g = Grid::plane(40, 10, (0.0, 4.0), (0.0, 1.0)).unwrap();
        let mut f = FieldArray::zeros(&g, 4);
        let mut bc = BoundarySpec::outflow();
        bc.top = BoundaryCondition::DmrTop { trace, pre, post };
        let t = 0.2;
        apply_boundaries(&mut f, &bc, &g, t);
        for i in 0..40isize {
            for j in 10..13isize {
                let x = g.center(Axis::X, i);
                let y = g.center(Axis::Y, j);
                let xs = 1.0 / 6.0 + (y + 20.0 * t) / 3f64.sqrt();
                let expect = if x < xs { &post } else { &pre };
                assert_eq!(f.cell(i, j), expect.as_slice());
            }
        }
    }

    #[test]
    fn unpaired_periodic_is_rejected() {
        let g = Grid::line(4, 0.0, 1.0).unwrap();
        let mut bc = BoundarySpec::periodic();
        bc.right = BoundaryCondition::Outflow;
        assert!(bc.validate(&g).is_err());
    }
}
