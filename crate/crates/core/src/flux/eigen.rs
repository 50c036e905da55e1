use super::{normal_tangential, Axis, ConservedState, FluxError, FluxModel, MAX_VARS};

type Matrix = [[f64; MAX_VARS]; MAX_VARS];

/// Eigen-decomposition of the flux Jacobian at an interface.
///
/// Rows of `left` are left eigenvectors, columns of `right` are right
/// eigenvectors, normalized so that `left * right = I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub axis: Axis,
    pub m: usize,
    pub eigenvalues: [f64; MAX_VARS],
    pub left: Matrix,
    pub right: Matrix,
}

impl EigenSystem {
    fn identity(axis: Axis, lambda: f64) -> Self {
        let mut id = [[0.0; MAX_VARS]; MAX_VARS];
        id[0][0] = 1.0;
        let mut eigenvalues = [0.0; MAX_VARS];
        eigenvalues[0] = lambda;
        EigenSystem {
            axis,
            m: 1,
            eigenvalues,
            left: id,
            right: id,
        }
    }

    /// `left * v`
    #[inline]
    pub fn to_characteristic(&self, v: &[f64]) -> [f64; MAX_VARS] {
        mat_vec(&self.left, v, self.m)
    }

    /// `right * w`
    #[inline]
    pub fn from_characteristic(&self, w: &[f64]) -> [f64; MAX_VARS] {
        mat_vec(&self.right, w, self.m)
    }
}

#[inline]
fn mat_vec(a: &Matrix, v: &[f64], m: usize) -> [f64; MAX_VARS] {
    let mut out = [0.0; MAX_VARS];
    for (o, row) in out.iter_mut().zip(a).take(m) {
        *o = row[..m].iter().zip(v).map(|(x, y)| x * y).sum();
    }
    out
}

pub fn to_characteristic(es: &EigenSystem, v: &[f64]) -> ConservedState {
    ConservedState::new(&es.to_characteristic(v)[..es.m])
}

pub fn from_characteristic(es: &EigenSystem, w: &[f64]) -> ConservedState {
    ConservedState::new(&es.from_characteristic(w)[..es.m])
}

/// Eigensystem of the Jacobian along `axis` at the arithmetic mean of the
/// two neighboring states.
pub fn eigensystem(
    model: &FluxModel,
    left: &[f64],
    right: &[f64],
    axis: Axis,
) -> Result<EigenSystem, FluxError> {
    let m = model.num_vars();
    let mut avg = [0.0; MAX_VARS];
    for k in 0..m {
        avg[k] = 0.5 * (left[k] + right[k]);
    }
    let avg = &avg[..m];
    match *model {
        FluxModel::Advection { speed } => Ok(EigenSystem::identity(axis, speed)),
        FluxModel::Burgers => {
            model.check_axis(axis)?;
            Ok(EigenSystem::identity(axis, avg[0]))
        }
        FluxModel::Euler1d { gamma } => {
            model.check_axis(axis)?;
            model.check_admissible(avg)?;
            Ok(euler1d(gamma, avg, model.pressure(avg).unwrap(), axis))
        }
        FluxModel::Euler2d { gamma } => {
            model.check_admissible(avg)?;
            Ok(euler2d(gamma, avg, model.pressure(avg).unwrap(), axis))
        }
    }
}

fn euler1d(gamma: f64, u: &[f64], p: f64, axis: Axis) -> EigenSystem {
    let rho = u[0];
    let vel = u[1] / rho;
    let c = (gamma * p / rho).sqrt();
    let h = (u[2] + p) / rho;
    let b1 = (gamma - 1.0) / (c * c);
    let b2 = 0.5 * vel * vel * b1;
    let inv_c = 1.0 / c;

    let mut right = [[0.0; MAX_VARS]; MAX_VARS];
    let cols = [
        [1.0, vel - c, h - vel * c],
        [1.0, vel, 0.5 * vel * vel],
        [1.0, vel + c, h + vel * c],
    ];
    for (k, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            right[r][k] = *x;
        }
    }
    let mut left = [[0.0; MAX_VARS]; MAX_VARS];
    left[0][..3].copy_from_slice(&[
        0.5 * (b2 + vel * inv_c),
        -0.5 * (b1 * vel + inv_c),
        0.5 * b1,
    ]);
    left[1][..3].copy_from_slice(&[1.0 - b2, b1 * vel, -b1]);
    left[2][..3].copy_from_slice(&[
        0.5 * (b2 - vel * inv_c),
        -0.5 * (b1 * vel - inv_c),
        0.5 * b1,
    ]);
    EigenSystem {
        axis,
        m: 3,
        eigenvalues: [vel - c, vel, vel + c, 0.0],
        left,
        right,
    }
}

fn euler2d(gamma: f64, u: &[f64], p: f64, axis: Axis) -> EigenSystem {
    let (n, t) = normal_tangential(axis);
    let rho = u[0];
    let un = u[n] / rho;
    let ut = u[t] / rho;
    let q2 = un * un + ut * ut;
    let c = (gamma * p / rho).sqrt();
    let h = (u[3] + p) / rho;
    let b1 = (gamma - 1.0) / (c * c);
    let b2 = 0.5 * q2 * b1;
    let inv_c = 1.0 / c;

    // vectors written in (rho, m_n, m_t, E) order, scattered to (rho, m_x, m_y, E)
    let place = |v: [f64; 4]| {
        let mut out = [0.0; MAX_VARS];
        out[0] = v[0];
        out[n] = v[1];
        out[t] = v[2];
        out[3] = v[3];
        out
    };
    let cols = [
        place([1.0, un - c, ut, h - un * c]),
        place([1.0, un, ut, 0.5 * q2]),
        place([0.0, 0.0, 1.0, ut]),
        place([1.0, un + c, ut, h + un * c]),
    ];
    let mut right = [[0.0; MAX_VARS]; MAX_VARS];
    for (k, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            right[r][k] = *x;
        }
    }
    let left = [
        place([
            0.5 * (b2 + un * inv_c),
            -0.5 * (b1 * un + inv_c),
            -0.5 * b1 * ut,
            0.5 * b1,
        ]),
        place([1.0 - b2, b1 * un, b1 * ut, -b1]),
        place([-ut, 0.0, 1.0, 0.0]),
        place([
            0.5 * (b2 - un * inv_c),
            -0.5 * (b1 * un - inv_c),
            -0.5 * b1 * ut,
            0.5 * b1,
        ]),
    ];
    EigenSystem {
        axis,
        m: 4,
        eigenvalues: [un - c, un, un, un + c],
        left,
        right,
    }
}
