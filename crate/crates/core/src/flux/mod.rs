//! Physical flux models and global Lax–Friedrichs splitting.

mod eigen;

pub use eigen::{eigensystem, from_characteristic, to_characteristic, EigenSystem};

use thiserror::Error;

/// Largest number of conserved components of any model (2D Euler).
pub const MAX_VARS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FluxError {
    #[error("non-admissible state: density {density}, pressure {pressure}")]
    Inadmissible { density: f64, pressure: f64 },
    #[error("no states to take the maximum wave speed over")]
    EmptyStates,
    #[error("{model} has no flux along the {axis:?} axis")]
    UnsupportedAxis { model: &'static str, axis: Axis },
    #[error("ratio of specific heats must exceed 1, got {0}")]
    Gamma(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Fixed-capacity vector of conserved (or characteristic) components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedState {
    len: usize,
    values: [f64; MAX_VARS],
}

impl ConservedState {
    pub fn new(values: &[f64]) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&values.len()),
            "state must have 1..={MAX_VARS} components"
        );
        let mut v = [0.0; MAX_VARS];
        v[..values.len()].copy_from_slice(values);
        ConservedState {
            len: values.len(),
            values: v,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(&[0.0; MAX_VARS][..len])
    }

    pub fn scalar(u: f64) -> Self {
        Self::new(&[u])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.len]
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values[..self.len]
    }
}

impl std::ops::Deref for ConservedState {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        self.as_slice()
    }
}

impl std::ops::DerefMut for ConservedState {
    fn deref_mut(&mut self) -> &mut [f64] {
        self.as_mut_slice()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FluxModel {
    /// `f(u) = a u` along every axis.
    Advection { speed: f64 },
    /// `f(u) = u^2 / 2`.
    Burgers,
    /// `(rho, rho u, E)`.
    Euler1d { gamma: f64 },
    /// `(rho, rho u, rho v, E)`.
    Euler2d { gamma: f64 },
}

pub const DEFAULT_GAMMA: f64 = 1.4;

impl FluxModel {
    pub fn name(&self) -> &'static str {
        match self {
            FluxModel::Advection { .. } => "advection",
            FluxModel::Burgers => "burgers",
            FluxModel::Euler1d { .. } => "euler1d",
            FluxModel::Euler2d { .. } => "euler2d",
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            FluxModel::Advection { .. } | FluxModel::Burgers => 1,
            FluxModel::Euler1d { .. } => 3,
            FluxModel::Euler2d { .. } => 4,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.num_vars() == 1
    }

    /// Ratio of specific heats for the Euler models.
    pub fn gamma(&self) -> Option<f64> {
        match *self {
            FluxModel::Euler1d { gamma } | FluxModel::Euler2d { gamma } => Some(gamma),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), FluxError> {
        match self.gamma() {
            Some(g) if !(g > 1.0) => Err(FluxError::Gamma(g)),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_axis(&self, axis: Axis) -> Result<(), FluxError> {
        match (self, axis) {
            (FluxModel::Euler1d { .. } | FluxModel::Burgers, Axis::Y) => {
                Err(FluxError::UnsupportedAxis {
                    model: self.name(),
                    axis,
                })
            }
            _ => Ok(()),
        }
    }

    /// Pressure of an Euler state; `None` for scalar models.
    pub fn pressure(&self, u: &[f64]) -> Option<f64> {
        match *self {
            FluxModel::Euler1d { gamma } => {
                Some((gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]))
            }
            FluxModel::Euler2d { gamma } => Some(
                (gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]),
            ),
            _ => None,
        }
    }

    /// Checks `rho > 0` and `p > 0` for Euler states (always fine for
    /// scalar models apart from non-finite values).
    pub fn check_admissible(&self, u: &[f64]) -> Result<(), FluxError> {
        match self.pressure(u) {
            Some(p) if !(u[0] > 0.0 && p > 0.0 && u.iter().all(|x| x.is_finite())) => {
                Err(FluxError::Inadmissible {
                    density: u[0],
                    pressure: p,
                })
            }
            None if !u[0].is_finite() => Err(FluxError::Inadmissible {
                density: f64::NAN,
                pressure: f64::NAN,
            }),
            _ => Ok(()),
        }
    }

    /// Conserved state from primitives: `u` for scalars, `(rho, u, p)` or
    /// `(rho, u, v, p)` for Euler.
    pub fn from_primitive(&self, prim: &[f64]) -> ConservedState {
        assert_eq!(prim.len(), self.num_vars());
        match *self {
            FluxModel::Euler1d { gamma } => {
                let (rho, u, p) = (prim[0], prim[1], prim[2]);
                ConservedState::new(&[rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u])
            }
            FluxModel::Euler2d { gamma } => {
                let (rho, u, v, p) = (prim[0], prim[1], prim[2], prim[3]);
                ConservedState::new(&[
                    rho,
                    rho * u,
                    rho * v,
                    p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v),
                ])
            }
            _ => ConservedState::new(prim),
        }
    }

    /// Inverse of [`FluxModel::from_primitive`].
    pub fn to_primitive(&self, u: &[f64]) -> ConservedState {
        match *self {
            FluxModel::Euler1d { .. } => {
                ConservedState::new(&[u[0], u[1] / u[0], self.pressure(u).unwrap()])
            }
            FluxModel::Euler2d { .. } => ConservedState::new(&[
                u[0],
                u[1] / u[0],
                u[2] / u[0],
                self.pressure(u).unwrap(),
            ]),
            _ => ConservedState::new(u),
        }
    }

    /// Writes the flux along `axis` into `out`.
    pub fn physical_flux_into(
        &self,
        u: &[f64],
        axis: Axis,
        out: &mut [f64],
    ) -> Result<(), FluxError> {
        match *self {
            FluxModel::Advection { speed } => out[0] = speed * u[0],
            FluxModel::Burgers => {
                self.check_axis(axis)?;
                out[0] = 0.5 * u[0] * u[0];
            }
            FluxModel::Euler1d { .. } => {
                self.check_axis(axis)?;
                self.check_admissible(u)?;
                let p = self.pressure(u).unwrap();
                let vel = u[1] / u[0];
                out[0] = u[1];
                out[1] = u[1] * vel + p;
                out[2] = vel * (u[2] + p);
            }
            FluxModel::Euler2d { .. } => {
                self.check_admissible(u)?;
                let p = self.pressure(u).unwrap();
                let (n, t) = normal_tangential(axis);
                let un = u[n] / u[0];
                out[0] = u[n];
                out[n] = u[n] * un + p;
                out[t] = u[t] * un;
                out[3] = un * (u[3] + p);
            }
        }
        Ok(())
    }

    pub fn physical_flux(&self, state: &[f64], axis: Axis) -> Result<ConservedState, FluxError> {
        let mut out = ConservedState::zeros(self.num_vars());
        self.physical_flux_into(state, axis, &mut out)?;
        Ok(out)
    }

    /// Eigenvalues of the flux Jacobian along `axis`, in characteristic
    /// field order.
    pub fn wave_speeds(&self, u: &[f64], axis: Axis) -> Result<ConservedState, FluxError> {
        match *self {
            FluxModel::Advection { speed } => Ok(ConservedState::scalar(speed)),
            FluxModel::Burgers => {
                self.check_axis(axis)?;
                Ok(ConservedState::scalar(u[0]))
            }
            FluxModel::Euler1d { gamma } => {
                self.check_axis(axis)?;
                self.check_admissible(u)?;
                let vel = u[1] / u[0];
                let c = (gamma * self.pressure(u).unwrap() / u[0]).sqrt();
                Ok(ConservedState::new(&[vel - c, vel, vel + c]))
            }
            FluxModel::Euler2d { gamma } => {
                self.check_admissible(u)?;
                let (n, _) = normal_tangential(axis);
                let un = u[n] / u[0];
                let c = (gamma * self.pressure(u).unwrap() / u[0]).sqrt();
                Ok(ConservedState::new(&[un - c, un, un, un + c]))
            }
        }
    }

    /// Largest `|lambda|` at one state.
    pub fn spectral_radius(&self, u: &[f64], axis: Axis) -> Result<f64, FluxError> {
        Ok(self
            .wave_speeds(u, axis)?
            .iter()
            .fold(0.0_f64, |m, l| m.max(l.abs())))
    }
}

/// Momentum component indices `(normal, tangential)` for 2D Euler.
pub(crate) fn normal_tangential(axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 1),
    }
}

/// Splitting speeds, one per characteristic field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitAlpha(pub ConservedState);

impl SplitAlpha {
    pub fn values(&self) -> &[f64] {
        self.0.as_slice()
    }

    /// Field-wise maximum, used to combine partial scans in any order.
    pub fn max(self, other: SplitAlpha) -> SplitAlpha {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(other.values()) {
            *a = a.max(*b);
        }
        SplitAlpha(out)
    }

    /// Largest speed over all fields.
    pub fn spectral(&self) -> f64 {
        self.values().iter().fold(0.0_f64, |m, a| m.max(*a))
    }
}

/// Per-field maximum of `|lambda_k|` over `states`.
pub fn global_alpha<'a, I>(model: &FluxModel, states: I, axis: Axis) -> Result<SplitAlpha, FluxError>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut alpha: Option<ConservedState> = None;
    for u in states {
        let speeds = model.wave_speeds(u, axis)?;
        let acc = alpha.get_or_insert_with(|| ConservedState::zeros(speeds.len()));
        for (a, l) in acc.iter_mut().zip(speeds.iter()) {
            *a = a.max(l.abs());
        }
    }
    alpha.map(SplitAlpha).ok_or(FluxError::EmptyStates)
}

/// Global Lax–Friedrichs split of one component: `(f + a q)/2, (f - a q)/2`.
#[inline]
pub fn lf_split(flux: f64, q: f64, alpha: f64) -> (f64, f64) {
    let aq = alpha * q;
    (0.5 * (flux + aq), 0.5 * (flux - aq))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER1: FluxModel = FluxModel::Euler1d { gamma: 1.4 };

    #[test]
    fn flux_examples() {
        let adv = FluxModel::Advection { speed: 1.0 };
        assert_eq!(adv.physical_flux(&[3.0], Axis::X).unwrap()[0], 3.0);
        assert_eq!(FluxModel::Burgers.physical_flux(&[2.0], Axis::X).unwrap()[0], 2.0);
        let u = EULER1.from_primitive(&[1.0, 0.0, 1.0]);
        assert_eq!(&u[..2], &[1.0, 0.0]);
        assert!((u[2] - 2.5).abs() < 1e-15);
        let f = EULER1.physical_flux(&u, Axis::X).unwrap();
        assert!((f[0]).abs() < 1e-15 && (f[1] - 1.0).abs() < 1e-15 && f[2].abs() < 1e-15);
    }

    #[test]
    fn inadmissible_state_is_rejected() {
        let err = EULER1.physical_flux(&[1.0, 0.0, -1.0], Axis::X).unwrap_err();
        assert!(matches!(err, FluxError::Inadmissible { .. }));
        let err = EULER1.physical_flux(&[-1.0, 0.0, 1.0], Axis::X).unwrap_err();
        assert!(matches!(err, FluxError::Inadmissible { .. }));
        assert!(EULER1.physical_flux(&[1.0, 0.0, 2.5], Axis::Y).is_err());
    }

    #[test]
    fn alpha_examples() {
        let states: Vec<[f64; 1]> = vec![[1.0], [-5.0], [0.2]];
        let a = global_alpha(
            &FluxModel::Advection { speed: -2.0 },
            states.iter().map(|s| &s[..]),
            Axis::X,
        )
        .unwrap();
        assert_eq!(a.values(), &[2.0]);
        let states: Vec<[f64; 1]> = vec![[-1.0], [0.5], [3.0], [2.0]];
        let a = global_alpha(&FluxModel::Burgers, states.iter().map(|s| &s[..]), Axis::X).unwrap();
        assert_eq!(a.values(), &[3.0]);
        let empty: Vec<&[f64]> = vec![];
        assert_eq!(
            global_alpha(&FluxModel::Burgers, empty, Axis::X),
            Err(FluxError::EmptyStates)
        );
    }

    #[test]
    fn split_examples() {
        assert_eq!(lf_split(0.7, 0.7, 1.0), (0.7, 0.0));
        let (p, m) = lf_split(3.0, 2.0, 5.0);
        assert_eq!((p, m), (6.5, -3.5));
        assert_eq!(p + m, 3.0);
    }

    #[test]
    fn burgers_split_is_sign_definite() {
        let alpha = 1.0;
        let h = 1e-6;
        for i in 0..100 {
            let u = -1.0 + 2.0 * i as f64 / 99.0;
            let split = |u: f64| lf_split(0.5 * u * u, u, alpha);
            let (pp, mp) = split((u + h).min(1.0));
            let (pm, mm) = split((u - h).max(-1.0));
            assert!(pp - pm >= -1e-15, "df+/du < 0 at u = {u}");
            assert!(mp - mm <= 1e-15, "df-/du > 0 at u = {u}");
        }
    }

    #[test]
    fn primitive_roundtrip() {
        let m = FluxModel::Euler2d { gamma: 1.4 };
        let prim = [1.3, -0.4, 2.2, 0.9];
        let back = m.to_primitive(&m.from_primitive(&prim));
        for (a, b) in back.iter().zip(prim) {
            assert!((a - b).abs() <= 1e-13 * b.abs());
        }
    }
}
