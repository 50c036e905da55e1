//! Double Mach reflection set-up: a Mach 10 shock meeting a reflecting wall
//! at 60 degrees.

use crate::flux::{ConservedState, FluxModel};
use crate::solver::{BoundaryCondition, BoundarySpec, ShockTrace};

/// State behind a normal shock running into gas at rest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShockJump {
    pub density: f64,
    pub pressure: f64,
    /// Lab-frame gas speed behind the shock, along the shock normal.
    pub velocity: f64,
    /// Shock propagation speed.
    pub speed: f64,
}

/// Post-shock state for a shock of Mach number `mach` moving into gas with
/// density `rho` and pressure `p` at rest.
pub fn normal_shock(gamma: f64, mach: f64, rho: f64, p: f64) -> ShockJump {
    let m2 = mach * mach;
    let density = rho * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    let pressure = p * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
    let speed = mach * (gamma * p / rho).sqrt();
    ShockJump {
        density,
        pressure,
        velocity: speed * (1.0 - rho / density),
        speed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DmrSetup {
    pub gamma: f64,
    pub mach: f64,
    /// Angle between the shock and the wall, radians.
    pub angle: f64,
    /// Where the shock meets the wall at `t = 0`.
    pub x0: f64,
    pub pre_density: f64,
    pub pre_pressure: f64,
}

impl Default for DmrSetup {
    fn default() -> Self {
        DmrSetup {
            gamma: 1.4,
            mach: 10.0,
            angle: std::f64::consts::FRAC_PI_3,
            x0: 1.0 / 6.0,
            pre_density: 1.4,
            pre_pressure: 1.0,
        }
    }
}

impl DmrSetup {
    pub fn model(&self) -> FluxModel {
        FluxModel::Euler2d { gamma: self.gamma }
    }

    pub fn jump(&self) -> ShockJump {
        normal_shock(self.gamma, self.mach, self.pre_density, self.pre_pressure)
    }

    /// `(rho, u, v, p)` ahead of the shock.
    pub fn pre_primitive(&self) -> [f64; 4] {
        [self.pre_density, 0.0, 0.0, self.pre_pressure]
    }

    /// `(rho, u, v, p)` behind the shock; the gas moves along the shock
    /// normal, which points down-right.
    pub fn post_primitive(&self) -> [f64; 4] {
        let j = self.jump();
        [
            j.density,
            j.velocity * self.angle.sin(),
            -j.velocity * self.angle.cos(),
            j.pressure,
        ]
    }

    pub fn pre_state(&self) -> ConservedState {
        self.model().from_primitive(&self.pre_primitive())
    }

    pub fn post_state(&self) -> ConservedState {
        self.model().from_primitive(&self.post_primitive())
    }

    pub fn trace(&self) -> ShockTrace {
        ShockTrace {
            x0: self.x0,
            angle: self.angle,
            speed: self.jump().speed,
        }
    }

    pub fn initial(&self, x: f64, y: f64) -> ConservedState {
        if x < self.trace().x_at(y, 0.0) {
            self.post_state()
        } else {
            self.pre_state()
        }
    }

    /// Inflow on the left, outflow on the right, post-shock inflow then a
    /// reflecting wall along the bottom, and the moving shock on top.
    pub fn boundaries(&self) -> BoundarySpec {
        BoundarySpec {
            left: BoundaryCondition::Dirichlet(self.post_state()),
            right: BoundaryCondition::Outflow,
            bottom: BoundaryCondition::DmrBottom {
                x_split: self.x0,
                post: self.post_state(),
            },
            top: BoundaryCondition::DmrTop {
                trace: self.trace(),
                pre: self.pre_state(),
                post: self.post_state(),
            },
        }
    }
}
