//! Scalar initial profiles on `[-1, 1]`.

use std::f64::consts::PI;

pub fn sine(x: f64) -> f64 {
    (PI * x).sin()
}

// Composite profile constants: Gaussians around z, half ellipses around a.
const A: f64 = 0.5;
const Z: f64 = -0.7;
const DELTA: f64 = 0.005;
const ALPHA: f64 = 10.0;

fn beta() -> f64 {
    std::f64::consts::LN_2 / (36.0 * DELTA * DELTA)
}

fn gaussian(x: f64, z: f64) -> f64 {
    (-beta() * (x - z) * (x - z)).exp()
}

fn ellipse(x: f64, a: f64) -> f64 {
    (1.0 - ALPHA * ALPHA * (x - a) * (x - a)).max(0.0).sqrt()
}

/// Smooth Gaussian bump, square wave, triangle and half ellipse, left to
/// right, on a zero background.
pub fn composite(x: f64) -> f64 {
    if (-0.8..=-0.6).contains(&x) {
        (gaussian(x, Z - DELTA) + gaussian(x, Z + DELTA) + 4.0 * gaussian(x, Z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (ellipse(x, A - DELTA) + ellipse(x, A + DELTA) + 4.0 * ellipse(x, A)) / 6.0
    } else {
        0.0
    }
}
