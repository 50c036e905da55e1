//! Adaptive-order WENO reconstruction on a five-point window.
//!
//! A window holds split-flux point values `f_{i-2}..f_{i+2}`. From it we fit
//! one quartic on the full stencil and three quadratics on the 3-point
//! sub-stencils, measure the smoothness of each, and blend them with
//! nonlinear weights. Two blends are available:
//!
//! * [`Variant::Ao`]: the original adaptive-order combination, which
//!   subtracts the linearly weighted quadratics from the quartic so that
//!   linear weights recover the quartic exactly.
//! * [`Variant::Aoa`]: a plain convex combination of all four polynomials.
//!   Sub-stencil weights vanish in smooth regions instead of tending to
//!   their linear values.
//!
//! Every kernel here is a pure function of its arguments.

pub mod tables;

use thiserror::Error;

use self::tables::{BASIS_AT_RIGHT, BETA_FORM};

/// Weights above this are rescaled before normalization.
const RESCALE_THRESHOLD: f64 = 1e150;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconError {
    #[error("linear weight {name} = {value} must lie in (0, 1)")]
    LinearWeight { name: &'static str, value: f64 },
    #[error("epsilon must be positive and finite, got {0}")]
    Epsilon(f64),
}

/// Five consecutive point values along a grid line, centered on cell `i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconWindow(pub [f64; 5]);

impl ReconWindow {
    pub fn new(values: [f64; 5]) -> Self {
        debug_assert!(
            values.iter().all(|v| v.is_finite()),
            "non-finite reconstruction window {values:?}"
        );
        ReconWindow(values)
    }

    pub fn values(&self) -> &[f64; 5] {
        &self.0
    }

    /// Mirror image about the center cell. Reconstructing the reversed
    /// window at `xi = +1/2` gives the left-interface value of the original.
    pub fn reversed(&self) -> Self {
        let v = self.0;
        ReconWindow([v[4], v[3], v[2], v[1], v[0]])
    }
}

/// Value of the `k`-th scaled Legendre basis function at `xi`.
pub fn legendre_basis(k: usize, xi: f64) -> f64 {
    let x2 = xi * xi;
    match k {
        0 => 1.0,
        1 => xi,
        2 => x2 - 1.0 / 12.0,
        3 => xi * (x2 - 3.0 / 20.0),
        4 => x2 * x2 - 3.0 / 14.0 * x2 + 3.0 / 560.0,
        _ => panic!("Legendre basis index {k} out of range"),
    }
}

/// Polynomial of degree at most four on the reference cell, in the scaled
/// Legendre basis. Unused trailing coefficients are kept at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegendreCoeffs {
    degree: usize,
    coeffs: [f64; 5],
}

impl LegendreCoeffs {
    /// Builds a polynomial from `degree + 1` coefficients.
    ///
    /// Panics if `coeffs` is empty or longer than five.
    pub fn new(coeffs: &[f64]) -> Self {
        assert!(
            (1..=5).contains(&coeffs.len()),
            "expected 1..=5 Legendre coefficients, got {}",
            coeffs.len()
        );
        let mut padded = [0.0; 5];
        padded[..coeffs.len()].copy_from_slice(coeffs);
        LegendreCoeffs {
            degree: coeffs.len() - 1,
            coeffs: padded,
        }
    }

    #[inline]
    fn from_padded(degree: usize, coeffs: [f64; 5]) -> Self {
        LegendreCoeffs { degree, coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(&[c])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.degree]
    }

    /// Coefficients padded with zeros up to degree four.
    pub fn padded(&self) -> &[f64; 5] {
        &self.coeffs
    }

    /// Average of the polynomial over the reference cell.
    pub fn cell_average(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn evaluate_at(&self, xi: f64) -> f64 {
        evaluate_at(self, xi)
    }
}

/// Evaluates `poly` at reference coordinate `xi`, `|xi| <= 1/2`.
pub fn evaluate_at(poly: &LegendreCoeffs, xi: f64) -> f64 {
    debug_assert!(xi.abs() <= 0.5, "xi = {xi} outside the reference cell");
    if xi == 0.5 {
        return value_at_right(poly);
    }
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| a * legendre_basis(k, xi))
        .sum()
}

#[inline]
fn value_at_right(poly: &LegendreCoeffs) -> f64 {
    let [a0, a1, a2, a3, a4] = poly.coeffs;
    let b = BASIS_AT_RIGHT;
    a0 + b[1] * a1 + b[2] * a2 + b[3] * a3 + b[4] * a4
}

/// The candidate polynomials built from one window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidates {
    /// Quartic on the full five-cell stencil.
    pub optimal: LegendreCoeffs,
    /// Quadratics on `{i-2,i-1,i}`, `{i-1,i,i+1}`, `{i,i+1,i+2}`.
    pub subs: [LegendreCoeffs; 3],
}

/// Fits the quartic and the three sub-stencil quadratics whose cell averages
/// match the window values.
#[inline]
pub fn project_to_legendre(window: &ReconWindow) -> Candidates {
    // Factored form of `tables::OPTIMAL_FIT` / `tables::SUB_FIT`: every
    // higher coefficient is built from undivided differences, so constant
    // and exactly sampled linear data give exact zeros.
    let [f0, f1, f2, f3, f4] = window.0;
    let left2 = f0 - 2.0 * f1 + f2;
    let mid2 = f1 - 2.0 * f2 + f3;
    let right2 = f2 - 2.0 * f3 + f4;
    let odd3 = (f4 - 2.0 * f3) + (2.0 * f1 - f0);
    let even4 = left2 - 2.0 * mid2 + right2;
    let central = 0.5 * (f3 - f1);

    let optimal = LegendreCoeffs::from_padded(
        4,
        [
            f2,
            central - 11.0 / 120.0 * odd3,
            0.5 * mid2 - 3.0 / 56.0 * even4,
            odd3 * (1.0 / 12.0),
            even4 * (1.0 / 24.0),
        ],
    );
    let quadratic = |a1: f64, a2: f64| LegendreCoeffs::from_padded(2, [f2, a1, a2, 0.0, 0.0]);
    let subs = [
        quadratic((f2 - f1) + 0.5 * left2, 0.5 * left2),
        quadratic(central, 0.5 * mid2),
        quadratic((f3 - f2) - 0.5 * right2, 0.5 * right2),
    ];
    Candidates { optimal, subs }
}

/// Smoothness indicator: the sum over derivative orders of the squared
/// derivative integrated over the cell, in undivided (reference-cell) form.
/// Zero exactly for constants.
#[inline]
pub fn smoothness_indicator(poly: &LegendreCoeffs) -> f64 {
    // `a^T BETA_FORM a` written out; the form only couples a1-a3 and a2-a4.
    let [_, a1, a2, a3, a4] = poly.coeffs;
    let q = &BETA_FORM;
    let beta = a1 * (q[0][0] * a1 + 2.0 * q[0][2] * a3)
        + a2 * (q[1][1] * a2 + 2.0 * q[1][3] * a4)
        + q[2][2] * a3 * a3
        + q[3][3] * a4 * a4;
    // rounding can leave a tiny negative value for near-constant data
    beta.max(0.0)
}

/// Smoothness indicators of the four candidates and their global contrast.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothnessSet {
    pub beta5: f64,
    pub beta_sub: [f64; 3],
    pub tau: f64,
}

impl SmoothnessSet {
    pub fn from_betas(beta5: f64, beta_sub: [f64; 3]) -> Self {
        SmoothnessSet {
            beta5,
            beta_sub,
            tau: global_smoothness_tau(beta5, &beta_sub),
        }
    }

    pub fn of(candidates: &Candidates) -> Self {
        Self::from_betas(
            smoothness_indicator(&candidates.optimal),
            candidates.subs.map(|p| smoothness_indicator(&p)),
        )
    }
}

/// Mean absolute difference between the quartic's indicator and the
/// sub-stencil indicators.
pub fn global_smoothness_tau(beta5: f64, beta_sub: &[f64; 3]) -> f64 {
    beta_sub.iter().map(|b| (beta5 - b).abs()).sum::<f64>() / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// Original adaptive order: quartic minus weighted quadratics.
    Ao,
    /// Convex alternative.
    #[default]
    Aoa,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Ao => "ao",
            Variant::Aoa => "aoa",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ao" => Ok(Variant::Ao),
            "aoa" => Ok(Variant::Aoa),
            other => Err(format!("unknown scheme variant `{other}` (expected ao or aoa)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconConfig {
    pub gamma_hi: f64,
    pub gamma_lo: f64,
    pub epsilon: f64,
    pub variant: Variant,
}

impl Default for ReconConfig {
    fn default() -> Self {
        ReconConfig {
            gamma_hi: 0.85,
            gamma_lo: 0.85,
            epsilon: 1e-40,
            variant: Variant::Aoa,
        }
    }
}

impl ReconConfig {
    pub fn with_variant(variant: Variant) -> Self {
        ReconConfig {
            variant,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ReconError> {
        for (name, value) in [("gamma_hi", self.gamma_hi), ("gamma_lo", self.gamma_lo)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(ReconError::LinearWeight { name, value });
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(ReconError::Epsilon(self.epsilon));
        }
        Ok(())
    }

    /// Linear weights `(gamma5, gamma1, gamma2, gamma3)`.
    pub fn linear_weights(&self) -> [f64; 4] {
        let rest = 1.0 - self.gamma_hi;
        let side = 0.5 * rest * (1.0 - self.gamma_lo);
        [self.gamma_hi, side, rest * self.gamma_lo, side]
    }
}

/// Linear, raw and normalized weights, ordered quartic first, then the
/// three quadratics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSet {
    pub gamma: [f64; 4],
    /// Un-normalized weights, possibly rescaled by a common factor when
    /// their magnitude would approach overflow.
    pub w_raw: [f64; 4],
    pub w_bar: [f64; 4],
}

/// `tau / (beta + eps)` for the four candidates.
fn contrast_ratios(s: &SmoothnessSet, eps: f64) -> [f64; 4] {
    [
        s.tau / (s.beta5 + eps),
        s.tau / (s.beta_sub[0] + eps),
        s.tau / (s.beta_sub[1] + eps),
        s.tau / (s.beta_sub[2] + eps),
    ]
}

/// Applies `raw[k] = gamma[k] * (base[k] + r[k]^2)` with the common scale
/// chosen so nothing overflows, then normalizes.
#[inline]
fn weights_from_ratios(gamma: [f64; 4], base: [f64; 4], r: [f64; 4]) -> WeightSet {
    let r_max = r.iter().fold(1.0_f64, |m, &x| m.max(x));
    let w_raw = if r_max * r_max > RESCALE_THRESHOLD {
        let inv = 1.0 / r_max;
        let inv2 = inv * inv;
        std::array::from_fn(|k| {
            let q = r[k] * inv;
            gamma[k] * (base[k] * inv2 + q * q)
        })
    } else {
        std::array::from_fn(|k| gamma[k] * (base[k] + r[k] * r[k]))
    };
    let inv_total = 1.0 / w_raw.iter().sum::<f64>();
    WeightSet {
        gamma,
        w_raw,
        w_bar: w_raw.map(|w| w * inv_total),
    }
}

/// Weights of the convex reconstruction: only the quartic keeps the `1 +`
/// term, so sub-stencil weights vanish on smooth data.
pub fn aoa_weights(s: &SmoothnessSet, cfg: &ReconConfig) -> WeightSet {
    weights_from_ratios(
        cfg.linear_weights(),
        [1.0, 0.0, 0.0, 0.0],
        contrast_ratios(s, cfg.epsilon),
    )
}

/// Weights of the original reconstruction, of the `gamma (1 + (tau/beta)^2)`
/// type for all four candidates, so they tend to the linear weights on
/// smooth data.
pub fn ao_weights(s: &SmoothnessSet, cfg: &ReconConfig) -> WeightSet {
    weights_from_ratios(
        cfg.linear_weights(),
        [1.0; 4],
        contrast_ratios(s, cfg.epsilon),
    )
}

/// Weights for the configured variant.
pub fn nonlinear_weights(s: &SmoothnessSet, cfg: &ReconConfig) -> WeightSet {
    match cfg.variant {
        Variant::Ao => ao_weights(s, cfg),
        Variant::Aoa => aoa_weights(s, cfg),
    }
}

/// Convex combination of the quartic and the quadratics.
pub fn aoa_combine(c: &Candidates, w: &WeightSet) -> LegendreCoeffs {
    let [w5, w1, w2, w3] = w.w_bar;
    let mut out = c.optimal.coeffs.map(|a| w5 * a);
    for (wk, sub) in [w1, w2, w3].into_iter().zip(&c.subs) {
        for (o, a) in out.iter_mut().zip(&sub.coeffs[..3]) {
            *o += wk * a;
        }
    }
    LegendreCoeffs::new(&out)
}

/// Original adaptive-order combination.
pub fn ao_combine(c: &Candidates, w: &WeightSet) -> LegendreCoeffs {
    let [g5, g1, g2, g3] = w.gamma;
    let [w5, w1, w2, w3] = w.w_bar;
    debug_assert!(g5 > 0.0);
    let scale = w5 / g5;
    let mut out = c.optimal.coeffs.map(|a| scale * a);
    for ((gk, wk), sub) in [g1, g2, g3].into_iter().zip([w1, w2, w3]).zip(&c.subs) {
        let factor = wk - scale * gk;
        for (o, a) in out.iter_mut().zip(&sub.coeffs[..3]) {
            *o += factor * a;
        }
    }
    LegendreCoeffs::new(&out)
}

/// Full pipeline, returning the combined polynomial together with the
/// intermediate smoothness and weight data.
pub fn reconstruct_polynomial(
    window: &ReconWindow,
    cfg: &ReconConfig,
) -> (LegendreCoeffs, SmoothnessSet, WeightSet) {
    let candidates = project_to_legendre(window);
    let smoothness = SmoothnessSet::of(&candidates);
    let weights = nonlinear_weights(&smoothness, cfg);
    let poly = match cfg.variant {
        Variant::Ao => ao_combine(&candidates, &weights),
        Variant::Aoa => aoa_combine(&candidates, &weights),
    };
    (poly, smoothness, weights)
}

/// Reconstructed value at the right interface `x_{i+1/2}` of the center
/// cell. Use [`ReconWindow::reversed`] on the mirrored stencil for the
/// downwind split.
///
/// Same result as evaluating the polynomial from
/// [`reconstruct_polynomial`], but blends the candidates' interface values
/// instead of their coefficients.
#[inline]
pub fn reconstruct_interface(window: &ReconWindow, cfg: &ReconConfig) -> f64 {
    let candidates = project_to_legendre(window);
    let weights = nonlinear_weights(&SmoothnessSet::of(&candidates), cfg);
    let v5 = value_at_right(&candidates.optimal);
    let vs = candidates.subs.map(|p| value_at_right(&p));
    let [w5, w1, w2, w3] = weights.w_bar;
    match cfg.variant {
        Variant::Aoa => w5 * v5 + w1 * vs[0] + w2 * vs[1] + w3 * vs[2],
        Variant::Ao => {
            let [g5, g1, g2, g3] = weights.gamma;
            let scale = w5 / g5;
            scale * v5 + (w1 - scale * g1) * vs[0] + (w2 - scale * g2) * vs[1] + (w3 - scale * g3) * vs[2]
        }
    }
}
