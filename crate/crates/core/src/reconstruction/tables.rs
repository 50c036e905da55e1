//! Fixed coefficient tables for the 5-point reconstruction.
//!
//! All polynomials live on the reference cell `xi = (x - x_i)/dx` in
//! `[-1/2, 1/2]` and are expanded in the scaled Legendre basis
//!
//! ```text
//! L0 = 1
//! L1 = xi
//! L2 = xi^2 - 1/12
//! L3 = xi^3 - 3 xi / 20
//! L4 = xi^4 - 3 xi^2 / 14 + 3/560
//! ```
//!
//! Each `Lk` (k >= 1) has zero mean over the reference cell, so the constant
//! coefficient of a fitted polynomial is its cell average. The tables are
//! checked against an exact rational generator in `tests/coefficient_tables.rs`;
//! the fitting kernel evaluates the fit matrices in an equivalent factored
//! difference form.

/// Legendre coefficients of the quartic matching cell averages on cells
/// `i-2..=i+2`. Row `k` gives coefficient `a_k` as a combination of the
/// five window values.
pub const OPTIMAL_FIT: [[f64; 5]; 5] = [
    [0.0, 0.0, 1.0, 0.0, 0.0],
    [11.0 / 120.0, -41.0 / 60.0, 0.0, 41.0 / 60.0, -11.0 / 120.0],
    [-3.0 / 56.0, 5.0 / 7.0, -37.0 / 28.0, 5.0 / 7.0, -3.0 / 56.0],
    [-1.0 / 12.0, 1.0 / 6.0, 0.0, -1.0 / 6.0, 1.0 / 12.0],
    [1.0 / 24.0, -1.0 / 6.0, 1.0 / 4.0, -1.0 / 6.0, 1.0 / 24.0],
];

/// Legendre coefficients of the three quadratics. `SUB_FIT[k]` acts on the
/// window slice `k..k+3`, i.e. cells `{i-2,i-1,i}`, `{i-1,i,i+1}` and
/// `{i,i+1,i+2}`, each expressed around cell `i`.
pub const SUB_FIT: [[[f64; 3]; 3]; 3] = [
    [[0.0, 0.0, 1.0], [0.5, -2.0, 1.5], [0.5, -1.0, 0.5]],
    [[0.0, 1.0, 0.0], [-0.5, 0.0, 0.5], [0.5, -1.0, 0.5]],
    [[1.0, 0.0, 0.0], [-1.5, 2.0, -0.5], [0.5, -1.0, 0.5]],
];

/// Symmetric quadratic form of the smoothness indicator on `(a1, a2, a3, a4)`:
/// `beta = a^T Q a`, the sum over all derivative orders of the squared
/// derivative integrated over the reference cell. Lower-degree polynomials
/// simply have trailing zero coefficients.
pub const BETA_FORM: [[f64; 4]; 4] = [
    [1.0, 0.0, 1.0 / 10.0, 0.0],
    [0.0, 13.0 / 3.0, 0.0, 41.0 / 35.0],
    [1.0 / 10.0, 0.0, 1953.0 / 50.0, 0.0],
    [0.0, 41.0 / 35.0, 0.0, 153158.0 / 245.0],
];

/// Values of the basis functions at the right interface `xi = 1/2`.
pub const BASIS_AT_RIGHT: [f64; 5] = [1.0, 0.5, 1.0 / 6.0, 1.0 / 20.0, 1.0 / 70.0];
