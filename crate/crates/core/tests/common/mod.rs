//! Exact rational polynomial toolkit used as an independent oracle for the
//! reconstruction tables, plus a few numeric helpers.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

/// Exact rational value of a double.
pub fn qf(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("representable")
}

/// Polynomial in the reference coordinate, `coeffs[n]` multiplies `xi^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![Q::zero()])
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(Q::zero);
        Poly((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * qi(n as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Exact integral over `[a, b]`.
    pub fn integrate(&self, a: &Q, b: &Q) -> Q {
        let anti = Poly(
            std::iter::once(Q::zero())
                .chain(self.0.iter().enumerate().map(|(n, c)| c / qi(n as i64 + 1)))
                .collect(),
        );
        anti.eval(b) - anti.eval(a)
    }

    /// Average over the cell centered at integer offset `j`.
    pub fn cell_average(&self, j: i64) -> Q {
        let half = q(1, 2);
        self.integrate(&(qi(j) - &half), &(qi(j) + &half))
    }
}

/// Scaled Legendre basis on `[-1/2, 1/2]`, built from its definition.
pub fn legendre(k: usize) -> Poly {
    let c = match k {
        0 => vec![qi(1)],
        1 => vec![qi(0), qi(1)],
        2 => vec![q(-1, 12), qi(0), qi(1)],
        3 => vec![qi(0), q(-3, 20), qi(0), qi(1)],
        4 => vec![q(3, 560), qi(0), q(-3, 14), qi(0), qi(1)],
        _ => panic!("basis index {k}"),
    };
    Poly(c)
}

/// Gauss-Jordan inverse over the rationals.
pub fn inverse(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular");
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Matrix mapping cell averages on `offsets` to Legendre coefficients of
/// the interpolating polynomial of degree `offsets.len() - 1`.
pub fn fit_matrix(offsets: &[i64]) -> Vec<Vec<Q>> {
    let n = offsets.len();
    let averages: Vec<Vec<Q>> = offsets
        .iter()
        .map(|&j| (0..n).map(|k| legendre(k).cell_average(j)).collect())
        .collect();
    inverse(&averages)
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Legendre coefficients of the polynomial whose averages on `offsets`
/// are `values`.
pub fn fit(offsets: &[i64], values: &[Q]) -> Vec<Q> {
    mat_vec(&fit_matrix(offsets), values)
}

/// Monomial form of a Legendre expansion.
pub fn to_monomial(coeffs: &[Q]) -> Poly {
    coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, c)| acc.add(&legendre(k).scale(c)))
}

/// `sum_l int (d^l p)^2` over the reference cell, exactly.
pub fn exact_beta(p: &Poly) -> Q {
    let (lo, hi) = (q(-1, 2), q(1, 2));
    let mut d = p.derivative();
    let mut total = Q::zero();
    for _ in 1..p.0.len() {
        total += d.mul(&d).integrate(&lo, &hi);
        d = d.derivative();
    }
    total
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

/// Least-squares slope of `log(err)` against `log(h)`.
pub fn loglog_slope(h: &[f64], err: &[f64]) -> f64 {
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}
