//! The normalized determinant
//!
//! ```text
//!          det P
//! D = ----------------------
//!      ∏_{i<j} v_ij ∧ v_ji
//! ```
//!
//! where row `i` of `P` holds the coefficients of
//! `p_i(Z0, Z1) = ∏_{j≠i} (V_ij Z0 − U_ij Z1)` in the monomials
//! `Z0^{n−1−k} Z1^k`. Rescaling any lift multiplies numerator and denominator
//! by the same factor, so `D` depends only on the directions; with this
//! orientation collinear configurations give exactly `D = 1`.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::config::{Configuration, DirectionTable, EuclideanConfig, Geometry};
use crate::error::Error;
use crate::precision::{complex_to_f64, modulus, Precision, Real};
use crate::spinor::{wedge, Spinor};

/// `|v_ij ∧ v_ji|` below this (with unit-norm lifts) means `u_ij = u_ji`.
pub const DEGENERATE_WEDGE: f64 = 1e-14;

/// Coefficients of `∏ (V Z0 − U Z1)` over the given lifts, highest power of
/// `Z0` first.
pub fn polynomial_from_lifts<T: Real>(lifts: &[Spinor<T>]) -> Vec<Complex<T>> {
    let mut coeffs = Vec::with_capacity(lifts.len() + 1);
    coeffs.push(Complex::<T>::one());
    for s in lifts {
        coeffs.push(Complex::zero());
        for k in (0..coeffs.len()).rev() {
            let lower = if k > 0 { coeffs[k - 1] } else { Complex::zero() };
            coeffs[k] = s.c1 * coeffs[k] - s.c0 * lower;
        }
    }
    coeffs
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix<T = f64> {
    pub n: usize,
    /// Row-major `n × n` entries.
    pub entries: Vec<Complex<T>>,
}

impl<T: Real> CoefficientMatrix<T> {
    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn determinant(&self) -> Complex<T> {
        lu_determinant(self.entries.clone(), self.n)
    }
}

pub fn coefficient_matrix<T: Real>(table: &DirectionTable<T>) -> CoefficientMatrix<T> {
    let n = table.n();
    let mut entries = Vec::with_capacity(n * n);
    let mut lifts = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        lifts.clear();
        lifts.extend((0..n).filter(|&j| j != i).map(|j| *table.v(i, j)));
        entries.extend(polynomial_from_lifts(&lifts));
    }
    CoefficientMatrix { n, entries }
}

/// Determinant by LU factorization with partial pivoting.
pub fn lu_determinant<T: Real>(mut a: Vec<Complex<T>>, n: usize) -> Complex<T> {
    debug_assert_eq!(a.len(), n * n);
    let mut det = Complex::<T>::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                a[r * n + col]
                    .norm_sqr()
                    .partial_cmp(&a[s * n + col].norm_sqr())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        let pivot = a[pivot_row * n + col];
        if pivot.is_zero() {
            return Complex::zero();
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det = det * pivot;
        let inv = Complex::<T>::one() / pivot;
        for r in col + 1..n {
            let factor = a[r * n + col] * inv;
            if factor.is_zero() {
                continue;
            }
            for k in col + 1..n {
                let upd = factor * a[col * n + k];
                a[r * n + k] = a[r * n + k] - upd;
            }
        }
    }
    det
}

/// Product of `v_ij ∧ v_ji` over `i < j`.
fn wedge_product<T: Real>(table: &DirectionTable<T>) -> Result<Complex<T>, Error> {
    let n = table.n();
    let mut den = Complex::<T>::one();
    for i in 0..n {
        for j in i + 1..n {
            let w = wedge(table.v(i, j), table.v(j, i));
            let scale = table.v(i, j).norm() * table.v(j, i).norm();
            let rel = (modulus(w) / scale).to_f64();
            if !(rel >= DEGENERATE_WEDGE) {
                return Err(Error::DegenerateDirection { i, j, wedge: rel });
            }
            den = den * w;
        }
    }
    Ok(den)
}

/// The complex value `D` of a direction table, in the table's own precision.
pub fn normalized_ratio<T: Real>(table: &DirectionTable<T>) -> Result<Complex<T>, Error> {
    let den = wedge_product(table)?;
    let num = coefficient_matrix(table).determinant();
    let d = num / den;
    if !d.re.is_finite() || !d.im.is_finite() {
        return Err(Error::NonFiniteDeterminant);
    }
    Ok(d)
}

/// Smallest singular value of `P` after scaling each row to unit length.
///
/// It is zero exactly when the polynomials are linearly dependent.
pub fn independence_margin(p: &CoefficientMatrix<f64>) -> f64 {
    let n = p.n;
    if n == 0 {
        return 0.0;
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let row = p.row(i);
        let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        for (k, z) in row.iter().enumerate() {
            m[(i, k)] = z / norm;
        }
    }
    m.singular_values().min().max(0.0)
}

/// Evaluation of the normalized determinant for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetResult {
    #[serde(rename = "D_re")]
    pub d_re: f64,
    #[serde(rename = "D_im")]
    pub d_im: f64,
    #[serde(rename = "absD")]
    pub abs_d: f64,
    pub margin: f64,
    pub geometry: Geometry,
    pub n: usize,
    #[serde(default, skip_serializing_if = "is_double")]
    pub precision: Precision,
}

fn is_double(p: &Precision) -> bool {
    *p == Precision::Double
}

impl DetResult {
    pub fn d(&self) -> Complex64 {
        Complex64::new(self.d_re, self.d_im)
    }
}

pub fn normalized_determinant(table: &DirectionTable<f64>) -> Result<DetResult, Error> {
    let d = normalized_ratio(table)?;
    let margin = independence_margin(&coefficient_matrix(table));
    Ok(DetResult {
        d_re: d.re,
        d_im: d.im,
        abs_d: d.norm(),
        margin,
        geometry: table.geometry(),
        n: table.n(),
        precision: Precision::Double,
    })
}

/// `D` of a configuration in the requested arithmetic, rounded to `f64`.
pub fn determinant_value(cfg: &Configuration, precision: Precision) -> Result<Complex64, Error> {
    match precision {
        Precision::Double => normalized_ratio(&cfg.directions::<f64>()?),
        Precision::Extended => normalized_ratio(&cfg.directions::<TwoFloat>()?).map(complex_to_f64),
    }
}

/// Full evaluation: `D`, `|D|` and the independence margin.
///
/// The margin is always computed in double precision.
pub fn evaluate(cfg: &Configuration, precision: Precision) -> Result<DetResult, Error> {
    let table = cfg.directions::<f64>()?;
    let mut result = normalized_determinant(&table)?;
    if precision == Precision::Extended {
        let d = determinant_value(cfg, Precision::Extended)?;
        result.d_re = d.re;
        result.d_im = d.im;
        result.abs_d = d.norm();
        result.precision = Precision::Extended;
    }
    Ok(result)
}

/// `|D|` in double precision without the singular-value pass.
pub fn abs_d(cfg: &Configuration) -> Result<f64, Error> {
    Ok(determinant_value(cfg, Precision::Double)?.norm())
}

/// `D` of a bare Euclidean point set, with the singleton convention `D = 1`.
pub fn euclidean_value(points: &[[f64; 3]]) -> Result<Complex64, Error> {
    if points.len() == 1 {
        return Ok(Complex64::one());
    }
    let cfg = EuclideanConfig::new(points.to_vec())?;
    normalized_ratio(&crate::config::euclidean_directions::<f64>(&cfg)?)
}

/// Checks the basis/sign conventions on collinear references: `D` must be
/// `+1` for `n = 2..=6` in both Euclidean and hyperbolic geometry.
pub fn self_check() -> Result<(), String> {
    for n in 2..=6usize {
        let points: Vec<[f64; 3]> = (0..n)
            .map(|k| {
                let s = k as f64 / n as f64 - 0.4;
                [0.3 * s, -0.2 * s, 0.5 * s + 0.01]
            })
            .collect();
        let configs = [
            Configuration::Euclidean(EuclideanConfig { points: points.clone() }),
            Configuration::Hyperbolic(crate::config::HyperbolicConfig {
                points: points.clone(),
                radius: 1.0,
            }),
        ];
        for cfg in &configs {
            let d = determinant_value(cfg, Precision::Double).map_err(|e| e.to_string())?;
            if (d - Complex64::one()).norm() > 1e-10 {
                return Err(format!(
                    "collinear {} reference with n = {n} gave D = {d}, expected 1",
                    cfg.geometry()
                ));
            }
        }
    }
    Ok(())
}
