//! Executable forms of the conjectured bounds and the known properties of `D`.

use nalgebra::{Matrix3, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, EuclideanConfig, Geometry, HyperbolicConfig};
use crate::det::{self, euclidean_value, DetResult};
use crate::error::Error;
use crate::precision::Precision;
use crate::transform::{self, Mat3};
use crate::vec3::{self, Point3};

/// Default slack on `|D| ≥ 1`.
pub const BOUND_TOLERANCE: f64 = 1e-9;
/// Adjacent relative decreases of `|D_R|` up to this size count as rounding noise.
pub const MONOTONE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "D_re")]
    pub d_re: f64,
    #[serde(rename = "D_im")]
    pub d_im: f64,
    #[serde(rename = "absD")]
    pub abs_d: f64,
    pub bound_satisfied: bool,
    pub tolerance: f64,
    pub geometry: Geometry,
    /// False for Minkowski inputs: the value is recorded, no bound is claimed.
    pub asserted: bool,
}

/// Compares `|D|` of a configuration against `1 − tolerance`.
pub fn check_bound(cfg: &Configuration, tolerance: f64) -> Result<BoundReport, Error> {
    let d = det::determinant_value(cfg, Precision::Double)?;
    let abs_d = d.norm();
    Ok(BoundReport {
        d_re: d.re,
        d_im: d.im,
        abs_d,
        bound_satisfied: abs_d >= 1.0 - tolerance,
        tolerance,
        geometry: cfg.geometry(),
        asserted: cfg.geometry() != Geometry::Minkowski,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub radii: Vec<f64>,
    #[serde(rename = "absD")]
    pub abs_d: Vec<f64>,
    pub monotone: bool,
    /// Largest relative decrease `(|D_k| − |D_{k+1}|) / |D_k|`, or 0.
    pub max_violation: f64,
    pub tolerance: f64,
    /// `|D_∞|` from the Euclidean directions of the same points.
    #[serde(rename = "absD_infinity")]
    pub abs_d_infinity: f64,
}

impl SweepReport {
    /// `| |D_R| − |D_∞| |` at the largest radius.
    pub fn limit_gap(&self) -> f64 {
        self.abs_d
            .last()
            .map_or(f64::NAN, |last| (last - self.abs_d_infinity).abs())
    }
}

/// `count` geometrically spaced radii from `1.01·max‖x‖` to `10⁶·max‖x‖`.
pub fn default_grid(points: &[Point3], count: usize) -> Result<Vec<f64>, Error> {
    let r0 = vec3::max_norm(points);
    if !(r0 > 0.0) {
        return Err(Error::InvalidGrid("all points are at the origin".to_string()));
    }
    geometric_grid(1.01 * r0, 1e6 * r0, count)
}

pub fn geometric_grid(start: f64, end: f64, count: usize) -> Result<Vec<f64>, Error> {
    if count < 2 || !(start > 0.0) || !(end > start) {
        return Err(Error::InvalidGrid(format!(
            "need count >= 2 and 0 < start < end (got {count}, {start}, {end})"
        )));
    }
    let ratio = (end / start).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|k| {
            if k + 1 == count {
                end
            } else {
                start * (ratio * k as f64).exp()
            }
        })
        .collect())
}

/// `|D_R|` of fixed points over an increasing radius grid.
pub fn sweep_radius(points: &[Point3], radii: &[f64]) -> Result<SweepReport, Error> {
    if radii.is_empty() || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(
            "radii must be nonempty and strictly increasing".to_string(),
        ));
    }
    let mut abs_d = Vec::with_capacity(radii.len());
    for &radius in radii {
        let cfg = Configuration::Hyperbolic(HyperbolicConfig::new(points.to_vec(), radius)?);
        abs_d.push(det::determinant_value(&cfg, Precision::Double)?.norm());
    }
    let max_violation = abs_d.windows(2).map(|w| (w[0] - w[1]) / w[0]).fold(0.0f64, f64::max);
    let abs_d_infinity = euclidean_value(points)?.norm();
    Ok(SweepReport {
        radii: radii.to_vec(),
        abs_d,
        monotone: max_violation <= MONOTONE_TOLERANCE,
        max_violation,
        tolerance: MONOTONE_TOLERANCE,
        abs_d_infinity,
    })
}

/// `D_∞` of a triangle from its angles: `½ Σ cos²(A_i / 2)`.
///
/// Evaluated as `¾ + ¼ Σ cos A_i`, the same quantity without inverse
/// trigonometry. Collinear triples are valid input and give 1.
pub fn triangle_closed_form(points: &[Point3; 3]) -> Result<f64, Error> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if vec3::max_dist(&points[i], &points[j]) < crate::config::COINCIDENCE_TOLERANCE {
            return Err(Error::DegenerateConfiguration { i, j });
        }
    }
    let cos_sum: f64 = (0..3)
        .map(|k| {
            let e1 = vec3::sub(points[(k + 1) % 3], points[k]);
            let e2 = vec3::sub(points[(k + 2) % 3], points[k]);
            (vec3::dot(e1, e2) / (vec3::norm(e1) * vec3::norm(e2))).clamp(-1.0, 1.0)
        })
        .sum();
    Ok(0.75 + 0.25 * cos_sum)
}

/// Direction along which the second cluster is moved away.
pub const CLUSTER_DIRECTION: Point3 = [
    0.267_261_241_912_424_4,
    0.534_522_483_824_848_8,
    0.801_783_725_737_273_2,
];

/// `|D(A ∪ B') − D(A) D(B)|` where `B'` is `B` with its centroid moved to
/// `centroid(A) + s·direction`, for each separation `s`.
pub fn cluster_check(a: &[Point3], b: &[Point3], separations: &[f64], direction: Point3) -> Result<Vec<f64>, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Invalid("clusters must be nonempty".to_string()));
    }
    let dir = vec3::scale(1.0 / vec3::norm(direction), direction);
    let product = euclidean_value(a)? * euclidean_value(b)?;
    let base = vec3::sub(transform::centroid(a), transform::centroid(b));
    separations
        .iter()
        .map(|&s| {
            let moved = transform::translate(b, vec3::add(base, vec3::scale(s, dir)));
            let union: Vec<Point3> = a.iter().copied().chain(moved).collect();
            Ok((euclidean_value(&union)? - product).norm())
        })
        .collect()
}

/// Separations `m · scale` for each multiple, with `scale` the larger cluster
/// diameter (1 when both clusters are single points).
pub fn separation_ladder(a: &[Point3], b: &[Point3], multiples: &[f64]) -> Vec<f64> {
    let diam = vec3::diameter(a).max(vec3::diameter(b));
    let scale = if diam > 0.0 { diam } else { 1.0 };
    multiples.iter().map(|m| m * scale).collect()
}

/// Moves the last point radially to `|x_n| = R (1 − gap)` for each gap and
/// returns `|D_R(x_1..x_n) − D_R(x_1..x_{n−1})|`.
pub fn boundary_push(points: &[Point3], radius: f64, gaps: &[f64]) -> Result<Vec<f64>, Error> {
    let (last, rest) = points
        .split_last()
        .ok_or_else(|| Error::Invalid("no points".to_string()))?;
    let norm = vec3::norm(*last);
    if !(norm > 0.0) {
        return Err(Error::Invalid(
            "the point pushed to the boundary must not be the centre".to_string(),
        ));
    }
    let reduced = if rest.len() == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        let cfg = Configuration::Hyperbolic(HyperbolicConfig::new(rest.to_vec(), radius)?);
        det::determinant_value(&cfg, Precision::Double)?
    };
    gaps.iter()
        .map(|&gap| {
            let pushed = vec3::scale(radius * (1.0 - gap) / norm, *last);
            let mut all = rest.to_vec();
            all.push(pushed);
            let cfg = Configuration::Hyperbolic(HyperbolicConfig::new(all, radius)?);
            Ok((det::determinant_value(&cfg, Precision::Double)? - reduced).norm())
        })
        .collect()
}

/// The ellipsoid `{x : Σ_k ((R x)_k / a_k)² ≤ 1}` with semi-axes `a` in the
/// frame rotated by `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipsoid {
    pub semi_axes: [f64; 3],
    pub rotation: Mat3,
}

impl Ellipsoid {
    pub fn axis_aligned(semi_axes: [f64; 3]) -> Self {
        Self {
            semi_axes,
            rotation: transform::IDENTITY,
        }
    }

    pub fn sphere(radius: f64) -> Self {
        Self::axis_aligned([radius; 3])
    }

    fn validate(&self) -> Result<(), Error> {
        if self.semi_axes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidEllipsoid(format!(
                "semi-axes must be positive, got {:?}",
                self.semi_axes
            )));
        }
        Ok(())
    }

    /// The affine map onto the unit ball.
    pub fn to_unit_ball(&self, p: Point3) -> Point3 {
        let q = vec3::mat_apply(&self.rotation, p);
        [
            q[0] / self.semi_axes[0],
            q[1] / self.semi_axes[1],
            q[2] / self.semi_axes[2],
        ]
    }

    /// The quadratic form `Q` with `x ∈ E ⇔ xᵀ Q x ≤ 1`.
    fn form(&self) -> Matrix3<f64> {
        let r = Matrix3::from_fn(|i, j| self.rotation[i][j]);
        let d = Matrix3::from_diagonal(&nalgebra::Vector3::from_fn(|i, _| {
            1.0 / (self.semi_axes[i] * self.semi_axes[i])
        }));
        r.transpose() * d * r
    }

    /// Whether `self ⊆ outer` (both centred at the origin).
    pub fn is_inside(&self, outer: &Ellipsoid) -> bool {
        let diff = self.form() - outer.form();
        let scale = self.form().norm().max(1.0);
        SymmetricEigen::new(diff).eigenvalues.min() >= -1e-12 * scale
    }
}

/// `D` for points inside an ellipsoid, via the affine map onto the unit ball.
pub fn ellipsoid_determinant(points: &[Point3], ellipsoid: &Ellipsoid) -> Result<DetResult, Error> {
    ellipsoid.validate()?;
    let mapped = points.iter().map(|p| ellipsoid.to_unit_ball(*p)).collect();
    let cfg = Configuration::Hyperbolic(HyperbolicConfig::new(mapped, 1.0)?);
    det::evaluate(&cfg, Precision::Double)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidComparison {
    #[serde(rename = "absD_outer")]
    pub outer_abs_d: f64,
    #[serde(rename = "absD_inner")]
    pub inner_abs_d: f64,
    /// `|D_outer| ≥ |D_inner|` up to [`MONOTONE_TOLERANCE`] relative.
    pub holds: bool,
}

pub fn ellipsoid_compare(
    points: &[Point3],
    inner: &Ellipsoid,
    outer: &Ellipsoid,
) -> Result<EllipsoidComparison, Error> {
    inner.validate()?;
    outer.validate()?;
    if !inner.is_inside(outer) {
        return Err(Error::EllipsoidNotNested);
    }
    let inner_abs_d = ellipsoid_determinant(points, inner)?.abs_d;
    let outer_abs_d = ellipsoid_determinant(points, outer)?.abs_d;
    Ok(EllipsoidComparison {
        outer_abs_d,
        inner_abs_d,
        holds: outer_abs_d >= inner_abs_d * (1.0 - MONOTONE_TOLERANCE),
    })
}

/// Convenience: `|D_∞|` bound report for bare Euclidean points.
pub fn euclidean_bound(points: &[Point3]) -> Result<BoundReport, Error> {
    check_bound(
        &Configuration::Euclidean(EuclideanConfig::new(points.to_vec())?),
        BOUND_TOLERANCE,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{MinkowskiConfig, WorldLine};

    fn equilateral() -> [Point3; 3] {
        let h = 3f64.sqrt() / 2.0;
        [[1.0, 0.0, 0.0], [-0.5, h, 0.0], [-0.5, -h, 0.0]]
    }

    fn sample_points() -> Vec<Point3> {
        vec![
            [0.12, -0.31, 0.05],
            [-0.22, 0.18, 0.27],
            [0.3, 0.25, -0.2],
            [-0.05, -0.1, -0.33],
            [0.21, 0.02, 0.4],
        ]
    }

    #[test]
    fn collinear_bound_is_tight() {
        let pts: Vec<Point3> = (0..5).map(|k| [k as f64, 2.0 * k as f64 + 0.5, -(k as f64)]).collect();
        let r = euclidean_bound(&pts).unwrap();
        assert!((r.abs_d - 1.0).abs() < 1e-12);
        assert!(r.bound_satisfied && r.asserted);
    }

    #[test]
    fn equilateral_bound() {
        let r = euclidean_bound(&equilateral()).unwrap();
        assert!((r.abs_d - 1.125).abs() < 1e-12);
        assert!(r.bound_satisfied);
    }

    #[test]
    fn minkowski_bound_is_recorded_not_asserted() {
        let cfg = Configuration::Minkowski(
            MinkowskiConfig::new(
                vec![
                    WorldLine {
                        a: [0.0; 3],
                        b: [0.0; 3],
                    },
                    WorldLine {
                        a: [1.0, 0.0, 0.0],
                        b: [0.0, 0.5, 0.0],
                    },
                ],
                vec![0.0, 0.0],
                false,
            )
            .unwrap(),
        );
        let r = check_bound(&cfg, BOUND_TOLERANCE).unwrap();
        assert!(!r.asserted);
        assert!((r.abs_d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_formula_values() {
        assert!((triangle_closed_form(&equilateral()).unwrap() - 1.125).abs() < 1e-15);
        let collinear = [[0.0; 3], [1.0, 0.0, 0.0], [3.0, 0.0, 0.0]];
        assert!((triangle_closed_form(&collinear).unwrap() - 1.0).abs() < 1e-15);
        // Right isosceles: ½(cos²45° + 2 cos²22.5°) = ¾ + √2/4.
        let right = [[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let want = 0.75 + 2f64.sqrt() / 4.0;
        assert!((triangle_closed_form(&right).unwrap() - want).abs() < 1e-15);
        assert!((want - 1.1036).abs() < 1e-4);
        assert!(matches!(
            triangle_closed_form(&[[0.0; 3], [0.0; 3], [1.0, 0.0, 0.0]]),
            Err(Error::DegenerateConfiguration { i: 0, j: 1 })
        ));
    }

    #[test]
    fn triangle_formula_matches_pipeline() {
        let right = [[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        let d = euclidean_value(&right).unwrap();
        assert!(d.im.abs() < 1e-12);
        assert!((d.re - triangle_closed_form(&right).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn grid_shape() {
        let g = default_grid(&sample_points(), 20).unwrap();
        assert_eq!(g.len(), 20);
        let r0 = vec3::max_norm(&sample_points());
        assert!((g[0] - 1.01 * r0).abs() < 1e-15);
        assert_eq!(g[19], 1e6 * r0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(geometric_grid(1.0, 1.0, 5).is_err());
    }

    #[test]
    fn collinear_sweep_is_flat() {
        let pts: Vec<Point3> = (0..4).map(|k| [0.1 * k as f64, -0.05 * k as f64, 0.02]).collect();
        let rep = sweep_radius(&pts, &default_grid(&pts, 20).unwrap()).unwrap();
        assert!(rep.monotone);
        assert!(rep.abs_d.iter().all(|d| (d - 1.0).abs() < 1e-10));
    }

    #[test]
    fn sweep_reaches_euclidean_limit() {
        let pts = sample_points();
        let rep = sweep_radius(&pts, &default_grid(&pts, 20).unwrap()).unwrap();
        assert!(rep.limit_gap() < 1e-4, "gap {}", rep.limit_gap());
        assert!(rep.monotone, "violation {}", rep.max_violation);
    }

    #[test]
    fn sweep_rejects_small_radius() {
        let pts = sample_points();
        assert!(matches!(
            sweep_radius(&pts, &[0.1, 1.0]),
            Err(Error::PointOutsideBall { .. })
        ));
        assert!(sweep_radius(&pts, &[2.0, 1.0]).is_err());
    }

    #[test]
    fn singleton_clusters() {
        let dev = cluster_check(&[[0.0; 3]], &[[1.0, 2.0, 3.0]], &[1.0, 10.0], CLUSTER_DIRECTION).unwrap();
        assert!(dev.iter().all(|d| *d < 1e-14));
    }

    #[test]
    fn pair_clusters_decouple() {
        let a = [[0.0, 0.0, 0.0], [0.3, 0.8, -0.1]];
        let b = [[0.5, -0.2, 0.1], [0.1, 0.4, 0.9]];
        let seps = separation_ladder(&a, &b, &[10.0, 100.0, 1000.0]);
        let dev = cluster_check(&a, &b, &seps, CLUSTER_DIRECTION).unwrap();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
    }

    #[test]
    fn boundary_push_tends_to_smaller_configuration() {
        let pts = sample_points();
        let dev = boundary_push(&pts, 1.0, &[1e-2, 1e-4, 1e-6]).unwrap();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
        assert!(dev[2] < 1e-3);
    }

    #[test]
    fn sphere_ellipsoid_equals_ball() {
        let pts = sample_points();
        let radius = 0.8;
        let e = ellipsoid_determinant(&pts, &Ellipsoid::sphere(radius)).unwrap();
        let cfg = Configuration::Hyperbolic(HyperbolicConfig::new(pts, radius).unwrap());
        let d = det::determinant_value(&cfg, Precision::Double).unwrap();
        assert!((e.d() - d).norm() < 1e-12);
    }

    #[test]
    fn nested_spheres_follow_radius() {
        let pts = sample_points();
        let cmp = ellipsoid_compare(&pts, &Ellipsoid::sphere(0.6), &Ellipsoid::sphere(2.0)).unwrap();
        let sweep = sweep_radius(&pts, &[0.6, 2.0]).unwrap();
        assert!((cmp.inner_abs_d - sweep.abs_d[0]).abs() < 1e-12);
        assert!((cmp.outer_abs_d - sweep.abs_d[1]).abs() < 1e-12);
        assert_eq!(cmp.holds, sweep.monotone);
    }

    #[test]
    fn ellipsoid_nesting() {
        let inner = Ellipsoid::axis_aligned([1.0, 1.0, 1.0]);
        let outer = Ellipsoid::axis_aligned([2.0, 1.5, 1.2]);
        assert!(inner.is_inside(&outer));
        assert!(!outer.is_inside(&inner));
        let tilted = Ellipsoid {
            semi_axes: [1.9, 1.0, 1.0],
            rotation: transform::rotation([0.0, 0.0, 1.0], 0.8),
        };
        assert!(!tilted.is_inside(&Ellipsoid::axis_aligned([2.0, 1.05, 1.05])));
        assert!(matches!(
            ellipsoid_compare(&sample_points(), &outer, &inner),
            Err(Error::EllipsoidNotNested)
        ));
        assert!(ellipsoid_compare(&sample_points(), &inner, &outer).is_ok());
    }
}
