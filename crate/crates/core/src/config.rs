//! Point configurations in the three geometries and the direction tables
//! `u_ij` they induce on CP¹.
//!
//! * Euclidean: `u_ij` is the direction from `x_i` to `x_j`.
//! * Hyperbolic (ball of radius `R`): `u_ij` is where the chord from `x_i`
//!   through `x_j` leaves the ball. Geodesics are straight chords, as in the
//!   projective (Klein) model of hyperbolic space.
//! * Minkowski: `u_ij` is the apparent position of star `j` on the celestial
//!   sphere of event `i`, i.e. where the past light cone of `x_i` meets world
//!   line `j`. Celestial spheres are identified by parallel translation.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::precision::Real;
use crate::spinor::{lift, stereographic_to_cp1, ProjectivePoint, SpherePoint, Spinor};
use crate::vec3::{self, Point3};

/// Two points (or events) closer than this in the max norm are the same point.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Hyperbolic,
    Minkowski,
}

impl Geometry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Minkowski => "minkowski",
        }
    }
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Geometry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(Geometry::Euclidean),
            "hyperbolic" => Ok(Geometry::Hyperbolic),
            "minkowski" => Ok(Geometry::Minkowski),
            other => Err(format!(
                "unknown geometry `{other}` (expected euclidean, hyperbolic or minkowski)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EuclideanConfig {
    pub points: Vec<Point3>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperbolicConfig {
    pub points: Vec<Point3>,
    #[serde(rename = "R")]
    pub radius: f64,
}

/// The uniform motion `a + t b` (units with c = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldLine {
    pub a: Point3,
    pub b: Point3,
}

impl WorldLine {
    pub fn at(&self, t: f64) -> Point3 {
        vec3::add(self.a, vec3::scale(t, self.b))
    }

    pub fn speed(&self) -> f64 {
        vec3::norm(self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinkowskiConfig {
    pub lines: Vec<WorldLine>,
    #[serde(rename = "t")]
    pub event_times: Vec<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_superluminal: bool,
}

impl MinkowskiConfig {
    /// Spatial position of event `i`.
    pub fn event_position(&self, i: usize) -> Point3 {
        self.lines[i].at(self.event_times[i])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "geometry", rename_all = "lowercase")]
pub enum Configuration {
    Euclidean(EuclideanConfig),
    Hyperbolic(HyperbolicConfig),
    Minkowski(MinkowskiConfig),
}

impl Configuration {
    pub fn geometry(&self) -> Geometry {
        match self {
            Configuration::Euclidean(_) => Geometry::Euclidean,
            Configuration::Hyperbolic(_) => Geometry::Hyperbolic,
            Configuration::Minkowski(_) => Geometry::Minkowski,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Configuration::Euclidean(c) => c.points.len(),
            Configuration::Hyperbolic(c) => c.points.len(),
            Configuration::Minkowski(c) => c.lines.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Configuration::Euclidean(c) => c.validate(),
            Configuration::Hyperbolic(c) => c.validate(),
            Configuration::Minkowski(c) => c.validate(),
        }
    }

    pub fn directions<T: Real>(&self) -> Result<DirectionTable<T>, Error> {
        match self {
            Configuration::Euclidean(c) => euclidean_directions(c),
            Configuration::Hyperbolic(c) => hyperbolic_directions(c),
            Configuration::Minkowski(c) => minkowski_directions(c),
        }
    }

    /// True when some world line moves at or above the speed of light.
    pub fn is_superluminal(&self) -> bool {
        match self {
            Configuration::Minkowski(c) => c.lines.iter().any(|l| l.speed() >= 1.0),
            _ => false,
        }
    }
}

fn check_points(points: &[Point3]) -> Result<(), Error> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            got: points.len(),
        });
    }
    if let Some(index) = points.iter().position(|p| !vec3::is_finite(p)) {
        return Err(Error::NonFinite { what: "point", index });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if vec3::max_dist(&points[i], &points[j]) < COINCIDENCE_TOLERANCE {
                return Err(Error::DegenerateConfiguration { i, j });
            }
        }
    }
    Ok(())
}

impl EuclideanConfig {
    pub fn new(points: Vec<Point3>) -> Result<Self, Error> {
        let cfg = Self { points };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        check_points(&self.points)
    }
}

impl HyperbolicConfig {
    pub fn new(points: Vec<Point3>, radius: f64) -> Result<Self, Error> {
        let cfg = Self { points, radius };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidRadius { radius: self.radius });
        }
        check_points(&self.points)?;
        for (index, p) in self.points.iter().enumerate() {
            let norm = vec3::norm(*p);
            if norm >= self.radius {
                return Err(Error::PointOutsideBall {
                    index,
                    norm,
                    radius: self.radius,
                });
            }
        }
        Ok(())
    }
}

impl MinkowskiConfig {
    pub fn new(lines: Vec<WorldLine>, event_times: Vec<f64>, allow_superluminal: bool) -> Result<Self, Error> {
        let cfg = Self {
            lines,
            event_times,
            allow_superluminal,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.lines.len();
        if n < 2 {
            return Err(Error::TooFewPoints { min: 2, got: n });
        }
        if self.event_times.len() != n {
            return Err(Error::LengthMismatch {
                what: "event times",
                expected: n,
                got: self.event_times.len(),
            });
        }
        for (index, line) in self.lines.iter().enumerate() {
            if !vec3::is_finite(&line.a) || !vec3::is_finite(&line.b) {
                return Err(Error::NonFinite {
                    what: "world line",
                    index,
                });
            }
            if !self.event_times[index].is_finite() {
                return Err(Error::NonFinite {
                    what: "event time",
                    index,
                });
            }
            let speed = line.speed();
            if !self.allow_superluminal && speed >= 1.0 {
                return Err(Error::Superluminal { index, speed });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if lines_intersect(&self.lines[i], &self.lines[j]) {
                    return Err(Error::IntersectingWorldLines { i, j });
                }
                let ei = event(self, i);
                let ej = event(self, j);
                if vec3::max_dist(&ei, &ej) < COINCIDENCE_TOLERANCE {
                    return Err(Error::CoincidentEvents { i, j });
                }
            }
        }
        Ok(())
    }
}

fn event(cfg: &MinkowskiConfig, i: usize) -> [f64; 4] {
    let p = cfg.event_position(i);
    [cfg.event_times[i], p[0], p[1], p[2]]
}

/// Whether `a_i + t b_i = a_j + t b_j` for some time `t`.
fn lines_intersect(l1: &WorldLine, l2: &WorldLine) -> bool {
    let da = vec3::sub(l1.a, l2.a);
    let db = vec3::sub(l1.b, l2.b);
    let db2 = vec3::dot(db, db);
    if db2 == 0.0 {
        return vec3::max_dist(&l1.a, &l2.a) < COINCIDENCE_TOLERANCE;
    }
    let t = -vec3::dot(da, db) / db2;
    let gap = vec3::add(da, vec3::scale(t, db));
    gap.iter().fold(0.0f64, |m, x| m.max(x.abs())) < COINCIDENCE_TOLERANCE
}

/// The `n × (n−1)` table of directions `u_ij` with their unit-norm lifts.
#[derive(Debug, Clone)]
pub struct DirectionTable<T = f64> {
    n: usize,
    geometry: Geometry,
    u: Vec<ProjectivePoint<T>>,
    v: Vec<Spinor<T>>,
}

impl<T: Real> DirectionTable<T> {
    /// Builds a table from a direction function; `dir(i, j)` must return the
    /// unit vector (not necessarily exactly normalized) pointing to `u_ij`.
    fn build<F>(n: usize, geometry: Geometry, mut dir: F) -> Result<Self, Error>
    where
        F: FnMut(usize, usize) -> Result<[T; 3], Error>,
    {
        let mut u = Vec::with_capacity(n * n);
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let q = if i == j {
                    ProjectivePoint::infinity()
                } else {
                    stereographic_to_cp1(SpherePoint::from_vector(dir(i, j)?)?)
                };
                u.push(q);
                v.push(lift(q));
            }
        }
        Ok(Self { n, geometry, u, v })
    }

    /// Builds a table directly from lifts (row-major, diagonal ignored).
    pub fn from_lifts(n: usize, geometry: Geometry, lifts: Vec<Spinor<T>>) -> Result<Self, Error> {
        if lifts.len() != n * n {
            return Err(Error::LengthMismatch {
                what: "lift table",
                expected: n * n,
                got: lifts.len(),
            });
        }
        let mut u = Vec::with_capacity(n * n);
        for (k, s) in lifts.iter().enumerate() {
            if k / n == k % n {
                u.push(ProjectivePoint::infinity());
            } else {
                u.push(s.projection()?);
            }
        }
        Ok(Self {
            n,
            geometry,
            u,
            v: lifts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn u(&self, i: usize, j: usize) -> ProjectivePoint<T> {
        self.u[i * self.n + j]
    }

    pub fn v(&self, i: usize, j: usize) -> &Spinor<T> {
        &self.v[i * self.n + j]
    }

    pub fn lifts(&self) -> &[Spinor<T>] {
        &self.v
    }

    /// Replaces the lift of `u_ij` by `f(v_ij)`; the projective point is kept.
    pub fn map_lift(&mut self, i: usize, j: usize, f: impl FnOnce(&Spinor<T>) -> Spinor<T>) {
        let k = i * self.n + j;
        self.v[k] = f(&self.v[k]);
    }

    /// Applies `f` to every off-diagonal lift, refreshing the projective points.
    pub fn map_all_lifts(&self, mut f: impl FnMut(&Spinor<T>) -> Spinor<T>) -> Result<Self, Error> {
        let lifts = self
            .v
            .iter()
            .enumerate()
            .map(|(k, s)| if k / self.n == k % self.n { *s } else { f(s) })
            .collect();
        Self::from_lifts(self.n, self.geometry, lifts)
    }

    /// Largest chordal distance between corresponding entries.
    pub fn max_distance(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    worst = worst.max(self.u(i, j).chordal_distance(&other.u(i, j)));
                }
            }
        }
        worst
    }
}

pub fn euclidean_directions<T: Real>(cfg: &EuclideanConfig) -> Result<DirectionTable<T>, Error> {
    cfg.validate()?;
    let pts: Vec<[T; 3]> = cfg.points.iter().map(vec3::to_real).collect();
    DirectionTable::build(pts.len(), Geometry::Euclidean, |i, j| Ok(vec3::sub(pts[j], pts[i])))
}

/// Parameter `s > 1` where `x_i + s (x_j − x_i)` meets the sphere of radius `radius`.
fn chord_exit<T: Real>(xi: [T; 3], xj: [T; 3], radius: T) -> T {
    let d = vec3::sub(xj, xi);
    let a = vec3::dot(d, d);
    let b = vec3::dot(xi, d);
    let c = vec3::dot(xi, xi) - radius * radius;
    let root = (b * b - a * c).sqrt();
    if b > T::zero() {
        -c / (b + root)
    } else {
        (root - b) / a
    }
}

pub fn hyperbolic_directions<T: Real>(cfg: &HyperbolicConfig) -> Result<DirectionTable<T>, Error> {
    cfg.validate()?;
    let radius = T::from_f64(cfg.radius);
    let pts: Vec<[T; 3]> = cfg.points.iter().map(vec3::to_real).collect();
    DirectionTable::build(pts.len(), Geometry::Hyperbolic, |i, j| {
        let s = chord_exit(pts[i], pts[j], radius);
        let exit = vec3::add(pts[i], vec3::scale(s, vec3::sub(pts[j], pts[i])));
        Ok(vec3::scale(T::one() / radius, exit))
    })
}

/// Where the past light cone of event `i` meets world line `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Emission<T = f64> {
    /// Emission time `s ≤ t_i` on line `j`.
    pub time: T,
    /// Look-back time `t_i − s ≥ 0`.
    pub lookback: T,
    /// Emission position relative to the observer at event `i`.
    pub offset: [T; 3],
}

impl<T: Real> Emission<T> {
    /// `‖offset‖ − lookback`; zero when the emission event is on the cone.
    pub fn cone_defect(&self) -> T {
        vec3::norm(self.offset) - self.lookback
    }
}

pub fn emission<T: Real>(cfg: &MinkowskiConfig, i: usize, j: usize) -> Result<Emission<T>, Error> {
    let ti = T::from_f64(cfg.event_times[i]);
    let ai = vec3::to_real::<T>(&cfg.lines[i].a);
    let bi = vec3::to_real::<T>(&cfg.lines[i].b);
    let aj = vec3::to_real::<T>(&cfg.lines[j].a);
    let bj = vec3::to_real::<T>(&cfg.lines[j].b);
    let observer = vec3::add(ai, vec3::scale(ti, bi));
    // Offset of star j at the observer's time; the star is seen at w − τ b.
    let w = vec3::sub(vec3::add(aj, vec3::scale(ti, bj)), observer);
    let quad = T::one() - vec3::dot(bj, bj);
    let half_lin = vec3::dot(w, bj);
    let c = vec3::dot(w, w);
    if c == T::zero() {
        return Err(Error::IntersectingWorldLines {
            i: i.min(j),
            j: i.max(j),
        });
    }
    // quad τ² + 2 half_lin τ − c = 0 with τ > 0 the smallest positive root.
    let disc = half_lin * half_lin + quad * c;
    if disc < T::zero() {
        return Err(Error::NoPastIntersection { i, j });
    }
    let root = disc.sqrt();
    let lookback = if half_lin > T::zero() {
        c / (half_lin + root)
    } else if quad > T::zero() {
        (root - half_lin) / quad
    } else {
        return Err(Error::NoPastIntersection { i, j });
    };
    if !(lookback > T::zero()) || !lookback.is_finite() {
        return Err(Error::NoPastIntersection { i, j });
    }
    Ok(Emission {
        time: ti - lookback,
        lookback,
        offset: vec3::sub(w, vec3::scale(lookback, bj)),
    })
}

pub fn minkowski_directions<T: Real>(cfg: &MinkowskiConfig) -> Result<DirectionTable<T>, Error> {
    cfg.validate()?;
    DirectionTable::build(cfg.lines.len(), Geometry::Minkowski, |i, j| {
        emission::<T>(cfg, i, j).map(|e| e.offset)
    })
}

/// `u_ij` as a complex number (`None` for ∞); convenience for inspection.
pub fn affine_direction(table: &DirectionTable, i: usize, j: usize) -> Option<Complex<f64>> {
    table.u(i, j).affine()
}
