//! Random sampling, local descent on `|D|`, and seeded counterexample scans.
//!
//! Every trial draws from its own ChaCha8 stream keyed by `(seed, trial)`, so
//! results do not depend on how trials are spread over worker threads.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, EuclideanConfig, Geometry, HyperbolicConfig, MinkowskiConfig, WorldLine};
use crate::det;
use crate::error::Error;
use crate::precision::Precision;
use crate::vec3::{self, Point3};

/// Draws per point before giving up on the distinctness floor.
pub const MAX_ATTEMPTS: usize = 100;
/// Default candidate threshold of a scan.
pub const DEFAULT_THRESHOLD: f64 = 1.0 - 1e-6;
/// Projected hyperbolic points stay this far (relative) inside the ball.
const BALL_MARGIN: f64 = 1e-9;
/// Projected subluminal velocities stay this far below light speed.
const LIGHT_MARGIN: f64 = 1e-9;

/// The RNG of trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Where random configurations are drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpace {
    pub geometry: Geometry,
    pub n: usize,
    /// Positions and event times are drawn from `[-half_width, half_width]`.
    pub half_width: f64,
    /// Ball radius (hyperbolic only).
    pub radius: f64,
    /// Largest speed of a world line (Minkowski only).
    pub velocity_cap: f64,
    #[serde(default)]
    pub allow_superluminal: bool,
    /// Smallest max-norm separation between sampled points or events.
    pub distinctness_floor: f64,
}

impl SearchSpace {
    pub fn euclidean(n: usize) -> Self {
        Self {
            geometry: Geometry::Euclidean,
            n,
            half_width: 1.0,
            radius: 1.0,
            velocity_cap: 0.99,
            allow_superluminal: false,
            distinctness_floor: 1e-6,
        }
    }

    pub fn hyperbolic(n: usize, radius: f64) -> Self {
        Self {
            geometry: Geometry::Hyperbolic,
            radius,
            ..Self::euclidean(n)
        }
    }

    pub fn minkowski(n: usize, velocity_cap: f64, allow_superluminal: bool) -> Self {
        Self {
            geometry: Geometry::Minkowski,
            velocity_cap,
            allow_superluminal,
            ..Self::euclidean(n)
        }
    }

    pub fn new(geometry: Geometry, n: usize) -> Self {
        match geometry {
            Geometry::Euclidean => Self::euclidean(n),
            Geometry::Hyperbolic => Self::hyperbolic(n, 1.0),
            Geometry::Minkowski => Self::minkowski(n, 0.99, false),
        }
    }

    /// The space a descent from `cfg` moves in: same geometry, size, ball and
    /// superluminal opt-in.
    pub fn for_configuration(cfg: &Configuration) -> Self {
        match cfg {
            Configuration::Euclidean(c) => Self::euclidean(c.points.len()),
            Configuration::Hyperbolic(c) => Self::hyperbolic(c.points.len(), c.radius),
            Configuration::Minkowski(c) => {
                let fastest = c.lines.iter().map(WorldLine::speed).fold(0.0, f64::max);
                if c.allow_superluminal {
                    Self::minkowski(c.lines.len(), fastest.max(1.0) * 2.0, true)
                } else {
                    Self::minkowski(c.lines.len(), fastest.max(0.99), false)
                }
            }
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidSearchSpace(msg));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return bad(format!("half_width must be positive, got {}", self.half_width));
        }
        if !(self.distinctness_floor >= 0.0 && self.distinctness_floor.is_finite()) {
            return bad(format!(
                "distinctness_floor must be non-negative, got {}",
                self.distinctness_floor
            ));
        }
        match self.geometry {
            Geometry::Hyperbolic if !(self.radius > 0.0 && self.radius.is_finite()) => {
                Err(Error::InvalidRadius { radius: self.radius })
            }
            Geometry::Minkowski if !(self.velocity_cap >= 0.0 && self.velocity_cap.is_finite()) => {
                bad(format!("velocity_cap must be non-negative, got {}", self.velocity_cap))
            }
            Geometry::Minkowski if !self.allow_superluminal && self.velocity_cap >= 1.0 => bad(format!(
                "velocity_cap {} reaches light speed without allow_superluminal",
                self.velocity_cap
            )),
            _ => Ok(()),
        }
    }

    /// Length of the flattened coordinate vector.
    pub fn dimension(&self) -> usize {
        match self.geometry {
            Geometry::Minkowski => 7 * self.n,
            _ => 3 * self.n,
        }
    }

    fn effective_cap(&self) -> f64 {
        if self.allow_superluminal {
            self.velocity_cap
        } else {
            self.velocity_cap.min(1.0 - LIGHT_MARGIN)
        }
    }

    /// Moves a coordinate vector back inside the bounds.
    pub fn project(&self, x: &mut [f64]) {
        match self.geometry {
            Geometry::Euclidean => {}
            Geometry::Hyperbolic => {
                let limit = self.radius * (1.0 - BALL_MARGIN);
                for p in x.chunks_exact_mut(3) {
                    clamp_norm(p, limit);
                }
            }
            Geometry::Minkowski => {
                let cap = self.effective_cap();
                for line in x.chunks_exact_mut(7) {
                    clamp_norm(&mut line[3..6], cap);
                }
            }
        }
    }

    /// Builds and validates the configuration a coordinate vector describes.
    pub fn unflatten(&self, x: &[f64]) -> Result<Configuration, Error> {
        if x.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                what: "coordinate vector",
                expected: self.dimension(),
                got: x.len(),
            });
        }
        let point = |c: &[f64]| [c[0], c[1], c[2]];
        Ok(match self.geometry {
            Geometry::Euclidean => {
                Configuration::Euclidean(EuclideanConfig::new(x.chunks_exact(3).map(point).collect())?)
            }
            Geometry::Hyperbolic => Configuration::Hyperbolic(HyperbolicConfig::new(
                x.chunks_exact(3).map(point).collect(),
                self.radius,
            )?),
            Geometry::Minkowski => {
                let lines = x
                    .chunks_exact(7)
                    .map(|c| WorldLine {
                        a: point(&c[0..3]),
                        b: point(&c[3..6]),
                    })
                    .collect();
                let times = x.chunks_exact(7).map(|c| c[6]).collect();
                Configuration::Minkowski(MinkowskiConfig::new(lines, times, self.allow_superluminal)?)
            }
        })
    }

    /// Scale of a coordinate step that moves points noticeably.
    fn step_scale(&self) -> f64 {
        match self.geometry {
            Geometry::Hyperbolic => self.radius,
            _ => self.half_width,
        }
    }
}

fn clamp_norm(v: &mut [f64], limit: f64) {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > limit {
        let s = limit / norm;
        v.iter_mut().for_each(|c| *c *= s);
    }
}

/// Flattens points as `x, y, z` per point; world lines as `a, b, t` per line.
pub fn flatten(cfg: &Configuration) -> Vec<f64> {
    match cfg {
        Configuration::Euclidean(c) => c.points.iter().flatten().copied().collect(),
        Configuration::Hyperbolic(c) => c.points.iter().flatten().copied().collect(),
        Configuration::Minkowski(c) => c
            .lines
            .iter()
            .zip(&c.event_times)
            .flat_map(|(l, t)| l.a.into_iter().chain(l.b).chain([*t]))
            .collect(),
    }
}

fn uniform_box<R: Rng + ?Sized>(rng: &mut R, h: f64) -> Point3 {
    [
        rng.random_range(-h..=h),
        rng.random_range(-h..=h),
        rng.random_range(-h..=h),
    ]
}

/// Uniform in the open ball of radius `r`, by rejection from the cube.
fn uniform_ball<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Point3 {
    loop {
        let p = uniform_box(rng, r);
        if vec3::norm(p) < r {
            return p;
        }
    }
}

/// A configuration drawn uniformly from the space.
pub fn random_configuration<R: Rng + ?Sized>(space: &SearchSpace, rng: &mut R) -> Result<Configuration, Error> {
    space.validate()?;
    let floor = space.distinctness_floor;
    let n = space.n;
    match space.geometry {
        Geometry::Euclidean | Geometry::Hyperbolic => {
            let mut points: Vec<Point3> = Vec::with_capacity(n);
            for _ in 0..n {
                let p = draw_distinct(rng, &points, floor, n, |rng| match space.geometry {
                    Geometry::Hyperbolic => uniform_ball(rng, space.radius),
                    _ => uniform_box(rng, space.half_width),
                })?;
                points.push(p);
            }
            space.unflatten(&points.concat())
        }
        Geometry::Minkowski => {
            let cap = space.effective_cap();
            let mut events: Vec<[f64; 4]> = Vec::with_capacity(n);
            let mut x = Vec::with_capacity(7 * n);
            for _ in 0..n {
                let mut velocity = [0.0; 3];
                let event = draw_distinct(rng, &events, floor, n, |rng| {
                    velocity = if cap > 0.0 { uniform_ball(rng, cap) } else { [0.0; 3] };
                    let pos = uniform_box(rng, space.half_width);
                    let t = rng.random_range(-space.half_width..=space.half_width);
                    [t, pos[0], pos[1], pos[2]]
                })?;
                let pos = [event[1], event[2], event[3]];
                let a = vec3::sub(pos, vec3::scale(event[0], velocity));
                x.extend(a.into_iter().chain(velocity).chain([event[0]]));
                events.push(event);
            }
            space.unflatten(&x)
        }
    }
}

fn draw_distinct<R: Rng + ?Sized, const K: usize>(
    rng: &mut R,
    existing: &[[f64; K]],
    floor: f64,
    n: usize,
    mut draw: impl FnMut(&mut R) -> [f64; K],
) -> Result<[f64; K], Error> {
    for _ in 0..MAX_ATTEMPTS {
        let p = draw(rng);
        if existing.iter().all(|q| vec3::max_dist(&p, q) >= floor) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted {
        n,
        attempts: MAX_ATTEMPTS,
    })
}

/// `random_configuration` on the stream of trial 0 under `seed`.
pub fn seeded_configuration(space: &SearchSpace, seed: u64) -> Result<Configuration, Error> {
    random_configuration(space, &mut trial_rng(seed, 0))
}

/// Regular polyhedra whose vertices can seed a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polyhedron {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
}

impl Polyhedron {
    /// Vertices on the unit sphere.
    pub fn vertices(self) -> Vec<Point3> {
        let raw: Vec<Point3> = match self {
            Polyhedron::Tetrahedron => vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]],
            Polyhedron::Octahedron => (0..3)
                .flat_map(|k| {
                    [1.0, -1.0].map(|s| {
                        let mut p = [0.0; 3];
                        p[k] = s;
                        p
                    })
                })
                .collect(),
            Polyhedron::Cube => (0..8)
                .map(|m| [0, 1, 2].map(|k| if m >> k & 1 == 1 { 1.0 } else { -1.0 }))
                .collect(),
            Polyhedron::Icosahedron => {
                let phi = (1.0 + 5f64.sqrt()) / 2.0;
                let mut v = Vec::with_capacity(12);
                for s1 in [1.0, -1.0] {
                    for s2 in [phi, -phi] {
                        v.push([0.0, s1, s2]);
                        v.push([s1, s2, 0.0]);
                        v.push([s2, 0.0, s1]);
                    }
                }
                v
            }
        };
        raw.into_iter().map(|p| vec3::scale(1.0 / vec3::norm(p), p)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescentOptions {
    /// Simplex iterations per restart.
    pub max_iterations: usize,
    /// Stop when the simplex spread falls below this relative to the best value.
    pub tolerance: f64,
    /// Initial simplex edge, relative to the space scale.
    pub initial_step: f64,
    /// Simplex rebuilds around the best point after convergence.
    pub restarts: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            max_iterations: 4000,
            tolerance: 1e-12,
            initial_step: 0.1,
            restarts: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub best: Configuration,
    pub start_abs_d: f64,
    pub best_abs_d: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Nelder–Mead descent of `|D|` from `start`, inside `space`.
///
/// Trial points are projected into the bounds; trials that fail to build or
/// evaluate score `+∞`. The result is never worse than `start`.
pub fn minimize_abs_d(start: &Configuration, space: &SearchSpace, options: &DescentOptions) -> Result<Descent, Error> {
    space.validate()?;
    if start.geometry() != space.geometry || start.len() != space.n {
        return Err(Error::InvalidSearchSpace(format!(
            "start is {} with n={}, space is {} with n={}",
            start.geometry(),
            start.len(),
            space.geometry,
            space.n
        )));
    }
    let start_abs_d = det::abs_d(start)?;
    let x0 = flatten(start);
    let mut evaluations = 0usize;
    let mut objective = |x: &mut Vec<f64>| {
        evaluations += 1;
        space.project(x);
        space
            .unflatten(x)
            .and_then(|cfg| det::abs_d(&cfg))
            .unwrap_or(f64::INFINITY)
    };

    let mut best = x0.clone();
    let mut best_f = start_abs_d;
    let mut iterations = 0;
    let mut step = options.initial_step * space.step_scale();
    for round in 0..=options.restarts {
        let (x, f, iters) = nelder_mead(&mut objective, &best, best_f, step, options);
        iterations += iters;
        let improved = best_f - f > options.tolerance * best_f.abs();
        if f < best_f {
            best = x;
            best_f = f;
        }
        if round > 0 && !improved {
            break;
        }
        step *= 0.1;
    }

    // `best` only ever holds projected, successfully evaluated vectors or x0.
    let best_cfg = space.unflatten(&best).unwrap_or_else(|_| start.clone());
    Ok(Descent {
        best: best_cfg,
        start_abs_d,
        best_abs_d: best_f,
        iterations,
        evaluations,
    })
}

/// One simplex run from `x0` (already scored `f0`). Returns the best vertex.
fn nelder_mead(
    f: &mut impl FnMut(&mut Vec<f64>) -> f64,
    x0: &[f64],
    f0: f64,
    step: f64,
    options: &DescentOptions,
) -> (Vec<f64>, f64, usize) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f0));
    for k in 0..dim {
        let mut x = x0.to_vec();
        x[k] += step;
        let mut fx = f(&mut x);
        if !fx.is_finite() {
            x = x0.to_vec();
            x[k] -= step;
            fx = f(&mut x);
        }
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    while iterations < options.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[dim].1);
        if hi - lo <= options.tolerance * lo.abs() {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            centroid.iter_mut().zip(x).for_each(|(c, v)| *c += v);
        }
        centroid.iter_mut().for_each(|c| *c /= dim as f64);
        let towards = |from: &[f64], coef: f64| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, w)| c + coef * (c - w)).collect()
        };

        let worst = simplex[dim].0.clone();
        let mut xr = towards(&worst, ALPHA);
        let fr = f(&mut xr);
        if fr < simplex[0].1 {
            let mut xe = towards(&worst, GAMMA);
            let fe = f(&mut xe);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (mut xc, fc) = if fr < hi {
            let mut xc = towards(&worst, RHO * ALPHA);
            let fc = f(&mut xc);
            (xc, fc)
        } else {
            let mut xc = towards(&worst, -RHO);
            let fc = f(&mut xc);
            (xc, fc)
        };
        if fc < fr.min(hi) {
            simplex[dim] = (std::mem::take(&mut xc), fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, fx) in simplex.iter_mut().skip(1) {
            let mut shrunk: Vec<f64> = best.iter().zip(x.iter()).map(|(b, v)| b + SIGMA * (v - b)).collect();
            *fx = f(&mut shrunk);
            *x = shrunk;
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx, iterations)
}

/// How a low value was classified after the extended-precision recheck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// `|D|` at or above the threshold in double precision.
    AboveThreshold,
    /// Below the threshold in both double and extended precision.
    Candidate,
    /// Below in double but not in extended precision: a pipeline artefact.
    RoundingArtifact,
    /// Below the threshold with faster-than-light motion; never a counterexample.
    Superluminal,
}

/// Re-evaluates a low value in extended precision and labels it.
pub fn classify(cfg: &Configuration, abs_d: f64, threshold: f64) -> (Status, Option<f64>) {
    if abs_d >= threshold {
        return (Status::AboveThreshold, None);
    }
    let extended = det::determinant_value(cfg, Precision::Extended).map(|d| d.norm()).ok();
    let status = match extended {
        Some(e) if e >= threshold => Status::RoundingArtifact,
        _ if cfg.is_superluminal() => Status::Superluminal,
        Some(_) => Status::Candidate,
        None => Status::RoundingArtifact,
    };
    (status, extended)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub seed: u64,
    pub trial: u64,
    pub start: Configuration,
    pub best: Configuration,
    #[serde(rename = "start_absD")]
    pub start_abs_d: f64,
    #[serde(rename = "best_absD")]
    pub best_abs_d: f64,
    pub margin: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub superluminal: bool,
    pub status: Status,
    #[serde(rename = "extended_absD", skip_serializing_if = "Option::is_none", default)]
    pub extended_abs_d: Option<f64>,
    /// Not serialized, so that records are byte-identical across reruns.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Upper edges of the histogram bins of final `|D|`; the last bin is open.
pub const HISTOGRAM_EDGES: [f64; 11] = [
    0.9,
    1.0 - 1e-6,
    1.0 - 1e-9,
    1.0 + 1e-9,
    1.0 + 1e-6,
    1.0 + 1e-3,
    1.01,
    1.1,
    1.5,
    2.0,
    10.0,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// `counts[k]` holds values in `[edges[k-1], edges[k])`; one extra open bin at each end.
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(values: impl IntoIterator<Item = f64>) -> Self {
        let mut counts = vec![0u64; HISTOGRAM_EDGES.len() + 1];
        for v in values {
            counts[HISTOGRAM_EDGES.partition_point(|e| *e <= v)] += 1;
        }
        Self {
            edges: HISTOGRAM_EDGES.to_vec(),
            counts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub trials: u64,
    pub seed: u64,
    pub threshold: f64,
    pub descent: DescentOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            threshold: DEFAULT_THRESHOLD,
            descent: DescentOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub space: SearchSpace,
    pub trials: u64,
    pub seed: u64,
    pub threshold: f64,
    #[serde(rename = "min_absD")]
    pub min_abs_d: f64,
    pub argmin_trial: u64,
    pub histogram: Histogram,
    pub candidates: u64,
    pub rounding_artifacts: u64,
    pub superluminal: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub summary: ScanSummary,
    pub records: Vec<SearchRecord>,
}

fn run_trial(space: &SearchSpace, options: &ScanOptions, trial: u64) -> Result<SearchRecord, Error> {
    let started = Instant::now();
    let start = random_configuration(space, &mut trial_rng(options.seed, trial))?;
    let descent = minimize_abs_d(&start, space, &options.descent)?;
    let margin = det::evaluate(&descent.best, Precision::Double)?.margin;
    let (status, extended_abs_d) = classify(&descent.best, descent.best_abs_d, options.threshold);
    Ok(SearchRecord {
        seed: options.seed,
        trial,
        superluminal: descent.best.is_superluminal(),
        start,
        best: descent.best,
        start_abs_d: descent.start_abs_d,
        best_abs_d: descent.best_abs_d,
        margin,
        iterations: descent.iterations,
        evaluations: descent.evaluations,
        status,
        extended_abs_d,
        wall_time: started.elapsed(),
    })
}

/// Random restarts of [`minimize_abs_d`], run in parallel on the current
/// rayon pool. Records come back ordered by trial index.
pub fn counterexample_scan(space: &SearchSpace, options: &ScanOptions) -> Result<ScanReport, Error> {
    space.validate()?;
    if options.trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".to_string()));
    }
    let results: Vec<Result<SearchRecord, Error>> = (0..options.trials)
        .into_par_iter()
        .map(|trial| run_trial(space, options, trial))
        .collect();
    let records = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let (argmin, min) = records
        .iter()
        .map(|r| (r.trial, r.best_abs_d))
        .fold((0, f64::INFINITY), |acc, (t, v)| if v < acc.1 { (t, v) } else { acc });
    let count = |s: Status| records.iter().filter(|r| r.status == s).count() as u64;
    let summary = ScanSummary {
        space: space.clone(),
        trials: options.trials,
        seed: options.seed,
        threshold: options.threshold,
        min_abs_d: min,
        argmin_trial: argmin,
        histogram: Histogram::new(records.iter().map(|r| r.best_abs_d)),
        candidates: count(Status::Candidate),
        rounding_artifacts: count(Status::RoundingArtifact),
        superluminal: count(Status::Superluminal),
    };
    Ok(ScanReport { summary, records })
}

/// A sampled configuration whose `|D|` fell below the evidence threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceHit {
    pub trial: u64,
    #[serde(rename = "absD")]
    pub abs_d: f64,
    #[serde(rename = "extended_absD")]
    pub extended_abs_d: Option<f64>,
    pub status: Status,
    pub configuration: Configuration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub space: SearchSpace,
    pub trials: u64,
    pub seed: u64,
    pub threshold: f64,
    #[serde(rename = "min_absD")]
    pub min_abs_d: f64,
    pub argmin_trial: u64,
    pub hits: Vec<EvidenceHit>,
    /// Trials whose evaluation failed, as `(trial, message)`.
    pub pipeline_failures: Vec<(u64, String)>,
}

impl EvidenceReport {
    /// Hits that survived the extended-precision recheck.
    pub fn candidates(&self) -> impl Iterator<Item = &EvidenceHit> {
        self.hits.iter().filter(|h| h.status == Status::Candidate)
    }
}

/// Evaluates `|D|` on `trials` random configurations without descent.
pub fn evidence_scan(space: &SearchSpace, trials: u64, seed: u64, threshold: f64) -> Result<EvidenceReport, Error> {
    space.validate()?;
    type Sample = Result<(Configuration, Result<f64, Error>), Error>;
    let results: Vec<Sample> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let cfg = random_configuration(space, &mut trial_rng(seed, trial))?;
            let value = det::abs_d(&cfg);
            Ok((cfg, value))
        })
        .collect();

    let mut report = EvidenceReport {
        space: space.clone(),
        trials,
        seed,
        threshold,
        min_abs_d: f64::INFINITY,
        argmin_trial: 0,
        hits: Vec::new(),
        pipeline_failures: Vec::new(),
    };
    for (trial, result) in (0..trials).zip(results) {
        let (cfg, value) = result?;
        let abs_d = match value {
            Ok(v) if v.is_finite() => v,
            Ok(v) => {
                report.pipeline_failures.push((trial, format!("non-finite |D| = {v}")));
                continue;
            }
            Err(e) => {
                report.pipeline_failures.push((trial, e.to_string()));
                continue;
            }
        };
        if abs_d < report.min_abs_d {
            report.min_abs_d = abs_d;
            report.argmin_trial = trial;
        }
        if abs_d < threshold {
            let (status, extended_abs_d) = classify(&cfg, abs_d, threshold);
            report.hits.push(EvidenceHit {
                trial,
                abs_d,
                extended_abs_d,
                status,
                configuration: cfg,
            });
        }
    }
    Ok(report)
}
