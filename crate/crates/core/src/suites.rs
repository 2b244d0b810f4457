//! Named property suites over seeded random configurations.
//!
//! Each suite runs its checks trial-parallel on the current rayon pool and
//! aggregates by trial index, so a report depends only on `(suite, seed,
//! trials)`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, EuclideanConfig, Geometry, HyperbolicConfig, MinkowskiConfig, WorldLine};
use crate::conjecture::{self, Ellipsoid};
use crate::det;
use crate::error::Error;
use crate::search::{self, DescentOptions, SearchSpace};
use crate::spinor::{mobius_apply_spinor, MobiusMap};
use crate::transform;
use crate::vec3::{self, Point3};

/// Failing trial indices kept per check.
const MAX_LISTED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Invariances,
    Collinear,
    Triangle,
    Monotonicity,
    Minkowski,
    Cluster,
    Evidence,
    Descent,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Invariances,
        Suite::Collinear,
        Suite::Triangle,
        Suite::Monotonicity,
        Suite::Minkowski,
        Suite::Cluster,
        Suite::Evidence,
        Suite::Descent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Invariances => "invariances",
            Suite::Collinear => "collinear",
            Suite::Triangle => "triangle",
            Suite::Monotonicity => "monotonicity",
            Suite::Minkowski => "minkowski",
            Suite::Cluster => "cluster",
            Suite::Evidence => "evidence",
            Suite::Descent => "descent",
        }
    }

    /// Trials used when none are requested.
    pub fn default_trials(self) -> u64 {
        match self {
            Suite::Invariances => 200,
            Suite::Collinear => 100,
            Suite::Triangle => 1000,
            Suite::Monotonicity => 1000,
            Suite::Minkowski => 1000,
            Suite::Cluster => 100,
            Suite::Evidence => 10_000,
            Suite::Descent => 50,
        }
    }

    pub fn run(self, seed: u64, trials: u64) -> SuiteReport {
        let checks = match self {
            Suite::Invariances => invariances(seed, trials),
            Suite::Collinear => collinear(seed, trials),
            Suite::Triangle => triangle(seed, trials),
            Suite::Monotonicity => monotonicity(seed, trials),
            Suite::Minkowski => minkowski(seed, trials),
            Suite::Cluster => cluster(seed, trials),
            Suite::Evidence => evidence(seed, trials),
            Suite::Descent => descent(seed, trials),
        };
        SuiteReport {
            suite: self,
            seed,
            trials,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.as_str()).collect();
            format!("unknown suite `{s}` (expected one of {}, or all)", names.join(", "))
        })
    }
}

/// What a check requires of each trial value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "limit")]
pub enum Criterion {
    AtMost(f64),
    Below(f64),
    AtLeast(f64),
    /// Values are recorded; nothing is asserted.
    Recorded,
}

impl Criterion {
    fn accepts(self, v: f64) -> bool {
        match self {
            Criterion::AtMost(t) => v <= t,
            Criterion::Below(t) => v < t,
            Criterion::AtLeast(t) => v >= t,
            Criterion::Recorded => true,
        }
    }

    fn lower_is_worse(self) -> bool {
        matches!(self, Criterion::AtLeast(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub metric: String,
    pub criterion: Criterion,
    pub trials: u64,
    pub passed: bool,
    /// Worst value seen (largest, or smallest for lower bounds).
    pub worst: f64,
    pub worst_trial: Option<u64>,
    pub failures: u64,
    /// First failing trial indices.
    pub failing_trials: Vec<u64>,
    /// Trials whose evaluation returned an error.
    pub errors: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn summarize(name: &str, metric: &str, criterion: Criterion, values: &[Result<f64, Error>]) -> CheckResult {
    let mut worst: Option<(u64, f64)> = None;
    let mut failing_trials = Vec::new();
    let (mut failures, mut errors) = (0u64, 0u64);
    let mut first_error = None;
    for (trial, v) in (0u64..).zip(values) {
        match v {
            Ok(v) => {
                let replace = match worst {
                    None => true,
                    Some((_, w)) if criterion.lower_is_worse() => *v < w || v.is_nan(),
                    Some((_, w)) => *v > w || v.is_nan(),
                };
                if replace {
                    worst = Some((trial, *v));
                }
                if !criterion.accepts(*v) {
                    failures += 1;
                    if failing_trials.len() < MAX_LISTED_FAILURES {
                        failing_trials.push(trial);
                    }
                }
            }
            Err(e) => {
                errors += 1;
                first_error.get_or_insert_with(|| format!("trial {trial}: {e}"));
            }
        }
    }
    CheckResult {
        name: name.to_string(),
        metric: metric.to_string(),
        criterion,
        trials: values.len() as u64,
        passed: failures == 0 && (errors == 0 || criterion == Criterion::Recorded),
        worst: worst.map_or(f64::NAN, |w| w.1),
        worst_trial: worst.map(|w| w.0),
        failures,
        failing_trials,
        errors,
        first_error,
    }
}

/// Runs `f` for every trial on stream `(seed, check << 32 | trial)`.
fn par_trials<T: Send>(
    seed: u64,
    check: u64,
    trials: u64,
    f: impl Fn(&mut ChaCha8Rng) -> Result<T, Error> + Sync,
) -> Vec<Result<T, Error>> {
    (0..trials)
        .into_par_iter()
        .map(|trial| f(&mut search::trial_rng(seed, (check << 32) | trial)))
        .collect()
}

fn check(
    name: &str,
    metric: &str,
    criterion: Criterion,
    seed: u64,
    id: u64,
    trials: u64,
    f: impl Fn(&mut ChaCha8Rng) -> Result<f64, Error> + Sync,
) -> CheckResult {
    summarize(name, metric, criterion, &par_trials(seed, id, trials, f))
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(f64::MIN_POSITIVE)
}

fn random_complex<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::new(rng.random_range(-r..r), rng.random_range(-r..r))
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Point3 {
    loop {
        let p = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = vec3::norm(p);
        if n > 0.1 && n < 1.0 {
            return vec3::scale(1.0 / n, p);
        }
    }
}

fn points_of(cfg: &Configuration) -> Vec<Point3> {
    match cfg {
        Configuration::Euclidean(c) => c.points.clone(),
        Configuration::Hyperbolic(c) => c.points.clone(),
        Configuration::Minkowski(c) => (0..c.lines.len()).map(|i| c.event_position(i)).collect(),
    }
}

/// A random Euclidean or hyperbolic configuration with `lo..=hi` points.
fn random_points_cfg<R: Rng + ?Sized>(
    rng: &mut R,
    geometry: Geometry,
    lo: usize,
    hi: usize,
) -> Result<Configuration, Error> {
    let n = rng.random_range(lo..=hi);
    search::random_configuration(&SearchSpace::new(geometry, n), rng)
}

fn random_any_cfg<R: Rng + ?Sized>(rng: &mut R) -> Result<Configuration, Error> {
    let geometry = [Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Minkowski][rng.random_range(0..3)];
    random_points_cfg(rng, geometry, 2, 8)
}

fn euclid(points: Vec<Point3>) -> Result<Configuration, Error> {
    Ok(Configuration::Euclidean(EuclideanConfig::new(points)?))
}

fn hyper(points: Vec<Point3>, radius: f64) -> Result<Configuration, Error> {
    Ok(Configuration::Hyperbolic(HyperbolicConfig::new(points, radius)?))
}

fn value(cfg: &Configuration) -> Result<Complex64, Error> {
    det::determinant_value(cfg, crate::precision::Precision::Double)
}

/// Same geometry and parameters as `cfg`, with new positions.
fn with_points(cfg: &Configuration, points: Vec<Point3>) -> Result<Configuration, Error> {
    match cfg {
        Configuration::Hyperbolic(c) => hyper(points, c.radius),
        _ => euclid(points),
    }
}

fn invariances(seed: u64, trials: u64) -> Vec<CheckResult> {
    const REL: &str = "relative deviation of D";
    vec![
        check(
            "lift rescaling",
            REL,
            Criterion::AtMost(1e-10),
            seed,
            1,
            trials,
            |rng| {
                let cfg = random_any_cfg(rng)?;
                let table = cfg.directions::<f64>()?;
                let scaled = table.map_all_lifts(|s| {
                    let lambda = Complex64::from_polar(
                        rng.random_range(0.1..10.0),
                        rng.random_range(0.0..std::f64::consts::TAU),
                    );
                    s.scale(lambda)
                })?;
                Ok(relative(
                    det::normalized_ratio(&table)?,
                    det::normalized_ratio(&scaled)?,
                ))
            },
        ),
        check("global mobius", REL, Criterion::AtMost(1e-9), seed, 2, trials, |rng| {
            let cfg = random_any_cfg(rng)?;
            let table = cfg.directions::<f64>()?;
            let m = loop {
                let [a, b, c, d] = [0; 4].map(|_| random_complex(rng, 2.0));
                if (a * d - b * c).norm() > 0.5 {
                    break MobiusMap::new(a, b, c, d)?;
                }
            };
            let moved = table.map_all_lifts(|s| mobius_apply_spinor(&m, s))?;
            Ok(relative(det::normalized_ratio(&table)?, det::normalized_ratio(&moved)?))
        }),
        check("permutation", REL, Criterion::AtMost(1e-10), seed, 3, trials, |rng| {
            let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
            let cfg = if rng.random_bool(0.5) {
                hyper(points_of(&cfg), 2.0)?
            } else {
                cfg
            };
            let d0 = value(&cfg)?;
            let mut worst = 0f64;
            for _ in 0..20 {
                let mut pts = points_of(&cfg);
                for k in (1..pts.len()).rev() {
                    pts.swap(k, rng.random_range(0..=k));
                }
                worst = worst.max(relative(d0, value(&with_points(&cfg, pts)?)?));
            }
            Ok(worst)
        }),
        check(
            "rotation and translation",
            REL,
            Criterion::AtMost(1e-9),
            seed,
            4,
            trials,
            |rng| {
                let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
                let pts = points_of(&cfg);
                let m = transform::random_rotation(rng);
                let offset = vec3::scale(rng.random_range(0.0..10.0), random_unit(rng));
                let moved = transform::translate(&transform::rotate(&pts, &m), offset);
                Ok(relative(value(&cfg)?, value(&euclid(moved)?)?))
            },
        ),
        check(
            "euclidean scale invariance",
            REL,
            Criterion::AtMost(1e-9),
            seed,
            5,
            trials,
            |rng| {
                let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
                let lambda = 10f64.powf(rng.random_range(-3.0..3.0));
                let scaled = transform::scale(&points_of(&cfg), lambda);
                Ok(relative(value(&cfg)?, value(&euclid(scaled)?)?))
            },
        ),
        check(
            "hyperbolic rescaling",
            REL,
            Criterion::AtMost(1e-10),
            seed,
            6,
            trials,
            |rng| {
                let cfg = random_points_cfg(rng, Geometry::Hyperbolic, 2, 8)?;
                let lambda = 10f64.powf(rng.random_range(-3.0..3.0));
                let scaled = transform::scale(&points_of(&cfg), lambda);
                Ok(relative(value(&cfg)?, value(&hyper(scaled, lambda)?)?))
            },
        ),
        check(
            "hyperbolic isometry",
            REL,
            Criterion::AtMost(1e-9),
            seed,
            7,
            trials,
            |rng| {
                let cfg = random_points_cfg(rng, Geometry::Hyperbolic, 2, 6)?;
                let pts = transform::scale(&points_of(&cfg), 0.9);
                let phi = rng.random_range(-1.0..1.0);
                let m = transform::random_rotation(rng);
                let moved = transform::klein_boost_z(&transform::rotate(&pts, &m), 1.0, phi);
                Ok(relative(value(&hyper(pts, 1.0)?)?, value(&hyper(moved, 1.0)?)?))
            },
        ),
        check(
            "reflection conjugates",
            REL,
            Criterion::AtMost(1e-10),
            seed,
            8,
            trials,
            |rng| {
                let geometry = if rng.random_bool(0.5) {
                    Geometry::Euclidean
                } else {
                    Geometry::Hyperbolic
                };
                let cfg = random_points_cfg(rng, geometry, 2, 8)?;
                let mirrored = with_points(&cfg, transform::reflect_z(&points_of(&cfg)))?;
                Ok(relative(value(&cfg)?.conj(), value(&mirrored)?))
            },
        ),
        check(
            "coplanar realness",
            "|Im D| / |D|",
            Criterion::AtMost(1e-10),
            seed,
            9,
            trials,
            |rng| {
                let n = rng.random_range(2..=8);
                let planar: Vec<Point3> = (0..n)
                    .map(|_| [rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5), 0.0])
                    .collect();
                let m = transform::random_rotation(rng);
                let pts = transform::rotate(&planar, &m);
                let cfg = if rng.random_bool(0.5) {
                    euclid(pts)?
                } else {
                    hyper(pts, 1.0)?
                };
                let d = value(&cfg)?;
                Ok(d.im.abs() / d.norm())
            },
        ),
    ]
}

/// `n` points on a random line, all within distance 0.9 of the origin.
fn collinear_points<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Point3> {
    let dir = random_unit(rng);
    let base = vec3::scale(rng.random_range(0.0..0.45), random_unit(rng));
    let mut params: Vec<f64> = Vec::with_capacity(n);
    while params.len() < n {
        let s = rng.random_range(-0.45..0.45);
        if params.iter().all(|p| (p - s).abs() > 1e-3) {
            params.push(s);
        }
    }
    params.iter().map(|s| vec3::add(base, vec3::scale(*s, dir))).collect()
}

fn collinear(seed: u64, trials: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (g, geometry) in [Geometry::Euclidean, Geometry::Hyperbolic].into_iter().enumerate() {
        for n in 2..=10usize {
            out.push(check(
                &format!("{geometry} n={n}"),
                "|D - 1|",
                Criterion::AtMost(1e-10),
                seed,
                (g as u64) << 8 | n as u64,
                trials,
                |rng| {
                    let pts = collinear_points(rng, n);
                    let cfg = match geometry {
                        Geometry::Hyperbolic => hyper(pts, 1.0)?,
                        _ => euclid(transform::scale(&pts, rng.random_range(0.1..100.0)))?,
                    };
                    Ok((value(&cfg)? - 1.0).norm())
                },
            ));
        }
    }
    out
}

fn random_triangle<R: Rng + ?Sized>(rng: &mut R) -> Result<[Point3; 3], Error> {
    let Configuration::Euclidean(c) = search::random_configuration(&SearchSpace::euclidean(3), rng)? else {
        unreachable!("euclidean space yields euclidean configurations")
    };
    Ok([c.points[0], c.points[1], c.points[2]])
}

fn triangle(seed: u64, trials: u64) -> Vec<CheckResult> {
    let results = par_trials(seed, 1, trials, |rng| {
        let tri = random_triangle(rng)?;
        let closed = conjecture::triangle_closed_form(&tri)?;
        let d = det::euclidean_value(&tri)?;
        Ok(((d - closed).norm(), closed))
    });
    let agreement: Vec<_> = results.iter().map(|r| r.clone().map(|v| v.0)).collect();
    let range: Vec<_> = results
        .iter()
        .map(|r| {
            r.clone().map(|(_, v)| {
                // Distance outside [1, 9/8]; zero inside.
                (1.0 - v).max(v - 1.125).max(0.0)
            })
        })
        .collect();
    vec![
        summarize(
            "closed form vs pipeline",
            "|D - closed form|",
            Criterion::AtMost(1e-10),
            &agreement,
        ),
        summarize(
            "closed form range",
            "distance outside [1, 9/8]",
            Criterion::AtMost(1e-12),
            &range,
        ),
    ]
}

fn monotonicity(seed: u64, trials: u64) -> Vec<CheckResult> {
    let sweeps = par_trials(seed, 1, trials, |rng| {
        let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
        let pts = points_of(&cfg);
        conjecture::sweep_radius(&pts, &conjecture::default_grid(&pts, 20)?)
    });
    let violation: Vec<_> = sweeps.iter().map(|r| r.clone().map(|s| s.max_violation)).collect();
    // Gap to D_inf falls like 1/R; require a 10x drop over two decades.
    let limit = par_trials(seed, 1, trials, |rng| {
        let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
        let pts = points_of(&cfg);
        let scale = pts.iter().map(|p| vec3::norm(*p)).fold(0.0, f64::max);
        let near = conjecture::sweep_radius(&pts, &[1e6 * scale])?.limit_gap();
        let far = conjecture::sweep_radius(&pts, &[1e8 * scale])?.limit_gap();
        Ok(if near < 1e-12 { 0.0 } else { far / near })
    });
    let ellipsoid = check(
        "ellipsoid (1,1,1) inside (2,1.5,1.2)",
        "|D_inner| - |D_outer| (positive means reversed)",
        Criterion::Recorded,
        seed,
        2,
        trials.min(200),
        |rng| {
            let cfg = random_points_cfg(rng, Geometry::Hyperbolic, 2, 6)?;
            let cmp = conjecture::ellipsoid_compare(
                &points_of(&cfg),
                &Ellipsoid::sphere(1.0),
                &Ellipsoid::axis_aligned([2.0, 1.5, 1.2]),
            )?;
            Ok(cmp.inner_abs_d - cmp.outer_abs_d)
        },
    );
    vec![
        summarize(
            "adjacent decrease",
            "max relative decrease of |D_R|",
            Criterion::AtMost(1e-9),
            &violation,
        ),
        summarize(
            "limit R -> infinity",
            "gap to |D_inf| at 1e8 max|x| over gap at 1e6 max|x|",
            Criterion::AtMost(0.1),
            &limit,
        ),
        ellipsoid,
    ]
}

fn minkowski(seed: u64, trials: u64) -> Vec<CheckResult> {
    let static_match = check(
        "static equals euclidean",
        "|D_static - D_euclidean|",
        Criterion::AtMost(1e-10),
        seed,
        1,
        trials.min(200),
        |rng| {
            let cfg = random_points_cfg(rng, Geometry::Euclidean, 2, 8)?;
            let pts = points_of(&cfg);
            let lines = pts.iter().map(|a| WorldLine { a: *a, b: [0.0; 3] }).collect();
            let times = (0..pts.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mink = Configuration::Minkowski(MinkowskiConfig::new(lines, times, false)?);
            let a = conjecture::check_bound(&mink, conjecture::BOUND_TOLERANCE)?;
            let b = conjecture::check_bound(&cfg, conjecture::BOUND_TOLERANCE)?;
            Ok((Complex64::new(a.d_re, a.d_im) - Complex64::new(b.d_re, b.d_im)).norm())
        },
    );
    let pair_bound = check(
        "subluminal n=2 bound",
        "|D|",
        Criterion::AtLeast(1.0 - 1e-9),
        seed,
        2,
        trials,
        |rng| search::random_configuration(&SearchSpace::minkowski(2, 0.99, false), rng).and_then(|c| det::abs_d(&c)),
    );
    let rejection = check(
        "superluminal rejected unless flagged",
        "1 if the opt-in contract is violated",
        Criterion::AtMost(0.0),
        seed,
        3,
        trials.min(200),
        |rng| {
            let space = SearchSpace::minkowski(3, 3.0, true);
            let cfg = loop {
                let Configuration::Minkowski(c) = search::random_configuration(&space, rng)? else {
                    unreachable!("minkowski space yields minkowski configurations")
                };
                if c.lines.iter().any(|l| l.speed() >= 1.0) {
                    break c;
                }
            };
            let rejected = matches!(
                MinkowskiConfig::new(cfg.lines.clone(), cfg.event_times.clone(), false),
                Err(Error::Superluminal { .. })
            );
            let accepted = MinkowskiConfig::new(cfg.lines, cfg.event_times, true).is_ok();
            Ok(if rejected && accepted { 0.0 } else { 1.0 })
        },
    );
    let triple = check(
        "subluminal n=3 values",
        "|D|",
        Criterion::Recorded,
        seed,
        4,
        trials,
        |rng| search::random_configuration(&SearchSpace::minkowski(3, 0.99, false), rng).and_then(|c| det::abs_d(&c)),
    );
    vec![static_match, pair_bound, rejection, triple]
}

fn cluster(seed: u64, trials: u64) -> Vec<CheckResult> {
    // Deviations this small are already at rounding level and count as converged.
    const NOISE: f64 = 1e-13;
    vec![check(
        "decoupling ladder",
        "max ratio of consecutive deviations over {10, 100, 1000} x diameter",
        Criterion::Below(1.0),
        seed,
        1,
        trials,
        |rng| {
            let sample = |rng: &mut ChaCha8Rng| -> Result<Vec<Point3>, Error> {
                let n = rng.random_range(1..=4);
                if n == 1 {
                    return Ok(vec![vec3::scale(0.5, random_unit(rng))]);
                }
                Ok(points_of(&search::random_configuration(
                    &SearchSpace::euclidean(n),
                    rng,
                )?))
            };
            let a = sample(rng)?;
            let b = sample(rng)?;
            let seps = conjecture::separation_ladder(&a, &b, &[10.0, 100.0, 1000.0]);
            let dev = conjecture::cluster_check(&a, &b, &seps, random_unit(rng))?;
            Ok(dev
                .windows(2)
                .map(|w| {
                    if w[1] <= NOISE && w[0] <= NOISE {
                        0.0
                    } else {
                        w[1] / w[0]
                    }
                })
                .fold(0.0, f64::max))
        },
    )]
}

/// Sizes of the Euclidean evidence run, and the size of the large-n tail.
pub const EVIDENCE_SIZES: [usize; 5] = [4, 6, 8, 10, 12];
pub const EVIDENCE_LARGE_N: usize = 30;
pub const EVIDENCE_THRESHOLD: f64 = 1.0 - 1e-9;

fn evidence_check(name: String, space: SearchSpace, trials: u64, seed: u64) -> CheckResult {
    let mut result = match search::evidence_scan(&space, trials, seed, EVIDENCE_THRESHOLD) {
        Ok(rep) => {
            let values: Vec<Result<f64, Error>> = vec![Ok(rep.min_abs_d)];
            let mut r = summarize(&name, "min |D|", Criterion::AtLeast(EVIDENCE_THRESHOLD), &values);
            r.trials = trials;
            r.worst_trial = Some(rep.argmin_trial);
            // Only hits confirmed in extended precision count as evidence failures;
            // the rest are pipeline artefacts and are reported as errors.
            let candidates = rep.candidates().count() as u64;
            let artefacts = rep.hits.len() as u64 - candidates;
            r.failures = candidates;
            r.failing_trials = rep.candidates().take(MAX_LISTED_FAILURES).map(|h| h.trial).collect();
            r.errors = artefacts + rep.pipeline_failures.len() as u64;
            if let Some((t, msg)) = rep.pipeline_failures.first() {
                r.first_error = Some(format!("trial {t}: {msg}"));
            } else if artefacts > 0 {
                r.first_error = Some(format!(
                    "{artefacts} double-precision hits not confirmed in extended precision"
                ));
            }
            r.passed = r.failures == 0 && r.errors == 0;
            r
        }
        Err(e) => summarize(&name, "min |D|", Criterion::AtLeast(EVIDENCE_THRESHOLD), &[Err(e)]),
    };
    result.trials = trials;
    result
}

fn evidence(seed: u64, trials: u64) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = EVIDENCE_SIZES
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            evidence_check(
                format!("euclidean n={n}"),
                SearchSpace::euclidean(n),
                trials,
                seed.wrapping_add(k as u64),
            )
        })
        .collect();
    out.push(evidence_check(
        format!("euclidean n={EVIDENCE_LARGE_N}"),
        SearchSpace::euclidean(EVIDENCE_LARGE_N),
        (trials / 100).max(1),
        seed.wrapping_add(EVIDENCE_SIZES.len() as u64),
    ));
    out.push(evidence_check(
        "hyperbolic n=6 R=1".to_string(),
        SearchSpace::hyperbolic(6, 1.0),
        (trials / 10).max(1),
        seed.wrapping_add(EVIDENCE_SIZES.len() as u64 + 1),
    ));
    out
}

fn descent(seed: u64, trials: u64) -> Vec<CheckResult> {
    let space = SearchSpace::euclidean(3);
    let options = DescentOptions::default();
    let runs = par_trials(seed, 1, trials, |rng| {
        let start = search::random_configuration(&space, rng)?;
        let d = search::minimize_abs_d(&start, &space, &options)?;
        Ok((d.start_abs_d, d.best_abs_d))
    });
    let best: Vec<_> = runs.iter().map(|r| r.clone().map(|v| v.1)).collect();
    let soundness: Vec<_> = runs.iter().map(|r| r.clone().map(|(s, b)| b - s)).collect();
    vec![
        summarize(
            "reaches collinear basin",
            "best |D|",
            Criterion::AtMost(1.0 + 1e-6),
            &best,
        ),
        summarize("never below bound", "best |D|", Criterion::AtLeast(1.0 - 1e-9), &best),
        summarize(
            "never worse than start",
            "best - start",
            Criterion::AtMost(0.0),
            &soundness,
        ),
    ]
}
