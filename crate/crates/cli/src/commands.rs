use std::io::Write;
use std::time::Instant;

use atiyah_core::conjecture::{self, SweepReport};
use atiyah_core::search::{self, DescentOptions, ScanOptions, SearchRecord, SearchSpace, Status};
use atiyah_core::suites::{Suite, SuiteReport};
use atiyah_core::{det, Configuration, DetResult, Geometry, Precision};
use atiyah_moduli as moduli;
use serde::Serialize;
use serde_json::json;

use crate::input::{read_input, Input};
use crate::manifest::RunManifest;
use crate::{CliError, EvalArgs, Format, ModuliArgs, SearchArgs, Sink, SweepArgs, VerifyArgs};

/// A payload tagged with the run it belongs to.
#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    run_id: &'a str,
    #[serde(flatten)]
    inner: &'a T,
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> Result<String, CliError> {
    let s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    s.map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = crate::thread_count(threads)? {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Internal(format!("cannot start worker pool: {e}")))
}

pub(crate) fn eval(args: &EvalArgs, sink: &mut Sink) -> Result<bool, CliError> {
    let (input, digest) = read_input(&args.input)?;
    let precision: Precision = args.precision.into();
    let manifest = RunManifest::start(
        "eval",
        json!({"precision": precision, "tolerance": args.tolerance, "format": format!("{:?}", args.format)}),
        Some(digest),
        None,
    );
    let results = input
        .configurations()
        .iter()
        .enumerate()
        .map(|(k, cfg)| {
            det::evaluate(cfg, precision).map_err(|e| match &input {
                Input::Batch(_) => CliError::Validation(format!("configuration {k}: {e}")),
                Input::Single(_) => CliError::Validation(e.to_string()),
            })
        })
        .collect::<Result<Vec<DetResult>, _>>()?;
    let ok = results
        .iter()
        .all(|r| r.geometry == Geometry::Minkowski || r.abs_d >= 1.0 - args.tolerance);

    let payload = match args.format {
        Format::Json => {
            let mut s = match &input {
                Input::Single(_) => to_json(
                    &Tagged {
                        run_id: &manifest.run_id,
                        inner: &results[0],
                    },
                    true,
                )?,
                Input::Batch(_) => to_json(&json!({"run_id": manifest.run_id, "results": results}), true)?,
            };
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("geometry,n,D_re,D_im,absD,margin\n");
            for r in &results {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.geometry,
                    r.n,
                    csv_number(r.d_re),
                    csv_number(r.d_im),
                    csv_number(r.abs_d),
                    csv_number(r.margin)
                ));
            }
            s
        }
    };
    sink.emit(payload.as_bytes())?;
    sink.finish(manifest, Vec::new())?;
    Ok(ok)
}

pub(crate) fn verify(args: &VerifyArgs, stderr: &mut dyn Write, sink: &mut Sink) -> Result<bool, CliError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(CliError::Input)?]
    };
    if args.trials == Some(0) {
        return Err(CliError::Input("--trials must be at least 1".to_string()));
    }
    let manifest = RunManifest::start(
        "verify",
        json!({"suite": args.suite, "trials": args.trials}),
        None,
        Some(args.seed),
    );
    let pool = pool(args.threads)?;
    let reports: Vec<SuiteReport> = pool.install(|| {
        suites
            .iter()
            .map(|s| s.run(args.seed, args.trials.unwrap_or_else(|| s.default_trials())))
            .collect()
    });
    for r in &reports {
        for c in &r.checks {
            let _ = writeln!(
                stderr,
                "{} {}/{}: {} = {:e} over {} trials",
                if c.passed { "PASS" } else { "FAIL" },
                r.suite,
                c.name,
                c.metric,
                c.worst,
                c.trials
            );
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let mut s = to_json(
        &json!({"run_id": manifest.run_id, "seed": args.seed, "passed": passed, "reports": reports}),
        true,
    )?;
    s.push('\n');
    sink.emit(s.as_bytes())?;
    sink.finish(manifest, Vec::new())?;
    Ok(passed)
}

fn parse_grid(grid: &str, points: &[[f64; 3]]) -> Result<Vec<f64>, CliError> {
    if let Ok(count) = grid.trim().parse::<usize>() {
        return conjecture::default_grid(points, count).map_err(|e| CliError::Input(e.to_string()));
    }
    grid.split(',')
        .map(|r| {
            r.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("--grid: `{r}` is not a number")))
        })
        .collect()
}

pub(crate) fn sweep(args: &SweepArgs, sink: &mut Sink) -> Result<bool, CliError> {
    let (input, digest) = read_input(&args.input)?;
    let Input::Single(cfg) = input else {
        return Err(CliError::Input("sweep takes a single configuration".to_string()));
    };
    let points = match &cfg {
        Configuration::Euclidean(c) => c.points.clone(),
        Configuration::Hyperbolic(c) => c.points.clone(),
        Configuration::Minkowski(_) => {
            return Err(CliError::Input(
                "sweep needs a euclidean or hyperbolic configuration".to_string(),
            ))
        }
    };
    let radii = parse_grid(&args.grid, &points)?;
    let manifest = RunManifest::start(
        "sweep",
        json!({"grid": args.grid, "format": format!("{:?}", args.format)}),
        Some(digest),
        None,
    );
    let report: SweepReport = conjecture::sweep_radius(&points, &radii)?;
    let payload = match args.format {
        Format::Csv => {
            let mut s = String::from("R,absD\n");
            for (r, d) in report.radii.iter().zip(&report.abs_d) {
                s.push_str(&format!("{},{}\n", csv_number(*r), csv_number(*d)));
            }
            s
        }
        Format::Json => {
            let mut s = to_json(
                &Tagged {
                    run_id: &manifest.run_id,
                    inner: &report,
                },
                true,
            )?;
            s.push('\n');
            s
        }
    };
    sink.emit(payload.as_bytes())?;
    sink.finish(manifest, Vec::new())?;
    Ok(report.monotone)
}

pub(crate) fn search(args: &SearchArgs, stderr: &mut dyn Write, sink: &mut Sink) -> Result<bool, CliError> {
    let started = Instant::now();
    let descent = DescentOptions {
        max_iterations: args.max_iterations,
        ..DescentOptions::default()
    };
    let pool = pool(args.threads)?;

    let (manifest, records, summary) = if let Some(path) = &args.input {
        let (input, digest) = read_input(path)?;
        let Input::Single(start) = input else {
            return Err(CliError::Input(
                "search --input takes a single configuration".to_string(),
            ));
        };
        let manifest = RunManifest::start(
            "search",
            json!({"threshold": args.threshold, "max_iterations": args.max_iterations}),
            Some(digest),
            Some(args.seed),
        );
        let space = SearchSpace::for_configuration(&start);
        let d = search::minimize_abs_d(&start, &space, &descent)?;
        let margin = det::evaluate(&d.best, Precision::Double)?.margin;
        let (status, extended_abs_d) = search::classify(&d.best, d.best_abs_d, args.threshold);
        let record = SearchRecord {
            seed: args.seed,
            trial: 0,
            superluminal: d.best.is_superluminal(),
            start,
            best: d.best,
            start_abs_d: d.start_abs_d,
            best_abs_d: d.best_abs_d,
            margin,
            iterations: d.iterations,
            evaluations: d.evaluations,
            status,
            extended_abs_d,
            wall_time: started.elapsed(),
        };
        let summary = json!({
            "trials": 1,
            "seed": args.seed,
            "threshold": args.threshold,
            "min_absD": record.best_abs_d,
            "argmin_trial": 0,
            "candidates": u64::from(status == Status::Candidate),
        });
        (manifest, vec![record], summary)
    } else {
        let space = SearchSpace {
            radius: args.radius,
            velocity_cap: args.velocity_cap,
            allow_superluminal: args.allow_superluminal,
            ..SearchSpace::new(args.geometry.into(), args.n)
        };
        space.validate().map_err(|e| CliError::Input(e.to_string()))?;
        if args.trials == 0 {
            return Err(CliError::Input("--trials must be at least 1".to_string()));
        }
        let options = ScanOptions {
            trials: args.trials,
            seed: args.seed,
            threshold: args.threshold,
            descent,
        };
        let manifest = RunManifest::start(
            "search",
            json!({"space": space, "trials": args.trials, "threshold": args.threshold, "max_iterations": args.max_iterations}),
            None,
            Some(args.seed),
        );
        let report = pool.install(|| search::counterexample_scan(&space, &options))?;
        let summary = serde_json::to_value(&report.summary)
            .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
        (manifest, report.records, summary)
    };

    let mut lines = String::new();
    for r in &records {
        lines.push_str(&to_json(
            &Tagged {
                run_id: &manifest.run_id,
                inner: r,
            },
            false,
        )?);
        lines.push('\n');
    }
    let summary_line = to_json(&json!({"run_id": manifest.run_id, "summary": summary}), false)? + "\n";
    if sink.out.is_some() {
        sink.emit(lines.as_bytes())?;
        sink.print(summary_line.as_bytes())?;
    } else {
        lines.push_str(&summary_line);
        sink.emit(lines.as_bytes())?;
    }

    let candidates = records.iter().filter(|r| r.status == Status::Candidate).count();
    let flagged = records.iter().filter(|r| r.status == Status::Superluminal).count();
    let min = records.iter().map(|r| r.best_abs_d).fold(f64::INFINITY, f64::min);
    let _ = writeln!(
        stderr,
        "search: {} records, min |D| = {min:.17e}, {candidates} candidates, {flagged} superluminal, {:.2}s",
        records.len(),
        started.elapsed().as_secs_f64()
    );
    sink.finish(manifest, Vec::new())?;
    Ok(candidates == 0)
}

#[derive(Serialize)]
struct ModuliCheck {
    name: String,
    passed: bool,
}

pub(crate) fn moduli(args: &ModuliArgs, sink: &mut Sink) -> Result<bool, CliError> {
    let g = args.genus;
    if g < 2 {
        return Err(CliError::Input(format!("--genus must be at least 2, got {g}")));
    }
    let order = args.order.unwrap_or(6 * g as usize);
    let manifest = RunManifest::start("moduli", json!({"genus": g, "order": order}), None, None);

    let p = moduli::moduli_poincare(g)?;
    let full = &p * &moduli::jacobian_poincare(g);
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool| checks.push(ModuliCheck { name, passed });
    push(
        format!("degree = 6g-6 = {}", 6 * g - 6),
        p.degree() == Some(6 * g as usize - 6),
    );
    push("palindromic".to_string(), p.is_palindromic());
    push("non-negative coefficients".to_string(), p.is_nonnegative());
    push(
        format!("minimum + higher critical points = total space (order {order})"),
        moduli::morse_decomposition_check(g, order)?.holds,
    );
    push(
        format!("P_BG(U(2)) = P_BG(U(1)) * total space, squared denominators (order {order})"),
        moduli::rank_two_factorization(g, order, moduli::DenominatorForm::Squared)?.holds,
    );
    for q in [2, 3] {
        push(
            format!("P^1 zeta over F_{q} (order 10)"),
            moduli::verify_p1_zeta(q, 10)?,
        );
    }
    for (n, q) in [(2u32, 2u64), (2, 3), (3, 2), (3, 3)] {
        let brute = moduli::brute_force_flag_count(n, q)?;
        let formula = moduli::flag_count(n, q)?;
        push(
            format!("flags in F_{q}^{n}: {formula} = brute force {brute}"),
            formula == brute.into(),
        );
    }
    let unsquared = moduli::rank_two_factorization(g, order, moduli::DenominatorForm::Unsquared)?;
    let note = match unsquared.first_mismatch {
        Some(k) => format!(
            "the unsquared denominator form fails the rank-two factorization at order {k}; the squared form is used"
        ),
        None => "the unsquared denominator form also satisfies the rank-two factorization".to_string(),
    };
    let passed = checks.iter().all(|c| c.passed);

    let payload = match args.format {
        None => {
            let mut s = format!("P_M0(t) = {p}\nP_M0(t) * P_J(t) = {full}\n");
            for c in &checks {
                s.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
            }
            s.push_str(&format!("NOTE {note}\n"));
            s
        }
        Some(Format::Json) => {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            let mut s = to_json(
                &json!({
                    "run_id": manifest.run_id,
                    "genus": g,
                    "order": order,
                    "poincare": p.to_string(),
                    "coefficients": coeffs,
                    "with_jacobian": full.to_string(),
                    "checks": checks,
                    "note": note,
                    "passed": passed,
                }),
                true,
            )?;
            s.push('\n');
            s
        }
        Some(Format::Csv) => {
            let mut s = String::from("k,coefficient\n");
            for (k, c) in p.coeffs().iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
    };
    sink.emit(payload.as_bytes())?;
    sink.finish(manifest, Vec::new())?;
    Ok(passed)
}
