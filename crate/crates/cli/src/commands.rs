use serde::Serialize;
use serde_json::{json, Map, Value};

use instanton_lab::angular::{angular_spectrum, fd_oracle_spectrum, AngularSolverConfig};
use instanton_lab::geometry::{chart_regularity_probe, identification_lattice, random_points, ProbeKind};
use instanton_lab::np_formalism::{
    a1_identity_check, np_residuals, spin_coeffs_closed, spin_coeffs_numeric, weyl_scalars_closed,
    weyl_scalars_numeric, NPResidualReport,
};
use instanton_lab::radial::{
    asymptotic_normal_solution, fit_normal_form, liouville_tail, radial_integrate, singular_points, Branch,
    RadialConfig, RadialSeed,
};
use instanton_lab::separation::{lattice_check, mode_lattice, Equation, LatticeConvention, ModeIndex, PotentialSpec};
use instanton_lab::stability::{
    connection_check, mode_scan, negativity_certificate, Certification, NegativityConfig, RowVerdict, ScanConfig,
    ScanVerdict,
};
use instanton_lab::{Background, IntegratorConfig64};

use crate::args::*;
use crate::{Body, Failure};

type Outcome = Result<(Value, Result<Body, Failure>), Failure>;

pub(crate) fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::NpCheck(_) => "np-check",
        Command::Weyl(_) => "weyl",
        Command::Lattice(_) => "lattice",
        Command::Angular(_) => "angular",
        Command::Radial(_) => "radial",
        Command::Certify(_) => "certify",
        Command::Modescan(_) => "modescan",
        Command::ChartCheck(_) => "chart-check",
    }
}

pub(crate) fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::NpCheck(a) => &a.common,
        Command::Weyl(a) => &a.common,
        Command::Lattice(a) => &a.common,
        Command::Angular(a) => &a.common,
        Command::Radial(a) => &a.common,
        Command::Certify(a) => &a.common,
        Command::Modescan(a) => &a.common,
        Command::ChartCheck(a) => &a.common,
    }
}

pub(crate) fn tabular(cmd: &Command) -> bool {
    matches!(cmd, Command::Modescan(_))
}

pub(crate) fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::NpCheck(a) => np_check(a),
        Command::Weyl(a) => weyl(a),
        Command::Lattice(a) => lattice(a),
        Command::Angular(a) => angular(a),
        Command::Radial(a) => radial(a),
        Command::Certify(a) => certify(a),
        Command::Modescan(a) => modescan(a),
        Command::ChartCheck(a) => chart_check(a),
    }
}

fn val<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn pass_fail(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

fn background(c: &Common) -> Result<Background, Failure> {
    Ok(match c.background {
        BackgroundChoice::Kerr => Background::kerr(c.mass, c.spin)?,
        BackgroundChoice::Taubbolt => Background::taub_bolt(c.nut)?,
    })
}

fn convention(c: &Common) -> LatticeConvention {
    if c.paper_lattice {
        LatticeConvention::Paper
    } else {
        LatticeConvention::Invariance
    }
}

fn equation(e: EquationChoice) -> Equation {
    match e {
        EquationChoice::Plain => Equation::Plain,
        EquationChoice::Tilded => Equation::Tilded,
    }
}

/// Common parameters plus the command's own, as one object.
fn params(c: &Common, bg: &Background, extra: Value) -> Value {
    let mut map = Map::new();
    map.insert("background".into(), val(bg));
    map.insert("seed".into(), json!(c.seed));
    map.insert(
        "out".into(),
        json!(match c.out {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }),
    );
    map.insert("record_runtime".into(), json!(c.record_runtime));
    map.insert("lattice_convention".into(), val(&convention(c)));
    if let Value::Object(e) = extra {
        map.extend(e);
    }
    Value::Object(map)
}

fn require_positive(what: &str, n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn require_tolerance(what: &str, x: f64) -> Result<(), Failure> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Failure::Usage(format!("{what} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// NaN-propagating maximum.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

struct Mode {
    m: f64,
    omega: f64,
    n: i64,
}

/// `(m, ω)` from `--omega` or `--n`; the pair must lie on the frequency lattice.
fn resolve_mode(bg: &Background, m: f64, f: &Frequency, conv: LatticeConvention) -> Result<Mode, Failure> {
    if let Some(n) = f.n {
        return match mode_lattice(bg, &[m], [n], conv).first() {
            Some(md) => Ok(Mode { m, omega: md.omega, n }),
            None => Err(Failure::Usage(format!("m = {m} is not on the azimuthal lattice"))),
        };
    }
    let omega = f.omega.expect("clap requires --omega or --n");
    let v = lattice_check(bg, m, omega, conv);
    match (v.accepted, v.n) {
        (true, Some(n)) => Ok(Mode { m, omega, n }),
        _ => Err(Failure::Usage(format!("(m, omega) = ({m}, {omega}) off the frequency lattice: {}", v.reason))),
    }
}

fn mode_params(md: &Mode) -> Value {
    json!({ "m": md.m, "omega": md.omega, "n": md.n })
}

/// `Λ` from `--Lambda`, or the `--lambda-index`-th angular eigenvalue.
fn resolve_lambda(spec: &PotentialSpec, sep: &Separation, cfg: &AngularSolverConfig) -> Result<(f64, Option<usize>), Failure> {
    if let Some(l) = sep.lambda {
        if !l.is_finite() {
            return Err(Failure::Usage(format!("Lambda = {l} is not finite")));
        }
        return Ok((l, None));
    }
    let i = sep.lambda_index.unwrap_or(0);
    let pairs = angular_spectrum(spec, &cfg.with_count(i + 1))?;
    Ok((pairs[i].lambda, Some(i)))
}

fn np_check(a: &NpCheckArgs) -> Outcome {
    let bg = background(&a.common)?;
    require_positive("--points", a.points)?;
    require_tolerance("--tolerance", a.tolerance)?;
    require_tolerance("--a1-tolerance", a.a1_tolerance)?;
    let p = params(
        &a.common,
        &bg,
        json!({ "points": a.points, "tolerance": a.tolerance, "a1_tolerance": a.a1_tolerance }),
    );
    let body = (|| {
        let mut agg = NPResidualReport::default();
        let (mut a1, mut a1t) = (0.0f64, 0.0f64);
        let mut nonfinite = 0usize;
        for pt in random_points(&bg, a.points, a.common.seed) {
            let rep = np_residuals(&bg, &pt)?;
            nonfinite += rep.entries.values().filter(|v| !v.is_finite()).count();
            agg.merge(&rep);
            let (x, y) = a1_identity_check(&bg, &pt)?;
            a1 = worst(a1, x);
            a1t = worst(a1t, y);
        }
        let np_max = agg.max();
        let a1_max = worst(a1, a1t);
        let ok = nonfinite == 0 && np_max < a.tolerance && a1_max < a.a1_tolerance;
        Ok(Body {
            results: json!({
                "points": a.points,
                "equation_count": agg.entries.len(),
                "equations": val(&agg.entries),
                "nonfinite": nonfinite,
                "a1": { "plain": a1, "tilded": a1t },
            }),
            residuals: json!({ "np_max": np_max, "a1_max": a1_max }),
            verdict: pass_fail(ok),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}

fn weyl(a: &WeylArgs) -> Outcome {
    let bg = background(&a.common)?;
    require_positive("--points", a.points)?;
    require_tolerance("--tolerance", a.tolerance)?;
    require_tolerance("--vanishing-tolerance", a.vanishing_tolerance)?;
    let p = params(
        &a.common,
        &bg,
        json!({
            "points": a.points,
            "tolerance": a.tolerance,
            "vanishing_tolerance": a.vanishing_tolerance,
        }),
    );
    let body = (|| {
        let mut rows = Vec::new();
        let (mut spin_max, mut psi2_max, mut vanish_max) = (0.0f64, 0.0f64, 0.0f64);
        for pt in random_points(&bg, a.points, a.common.seed) {
            let sn = spin_coeffs_numeric(&bg, &pt)?;
            let sc = spin_coeffs_closed(&bg, &pt)?;
            let spin = sn
                .plain
                .to_array()
                .iter()
                .chain(sn.tilded.to_array().iter())
                .zip(sc.plain.to_array().iter().chain(sc.tilded.to_array().iter()))
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, worst);
            let wn = weyl_scalars_numeric(&bg, &pt)?;
            let wc = weyl_scalars_closed(&bg, &pt)?;
            let psi2 = worst((wn.psi[2] - wc.psi[2]).norm(), (wn.psi_tilde[2] - wc.psi_tilde[2]).norm());
            let vanish = [0, 1, 3, 4]
                .iter()
                .map(|&k| worst(wn.psi[k].norm(), wn.psi_tilde[k].norm()))
                .fold(0.0, worst);
            spin_max = worst(spin_max, spin);
            psi2_max = worst(psi2_max, psi2);
            vanish_max = worst(vanish_max, vanish);
            rows.push(json!({
                "r": pt.r,
                "theta": pt.theta,
                "psi2_numeric": val(&wn.psi[2]),
                "psi2_closed": val(&wc.psi[2]),
                "psi2_tilde_numeric": val(&wn.psi_tilde[2]),
                "psi2_tilde_closed": val(&wc.psi_tilde[2]),
                "spin_mismatch": spin,
                "psi2_mismatch": psi2,
                "other_scalars_max": vanish,
            }));
        }
        let ok = spin_max < a.tolerance && psi2_max < a.tolerance && vanish_max < a.vanishing_tolerance;
        Ok(Body {
            results: json!({ "points": rows }),
            residuals: json!({
                "spin_coefficient_max": spin_max,
                "psi2_max": psi2_max,
                "other_scalars_max": vanish_max,
            }),
            verdict: pass_fail(ok),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}

fn lattice(a: &LatticeArgs) -> Outcome {
    let bg = background(&a.common)?;
    let conv = convention(&a.common);
    let f = &a.frequency;
    let p = params(&a.common, &bg, json!({ "m": a.m, "omega": f.omega, "n": f.n }));
    let (omega, verdict) = match (f.omega, f.n) {
        (Some(w), _) => (Some(w), lattice_check(&bg, a.m, w, conv)),
        (None, Some(n)) => match mode_lattice(&bg, &[a.m], [n], conv).first() {
            Some(md) => (Some(md.omega), lattice_check(&bg, a.m, md.omega, conv)),
            None => (
                None,
                instanton_lab::separation::LatticeVerdict {
                    accepted: false,
                    n: None,
                    reason: format!("m = {} is not on the azimuthal lattice", a.m),
                },
            ),
        },
        (None, None) => unreachable!("clap requires --omega or --n"),
    };
    let body = Ok(Body {
        results: json!({
            "m": a.m,
            "omega": omega,
            "n": verdict.n,
            "accepted": verdict.accepted,
            "reason": verdict.reason,
            "generators": val(&identification_lattice(&bg).generators),
        }),
        residuals: Value::Null,
        verdict: if verdict.accepted { "accepted" } else { "rejected" }.into(),
        passed: verdict.accepted,
        table: None,
    });
    Ok((p, body))
}

fn angular(a: &AngularArgs) -> Outcome {
    let bg = background(&a.common)?;
    let md = resolve_mode(&bg, a.m, &a.frequency, convention(&a.common))?;
    require_positive("--count", a.count)?;
    if a.fd_cells > 0 {
        require_tolerance("--fd-tolerance", a.fd_tolerance)?;
    }
    let eq = equation(a.equation);
    let cfg = AngularSolverConfig {
        order: a.order,
        ..AngularSolverConfig::default()
    }
    .with_count(a.count);
    cfg.validate()?;
    let p = params(
        &a.common,
        &bg,
        json!({
            "mode": mode_params(&md),
            "equation": val(&eq),
            "count": a.count,
            "solver": val(&cfg),
            "fd_cells": a.fd_cells,
            "fd_tolerance": a.fd_tolerance,
        }),
    );
    let spec = PotentialSpec::new(bg, ModeIndex::new(&bg, md.m, md.omega, 0.0), eq);
    let body = (|| {
        let pairs = angular_spectrum(&spec, &cfg)?;
        let lambdas: Vec<f64> = pairs.iter().map(|q| q.lambda).collect();
        let galerkin = pairs.iter().map(|q| q.residual).fold(0.0, worst);
        let eigenpairs: Vec<Value> = pairs
            .iter()
            .map(|q| json!({ "index": q.index, "lambda": q.lambda, "residual": q.residual, "exponents": val(&q.exponents) }))
            .collect();
        let (fd, mismatch) = if a.fd_cells > 0 {
            let fd = fd_oracle_spectrum(&spec, a.count, a.fd_cells)?;
            let d = fd.iter().zip(&lambdas).map(|(x, y)| (x - y).abs()).fold(0.0, worst);
            (Some(fd), Some(d))
        } else {
            (None, None)
        };
        let ok = mismatch.is_none_or(|d| d < a.fd_tolerance);
        Ok(Body {
            results: json!({ "lambdas": lambdas, "eigenpairs": eigenpairs, "fd_lambdas": fd }),
            residuals: json!({ "galerkin_max": galerkin, "fd_max_mismatch": mismatch }),
            verdict: pass_fail(ok),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}

fn scan_config(o: &RadialOptions, conv: LatticeConvention) -> Result<ScanConfig, Failure> {
    require_tolerance("--rel-tol", o.rel_tol)?;
    require_tolerance("--abs-tol", o.abs_tol)?;
    require_tolerance("--threshold", o.threshold)?;
    require_tolerance("--seed-offset", o.seed_offset)?;
    if let Some(r) = o.outer_radius {
        require_tolerance("--outer-radius", r)?;
    }
    Ok(ScanConfig {
        radial: RadialConfig {
            integrator: IntegratorConfig64::new(o.rel_tol, o.abs_tol)?,
            samples: o.samples,
            seed_offset: o.seed_offset,
            frobenius_order: o.frobenius_order,
        },
        threshold: o.threshold,
        match_factor: o.match_factor,
        outer_radius: o.outer_radius,
        convention: conv,
        ..ScanConfig::default()
    })
}

fn row_verdict(v: RowVerdict) -> (&'static str, bool) {
    match v {
        RowVerdict::NoMode | RowVerdict::Excluded => ("no mode", true),
        RowVerdict::Inconclusive => ("inconclusive", false),
        RowVerdict::Failed => ("failed", false),
    }
}

fn radial(a: &RadialArgs) -> Outcome {
    let bg = background(&a.common)?;
    let conv = convention(&a.common);
    let md = resolve_mode(&bg, a.m, &a.frequency, conv)?;
    let eq = equation(a.equation);
    let cfg = scan_config(&a.radial, conv)?;
    let spec0 = PotentialSpec::new(bg, ModeIndex::new(&bg, md.m, md.omega, 0.0), eq);
    let (lambda, index) = resolve_lambda(&spec0, &a.separation, &cfg.angular)?;
    let spec = PotentialSpec::new(bg, spec0.mode.with_lambda(lambda), eq);
    let p = params(
        &a.common,
        &bg,
        json!({
            "mode": mode_params(&md),
            "equation": val(&eq),
            "lambda": lambda,
            "lambda_index": index,
            "config": val(&cfg),
        }),
    );
    let body = (|| {
        let singular = singular_points(&spec)?;
        let row = connection_check(&spec, md.n, index.unwrap_or(0), &cfg);
        let mut fit = Value::Null;
        if md.omega != 0.0 {
            let dec = asymptotic_normal_solution(&spec, Branch::Decaying)?;
            let r_in = bg.inner_radius();
            let sol = radial_integrate(&RadialSeed::Asymptotic(dec.clone()), (r_in + cfg.radial.seed_offset, row.r_max), &cfg.radial)?;
            let f = fit_normal_form(&sol, row.r_max / 10.0)?;
            fit = json!({
                "from": row.r_max / 10.0,
                "fitted": val(&f),
                "expected_rate": dec.rate,
                "expected_power": dec.power,
                "quoted_power": dec.paper_power,
            });
        }
        let (verdict, ok) = row_verdict(row.verdict);
        Ok(Body {
            results: json!({
                "singular_points": val(&singular),
                "connection": val(&row),
                "decaying_fit": fit,
                "liouville_tail": val(&liouville_tail(&spec)),
            }),
            residuals: json!({ "delta_w_normalized": row.delta_w_normalized, "energy": row.energy }),
            verdict: verdict.into(),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}

fn certify(a: &CertifyArgs) -> Outcome {
    let bg = background(&a.common)?;
    let conv = convention(&a.common);
    let md = resolve_mode(&bg, a.m, &a.frequency, conv)?;
    require_positive("--radial-cells", a.radial_cells)?;
    require_positive("--angular-cells", a.angular_cells)?;
    require_positive("--identity-samples", a.identity_samples)?;
    require_tolerance("--identity-tolerance", a.identity_tolerance)?;
    let cfg = NegativityConfig {
        radial_cells: a.radial_cells,
        angular_cells: a.angular_cells,
        identity_samples: a.identity_samples,
        seed: a.common.seed,
        identity_tolerance: a.identity_tolerance,
        convention: conv,
        ..NegativityConfig::default()
    };
    let spec0 = PotentialSpec::new(bg, ModeIndex::new(&bg, md.m, md.omega, 0.0), Equation::Plain);
    let (lambda, index) = resolve_lambda(&spec0, &a.separation, &cfg.angular)?;
    let p = params(
        &a.common,
        &bg,
        json!({
            "mode": mode_params(&md),
            "lambda": lambda,
            "lambda_index": index,
            "config": val(&cfg),
        }),
    );
    let body = (|| {
        let rep = negativity_certificate(&bg, &[spec0.mode.with_lambda(lambda)], &cfg)?;
        let min_minus_u = rep.modes.iter().map(|r| -r.sup_u).fold(f64::INFINITY, |x, y| {
            if x.is_nan() || y.is_nan() { f64::NAN } else { x.min(y) }
        });
        let ok = rep.verdict == Certification::Certified;
        Ok(Body {
            results: json!({ "certificate": val(&rep), "min_minus_u": min_minus_u }),
            residuals: json!({ "max_identity_residual": rep.max_identity_residual, "margin": rep.margin }),
            verdict: if ok { "certified" } else { "not certified" }.into(),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}

const SCAN_COLUMNS: [&str; 17] = [
    "m",
    "omega",
    "n",
    "equation",
    "lambda_index",
    "lambda",
    "regular_exponent",
    "decaying_rate",
    "decaying_power",
    "r_match",
    "r_max",
    "delta_w",
    "delta_w_normalized",
    "energy",
    "refined",
    "verdict",
    "note",
];

fn modescan(a: &ModescanArgs) -> Outcome {
    let bg = background(&a.common)?;
    let conv = convention(&a.common);
    let ms = a.m_values.clone().unwrap_or_else(|| match bg {
        Background::Kerr { .. } => vec![-2.0, -1.0, 0.0, 1.0, 2.0],
        Background::TaubBolt { .. } => vec![-1.0, -0.5, 0.0, 0.5, 1.0],
    });
    let ns = a.n_values.clone().unwrap_or_else(|| match bg {
        Background::Kerr { .. } => vec![-3, -2, -1, 1, 2, 3],
        Background::TaubBolt { .. } => vec![-2, -1, 0, 1, 2],
    });
    let eqs: Vec<Equation> = a.equations.iter().map(|&e| equation(e)).collect();
    require_positive("--lambda-count", a.lambda_count)?;
    let cfg = ScanConfig {
        lambda_count: a.lambda_count,
        refine_factor: a.refine_factor,
        static_outer_factor: a.static_outer_factor,
        ..scan_config(&a.radial, conv)?
    };
    let p = params(
        &a.common,
        &bg,
        json!({ "m_values": ms, "n_values": ns, "equations": val(&eqs), "config": val(&cfg) }),
    );
    let body = (|| {
        let rep = mode_scan(&bg, &ms, &ns, &eqs, &cfg)?;
        let rows: Vec<Value> = rep.rows.iter().map(|r| val(r)).collect();
        let (verdict, ok) = match rep.verdict {
            ScanVerdict::NoModes => ("no modes", true),
            ScanVerdict::Inconclusive => ("inconclusive", false),
            ScanVerdict::Failed => ("failed", false),
        };
        Ok(Body {
            results: val(&rep),
            residuals: json!({
                "min_delta_w_normalized": rep.min_delta_w_normalized,
                "min_energy": rep.min_energy,
            }),
            verdict: verdict.into(),
            passed: ok,
            table: Some((SCAN_COLUMNS.to_vec(), rows)),
        })
    })();
    Ok((p, body))
}

fn chart_check(a: &ChartCheckArgs) -> Outcome {
    let bg = background(&a.common)?;
    let probes = match (a.probe, bg) {
        (ProbeChoice::Axis, _) => vec![ProbeKind::AxisFixedPoint],
        (ProbeChoice::Bolt, _) => vec![ProbeKind::Bolt],
        (ProbeChoice::Transition, Background::Kerr { .. }) => {
            return Err(Failure::Usage("the transition probe applies to Taub-bolt only".into()));
        }
        (ProbeChoice::Transition, _) => vec![ProbeKind::Transition],
        (ProbeChoice::All, Background::Kerr { .. }) => vec![ProbeKind::AxisFixedPoint, ProbeKind::Bolt],
        (ProbeChoice::All, _) => vec![ProbeKind::AxisFixedPoint, ProbeKind::Bolt, ProbeKind::Transition],
    };
    let p = params(&a.common, &bg, json!({ "probes": val(&probes) }));
    let body = (|| {
        let reports = probes
            .iter()
            .map(|&k| chart_regularity_probe(&bg, k))
            .collect::<Result<Vec<_>, _>>()?;
        let ok = reports.iter().all(|r| r.passed);
        let worst_mismatch = reports.iter().filter_map(|r| r.max_mismatch).fold(0.0, worst);
        Ok(Body {
            results: json!({ "probes": val(&reports) }),
            residuals: json!({ "max_mismatch": worst_mismatch }),
            verdict: pass_fail(ok),
            passed: ok,
            table: None,
        })
    })();
    Ok((p, body))
}
