use rayon::prelude::*;
use serde::Serialize;

use super::thread_pool;
use crate::angular::{angular_spectrum, AngularSolverConfig};
use crate::radial::{
    asymptotic_normal_solution, connection_wronskian, default_outer_radius, frobenius_series, indicial_oracle,
    infinity_exponents, infinity_exponents_oracle, infinity_series, radial_integrate, Branch, RadialConfig,
    RadialSeed, RadialSolution, INFINITY_SERIES_MAX_ORDER,
};
use crate::separation::{mode_lattice, potential_u_at, Equation, LatticeConvention, ModeIndex, PotentialSpec};
use crate::{Background, Complex64, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub radial: RadialConfig,
    pub angular: AngularSolverConfig,
    /// Lowest separation constants scanned per `(m, ω)`.
    pub lambda_count: usize,
    /// Lower bound on the normalized `|Δ·W|` for a row to count as "no mode".
    pub threshold: f64,
    /// Tolerance reduction applied once to rows below the threshold.
    pub refine_factor: f64,
    /// `r_match = match_factor · r_inner`.
    pub match_factor: f64,
    /// Outer radius; `None` uses `default_outer_radius`, or `static_outer_factor · r_inner` at `ω = 0`.
    pub outer_radius: Option<f64>,
    pub static_outer_factor: f64,
    pub convention: LatticeConvention,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            radial: RadialConfig::default(),
            angular: AngularSolverConfig::default(),
            lambda_count: 3,
            threshold: 1e-3,
            refine_factor: 10.0,
            match_factor: 3.0,
            outer_radius: None,
            static_outer_factor: 40.0,
            convention: LatticeConvention::Invariance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowVerdict {
    /// The regular and decaying solutions are independent.
    NoMode,
    /// `ω = 0`: excluded by the exponents at infinity, with the connection checked as well.
    Excluded,
    /// Still below the threshold after refinement.
    Inconclusive,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanVerdict {
    NoModes,
    Inconclusive,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub m: f64,
    pub omega: f64,
    pub n: i64,
    pub equation: Equation,
    pub lambda_index: usize,
    pub lambda: f64,
    /// Exponent of the regular Frobenius solution at the inner point.
    pub regular_exponent: Option<f64>,
    /// Decay rate and power of the admissible branch at infinity.
    pub decaying_rate: Option<f64>,
    pub decaying_power: Option<f64>,
    /// `ω = 0`: exponents at infinity, recomputed and as quoted.
    pub infinity_exponents: Option<[Complex64; 2]>,
    pub quoted_infinity_exponents: Option<[Complex64; 2]>,
    pub r_match: f64,
    pub r_max: f64,
    /// `Δ·W` of the solutions as normalized at their seeds.
    pub delta_w: Option<f64>,
    /// `|Δ·W|` with both `(R, ΔR')` states scaled to unit length at `r_match`.
    pub delta_w_normalized: Option<f64>,
    /// Energy integral of the regular solution over its range.
    pub energy: Option<f64>,
    pub refined: bool,
    pub verdict: RowVerdict,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeScanReport {
    pub background: Background,
    pub m_values: Vec<f64>,
    pub n_values: Vec<i64>,
    pub equations: Vec<Equation>,
    pub lambda_count: usize,
    pub truncation: String,
    /// `U` decreases strictly along each scanned `Λ` ladder.
    pub lambda_monotone: bool,
    pub rows: Vec<ScanRow>,
    pub min_delta_w_normalized: Option<f64>,
    pub min_energy: Option<f64>,
    pub verdict: ScanVerdict,
    pub config: ScanConfig,
}

struct Connection {
    delta_w: f64,
    normalized: f64,
    energy: f64,
}

fn connect(spec: &PotentialSpec, rho: f64, far: &RadialSeed, r_max: f64, r_match: f64, cfg: &RadialConfig) -> Result<Connection> {
    let r_in = spec.background.inner_radius();
    let r_seed = r_in + cfg.seed_offset;
    let reg = frobenius_series(spec, r_in, rho, cfg.frobenius_order)?;
    let reg: RadialSolution = radial_integrate(&RadialSeed::Frobenius(reg), (r_seed, r_max), cfg)?;
    let dec = radial_integrate(far, (r_seed, r_max), cfg)?;
    let w = connection_wronskian(&reg, &dec, r_match)?;
    Ok(Connection {
        delta_w: w.value,
        normalized: w.relative,
        energy: *reg.energy.last().unwrap() - reg.energy[0],
    })
}

fn blank_row(bg: &Background, mode: (f64, f64, i64), eq: Equation, index: usize, lambda: f64, cfg: &ScanConfig) -> ScanRow {
    let (m, omega, n) = mode;
    let r_in = bg.inner_radius();
    let r_max = cfg.outer_radius.unwrap_or(if omega == 0.0 {
        cfg.static_outer_factor * r_in
    } else {
        default_outer_radius(bg, omega)
    });
    ScanRow {
        m,
        omega,
        n,
        equation: eq,
        lambda_index: index,
        lambda,
        regular_exponent: None,
        decaying_rate: None,
        decaying_power: None,
        infinity_exponents: None,
        quoted_infinity_exponents: None,
        r_match: cfg.match_factor * r_in,
        r_max,
        delta_w: None,
        delta_w_normalized: None,
        energy: None,
        refined: false,
        verdict: RowVerdict::Failed,
        note: String::new(),
    }
}

fn scan_row(
    bg: &Background,
    mode: (f64, f64, i64),
    eq: Equation,
    index: usize,
    lambda: f64,
    cfg: &ScanConfig,
) -> ScanRow {
    let (m, omega, _) = mode;
    let r_in = bg.inner_radius();
    let mut row = blank_row(bg, mode, eq, index, lambda, cfg);
    let r_max = row.r_max;
    let spec = PotentialSpec::new(*bg, ModeIndex::new(bg, m, omega, lambda), eq);
    let run = |row: &mut ScanRow| -> Result<()> {
        // The regular solution takes the non-negative exponent.
        let rho = indicial_oracle(&spec, r_in)?[0];
        if rho.im != 0.0 {
            return Err(Error::Domain("complex exponents at the inner point".into()));
        }
        row.regular_exponent = Some(rho.re);
        let far = if omega == 0.0 {
            let roots = infinity_exponents_oracle(&spec)?;
            row.infinity_exponents = Some(roots);
            row.quoted_infinity_exponents = Some(infinity_exponents(&spec)?);
            let s = roots[0].re.min(roots[1].re);
            row.decaying_power = Some(s);
            RadialSeed::Infinity(infinity_series(&spec, s, INFINITY_SERIES_MAX_ORDER)?)
        } else {
            let a = asymptotic_normal_solution(&spec, Branch::Decaying)?;
            row.decaying_rate = Some(a.rate);
            row.decaying_power = Some(a.power);
            RadialSeed::Asymptotic(a)
        };
        if !(row.r_match > r_in + cfg.radial.seed_offset && row.r_match < r_max) {
            return Err(Error::InvalidInput(format!("r_match = {} outside the integration range", row.r_match)));
        }
        let mut c = connect(&spec, rho.re, &far, r_max, row.r_match, &cfg.radial)?;
        if c.normalized < cfg.threshold {
            row.refined = true;
            c = connect(&spec, rho.re, &far, r_max, row.r_match, &cfg.radial.tightened(cfg.refine_factor))?;
        }
        row.delta_w = Some(c.delta_w);
        row.delta_w_normalized = Some(c.normalized);
        row.energy = Some(c.energy);
        row.verdict = if c.normalized < cfg.threshold {
            RowVerdict::Inconclusive
        } else if !(c.energy > 0.0) {
            row.note = "energy integral of the regular solution not positive".into();
            RowVerdict::Failed
        } else if omega == 0.0 {
            RowVerdict::Excluded
        } else {
            RowVerdict::NoMode
        };
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.verdict = RowVerdict::Failed;
        row.note = e.to_string();
    }
    row
}

/// One row of the scan for a given mode, frequency index `n` and separation constant.
pub fn connection_check(spec: &PotentialSpec, n: i64, lambda_index: usize, cfg: &ScanConfig) -> ScanRow {
    let md = &spec.mode;
    scan_row(&spec.background, (md.m, md.omega, n), spec.equation, lambda_index, md.lambda, cfg)
}

struct Task {
    m: f64,
    omega: f64,
    n: i64,
    eq: Equation,
}

fn scan_task(bg: &Background, t: &Task, cfg: &ScanConfig) -> (Vec<ScanRow>, bool) {
    let spec = PotentialSpec::new(*bg, ModeIndex::new(bg, t.m, t.omega, 0.0), t.eq);
    let pairs = match angular_spectrum(&spec, &cfg.angular.with_count(cfg.lambda_count)) {
        Ok(p) => p,
        Err(e) => {
            let mut row = blank_row(bg, (t.m, t.omega, t.n), t.eq, 0, f64::NAN, cfg);
            row.note = format!("angular spectrum: {e}");
            return (vec![row], false);
        }
    };
    let lambdas: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    // U carries −Λ, so climbing the ladder must push U down at every radius.
    let r_in = bg.inner_radius();
    let monotone = lambdas.windows(2).all(|w| {
        w[1] > w[0]
            && [1.5, 3.0, 10.0, 100.0].iter().all(|&k| {
                let r = k * r_in;
                let u = |l: f64| potential_u_at(bg, t.eq, t.m, t.omega, l, r);
                u(w[1]) < u(w[0])
            })
    });
    let rows = lambdas.iter().enumerate().map(|(i, &l)| scan_row(bg, (t.m, t.omega, t.n), t.eq, i, l, cfg)).collect();
    (rows, monotone)
}

/// Look for modes regular at the inner point and decaying at infinity over the
/// lattice frequencies `ω(m, n)`, the given equations and the lowest
/// `lambda_count` separation constants.
pub fn mode_scan(
    bg: &Background,
    ms: &[f64],
    ns: &[i64],
    equations: &[Equation],
    cfg: &ScanConfig,
) -> Result<ModeScanReport> {
    if ms.is_empty() || ns.is_empty() || equations.is_empty() {
        return Err(Error::InvalidInput("empty scan range".into()));
    }
    if cfg.lambda_count == 0 {
        return Err(Error::InvalidInput("lambda_count must be at least 1".into()));
    }
    if !(cfg.threshold > 0.0 && cfg.refine_factor >= 1.0 && cfg.match_factor > 1.0) {
        return Err(Error::InvalidInput("threshold, refine_factor or match_factor out of range".into()));
    }
    let modes = mode_lattice(bg, ms, ns.iter().copied(), cfg.convention);
    let tasks: Vec<Task> = modes
        .iter()
        .flat_map(|md| equations.iter().map(move |&eq| Task { m: md.m, omega: md.omega, n: md.n, eq }))
        .collect();
    if tasks.is_empty() {
        return Err(Error::OffLattice("no lattice modes in the requested ranges".into()));
    }
    let results: Vec<(Vec<ScanRow>, bool)> =
        thread_pool()?.install(|| tasks.par_iter().map(|t| scan_task(bg, t, cfg)).collect());
    let lambda_monotone = results.iter().all(|r| r.1);
    let rows: Vec<ScanRow> = results.into_iter().flat_map(|r| r.0).collect();
    let min_of = |f: fn(&ScanRow) -> Option<f64>| rows.iter().filter_map(f).reduce(f64::min);
    let min_delta_w_normalized = min_of(|r| r.delta_w_normalized);
    let min_energy = min_of(|r| r.energy);
    let verdict = if rows.iter().any(|r| r.verdict == RowVerdict::Failed) {
        ScanVerdict::Failed
    } else if rows.iter().any(|r| r.verdict == RowVerdict::Inconclusive) || !lambda_monotone {
        ScanVerdict::Inconclusive
    } else {
        ScanVerdict::NoModes
    };
    let truncation = format!(
        "lowest {} separation constants per (m, omega); m in {:?}, frequency index n in {:?}; larger Lambda only lowers U",
        cfg.lambda_count, ms, ns
    );
    Ok(ModeScanReport {
        background: *bg,
        m_values: ms.to_vec(),
        n_values: ns.to_vec(),
        equations: equations.to_vec(),
        lambda_count: cfg.lambda_count,
        truncation,
        lambda_monotone,
        rows,
        min_delta_w_normalized,
        min_energy,
        verdict,
        config: *cfg,
    })
}
