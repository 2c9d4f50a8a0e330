use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::Serialize;

use super::{nan_max, thread_pool, Certification};
use crate::angular::{angular_spectrum, AngularEigenpair, AngularSolverConfig};
use crate::geometry::random_points;
use crate::numerics::quad;
use crate::radial::expansion::InfinityExpansion;
use crate::separation::{
    angular_coefficients, potential_u_at, uv_decomposition_terms, Equation, LatticeConvention, ModeIndex,
    PotentialSpec,
};
use crate::{Background, Error, HyperDual64, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegativityConfig {
    /// Cells in `ξ = arctan r` over `(arctan r_inner, π/2)`.
    pub radial_cells: usize,
    /// Cells in `x = cosθ` over `(−1, 1)`.
    pub angular_cells: usize,
    /// Random points for the Kerr splitting identity.
    pub identity_samples: usize,
    pub seed: u64,
    /// Bound on `|Σ terms − (U + V)| / (1 + |U + V|)`.
    pub identity_tolerance: f64,
    pub convention: LatticeConvention,
    pub angular: AngularSolverConfig,
}

impl Default for NegativityConfig {
    fn default() -> Self {
        NegativityConfig {
            radial_cells: 10_000,
            angular_cells: 1_000,
            identity_samples: 1_000,
            seed: 0,
            identity_tolerance: 1e-10,
            convention: LatticeConvention::Invariance,
            angular: AngularSolverConfig::default(),
        }
    }
}

/// `U` (for Kerr, an upper bound of `U + V`) behaves as `coefficient·r^power` for large `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailBound {
    pub power: i32,
    pub coefficient: f64,
    /// `sup_x (V − Λ)` bound added at `power = 0`; zero for Taub-bolt.
    pub angular_bound: f64,
    pub negative: bool,
    /// Largest grid radius and `U/(coefficient·r^power)` there.
    pub end_radius: f64,
    pub end_ratio: f64,
    /// The ratio is within 10% of one.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeNegativity {
    pub m: f64,
    pub omega: f64,
    pub lambda: f64,
    pub equation: Equation,
    /// Kerr: max relative residual of the three-term splitting at the random points.
    pub identity_residual: Option<f64>,
    /// Kerr: grid suprema of the first term and of the other two.
    pub first_term_sup: Option<f64>,
    pub other_terms_sup: Option<f64>,
    /// Kerr: grid supremum of `U + V`.
    pub sup_u_plus_v: Option<f64>,
    /// Grid supremum of `U` (or `Ũ`) and where it is attained.
    pub sup_u: f64,
    pub sup_u_radius: f64,
    /// Kerr: `∫(1 − x²)S'² dx` and its mismatch against `∫V S² dx`.
    pub kinetic: Option<f64>,
    pub angular_parts_residual: Option<f64>,
    pub tail: TailBound,
    pub margin: f64,
    pub verdict: Certification,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativityReport {
    pub background: Background,
    pub modes: Vec<ModeNegativity>,
    pub max_identity_residual: Option<f64>,
    pub supremum: f64,
    pub margin: f64,
    pub tails_negative: bool,
    pub verdict: Certification,
    pub config: NegativityConfig,
}

fn cell_centres(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

fn radial_grid(bg: &Background, n: usize) -> Vec<f64> {
    cell_centres(bg.inner_radius().atan(), FRAC_PI_2, n).map(f64::tan).collect()
}

fn tail_bound(spec: &PotentialSpec, angular_bound: f64, r_end: f64) -> TailBound {
    let e = InfinityExpansion::new(spec);
    let q = &e.q;
    let size = 1.0 + q[..3].iter().map(|v| v.abs()).sum::<f64>();
    // U = Δ·Σ q_k r^{−k} with Δ = r² + O(r).
    let (power, coefficient) = if q[0].abs() > 1e-12 * size {
        (2, q[0])
    } else if q[1].abs() > 1e-12 * size {
        (1, q[1])
    } else {
        (0, q[2])
    };
    let bound = if power == 0 { coefficient + angular_bound } else { coefficient };
    let md = &spec.mode;
    let u_end = potential_u_at(&spec.background, spec.equation, md.m, md.omega, md.lambda, r_end);
    let end_ratio = u_end / (coefficient * r_end.powi(power));
    TailBound {
        power,
        coefficient,
        angular_bound,
        negative: bound < 0.0,
        end_radius: r_end,
        end_ratio,
        consistent: (end_ratio - 1.0).abs() < 0.1,
    }
}

/// Suprema of `U` over the radial grid.
fn u_supremum(spec: &PotentialSpec, grid: &[f64]) -> (f64, f64) {
    let md = &spec.mode;
    let mut best = (f64::NEG_INFINITY, grid[0]);
    for &r in grid {
        let u = potential_u_at(&spec.background, spec.equation, md.m, md.omega, md.lambda, r);
        if u.is_nan() {
            return (f64::NAN, r);
        }
        if u > best.0 {
            best = (u, r);
        }
    }
    best
}

#[derive(Clone, Copy)]
struct KerrGrid {
    identity: f64,
    first: f64,
    others: f64,
    /// Supremum of `U + V`, in which `Λ` cancels.
    sum: f64,
}

fn kerr_grid(bg: &Background, m: f64, omega: f64, rs: &[f64], cfg: &NegativityConfig) -> Result<KerrGrid> {
    let probe = PotentialSpec::new(*bg, ModeIndex::new(bg, m, omega, 0.0), Equation::Plain);
    let co = angular_coefficients(&probe);
    let xs: Vec<f64> = cell_centres(-1.0, 1.0, cfg.angular_cells).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| co.v_reduced(x)).collect();
    uv_decomposition_terms(bg, m, omega, rs[0], 0.0)?;
    let row = |r: f64| {
        let u = potential_u_at(bg, Equation::Plain, m, omega, 0.0, r);
        let mut out = KerrGrid { identity: 0.0, first: f64::NEG_INFINITY, others: f64::NEG_INFINITY, sum: f64::NEG_INFINITY };
        for (&x, &v) in xs.iter().zip(&vs) {
            let [t1, t2, t3] = uv_decomposition_terms(bg, m, omega, r, x).unwrap();
            let total = u + v;
            out.identity = nan_max(out.identity, (t1 + t2 + t3 - total).abs() / (1.0 + total.abs()));
            out.first = nan_max(out.first, t1);
            out.others = nan_max(out.others, nan_max(t2, t3));
            out.sum = nan_max(out.sum, total);
        }
        out
    };
    let merge = |a: KerrGrid, b: KerrGrid| KerrGrid {
        identity: nan_max(a.identity, b.identity),
        first: nan_max(a.first, b.first),
        others: nan_max(a.others, b.others),
        sum: nan_max(a.sum, b.sum),
    };
    let start = KerrGrid { identity: 0.0, first: f64::NEG_INFINITY, others: f64::NEG_INFINITY, sum: f64::NEG_INFINITY };
    Ok(thread_pool()?.install(|| rs.par_iter().map(|&r| row(r)).reduce(|| start, merge)))
}

/// Max relative residual of the Kerr splitting at seeded random points.
fn kerr_identity(bg: &Background, m: f64, omega: f64, cfg: &NegativityConfig) -> Result<f64> {
    let probe = PotentialSpec::new(*bg, ModeIndex::new(bg, m, omega, 0.0), Equation::Plain);
    let co = angular_coefficients(&probe);
    let mut worst: f64 = 0.0;
    for p in random_points(bg, cfg.identity_samples, cfg.seed) {
        let x = p.theta.cos();
        let total = potential_u_at(bg, Equation::Plain, m, omega, 0.0, p.r) + co.v_reduced(x);
        let t: f64 = uv_decomposition_terms(bg, m, omega, p.r, x)?.iter().sum();
        worst = nan_max(worst, (t - total).abs() / (1.0 + total.abs()));
    }
    Ok(worst)
}

fn find_eigenpair(spec: &PotentialSpec, cfg: &NegativityConfig) -> Result<AngularEigenpair> {
    let lambda = spec.mode.lambda;
    let mut count = cfg.angular.count.max(4);
    while count <= 32 {
        let pairs = angular_spectrum(spec, &cfg.angular.with_count(count))?;
        if let Some(p) = pairs.iter().find(|p| (p.lambda - lambda).abs() <= 1e-7 * (1.0 + lambda.abs())) {
            return Ok(p.clone());
        }
        if pairs.last().is_some_and(|p| p.lambda > lambda) {
            break;
        }
        count *= 2;
    }
    Err(Error::InvalidInput(format!("Lambda = {lambda} is not an angular eigenvalue of this mode")))
}

/// `(∫(1 − x²)S'² dx, |that − ∫V S² dx|)`; the two agree by integration by parts.
fn angular_parts(spec: &PotentialSpec, pair: &AngularEigenpair) -> Result<(f64, f64)> {
    let co = angular_coefficients(spec);
    let s_and_ds = |x: f64| {
        let h = pair.eval_x(HyperDual64::new(x, 1.0, 0.0, 0.0));
        (h.value, h.d1)
    };
    let kinetic = quad(
        |x: f64| {
            let (_, d) = s_and_ds(x);
            (1.0 - x * x) * d * d
        },
        -1.0,
        1.0,
        1e-11,
    )?;
    let potential = quad(
        |x: f64| {
            let (s, _) = s_and_ds(x);
            co.v_at(x) * s * s
        },
        -1.0,
        1.0,
        1e-11,
    )?;
    Ok((kinetic, (kinetic - potential).abs()))
}

/// Certify `U + V < 0` (Kerr, hence `U < 0` after integrating against `S²`) or
/// `U < 0` and `Ũ < 0` (Taub-bolt) for every mode.
pub fn negativity_certificate(bg: &Background, modes: &[ModeIndex], cfg: &NegativityConfig) -> Result<NegativityReport> {
    if modes.is_empty() {
        return Err(Error::InvalidInput("empty mode set".into()));
    }
    if cfg.radial_cells < 2 || cfg.angular_cells < 2 {
        return Err(Error::InvalidInput("grid needs at least two cells per direction".into()));
    }
    for md in modes {
        if md.kind != bg.kind() {
            return Err(Error::InvalidInput("mode built for another background".into()));
        }
        md.check_lattice(bg, cfg.convention)?;
    }
    let rs = radial_grid(bg, cfg.radial_cells);
    let r_end = *rs.last().unwrap();
    let mut cache: HashMap<(u64, u64), (KerrGrid, f64)> = HashMap::new();
    let mut rows = Vec::new();
    for md in modes {
        match bg {
            Background::Kerr { .. } => {
                let key = (md.m.to_bits(), md.omega.to_bits());
                let (grid, identity) = match cache.get(&key) {
                    Some(v) => *v,
                    None => {
                        let v = (kerr_grid(bg, md.m, md.omega, &rs, cfg)?, kerr_identity(bg, md.m, md.omega, cfg)?);
                        cache.insert(key, v);
                        v
                    }
                };
                let spec = PotentialSpec::new(*bg, *md, Equation::Plain);
                let pair = find_eigenpair(&spec, cfg)?;
                let (kinetic, parts) = angular_parts(&spec, &pair)?;
                let co = angular_coefficients(&spec);
                let (sup_u, sup_r) = u_supremum(&spec, &rs);
                let tail = tail_bound(&spec, co.p[0].abs() + co.p[1].abs() + md.lambda, r_end);
                let ok = identity < cfg.identity_tolerance
                    && grid.first < 0.0
                    && grid.others <= 0.0
                    && grid.sum < 0.0
                    && sup_u < 0.0
                    && kinetic >= 0.0
                    && parts <= 1e-6 * (1.0 + kinetic)
                    && tail.negative
                    && tail.consistent;
                rows.push(ModeNegativity {
                    m: md.m,
                    omega: md.omega,
                    lambda: md.lambda,
                    equation: Equation::Plain,
                    identity_residual: Some(identity),
                    first_term_sup: Some(grid.first),
                    other_terms_sup: Some(grid.others),
                    sup_u_plus_v: Some(grid.sum),
                    sup_u,
                    sup_u_radius: sup_r,
                    kinetic: Some(kinetic),
                    angular_parts_residual: Some(parts),
                    tail,
                    margin: -grid.sum,
                    verdict: if ok { Certification::Certified } else { Certification::NotCertified },
                });
            }
            Background::TaubBolt { .. } => {
                for eq in [Equation::Plain, Equation::Tilded] {
                    let spec = PotentialSpec::new(*bg, *md, eq);
                    let (sup_u, sup_r) = u_supremum(&spec, &rs);
                    let tail = tail_bound(&spec, 0.0, r_end);
                    let ok = sup_u < 0.0 && tail.negative && tail.consistent;
                    rows.push(ModeNegativity {
                        m: md.m,
                        omega: md.omega,
                        lambda: md.lambda,
                        equation: eq,
                        identity_residual: None,
                        first_term_sup: None,
                        other_terms_sup: None,
                        sup_u_plus_v: None,
                        sup_u,
                        sup_u_radius: sup_r,
                        kinetic: None,
                        angular_parts_residual: None,
                        tail,
                        margin: -sup_u,
                        verdict: if ok { Certification::Certified } else { Certification::NotCertified },
                    });
                }
            }
        }
    }
    let max_identity_residual = rows.iter().filter_map(|r| r.identity_residual).reduce(nan_max);
    let supremum = rows.iter().map(|r| r.sup_u_plus_v.unwrap_or(r.sup_u)).fold(f64::NEG_INFINITY, nan_max);
    let all = rows.iter().all(|r| r.verdict == Certification::Certified);
    Ok(NegativityReport {
        background: *bg,
        max_identity_residual,
        supremum,
        margin: -supremum,
        tails_negative: rows.iter().all(|r| r.tail.negative),
        verdict: if all { Certification::Certified } else { Certification::NotCertified },
        modes: rows,
        config: *cfg,
    })
}
