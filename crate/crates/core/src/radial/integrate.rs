use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::expansion::{AsymptoticSolution, Branch, InfinitySeries};
use super::frobenius::FrobeniusSeries;
use crate::numerics::ode_solve;
use crate::separation::{delta_u, PotentialSpec};
use crate::{Background, Error, IntegratorConfig64, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialConfig {
    pub integrator: IntegratorConfig64,
    /// Number of stored samples, uniform in `ln(r − r_inner)`.
    pub samples: usize,
    /// Distance from the inner singular point at which a Frobenius seed is evaluated.
    pub seed_offset: f64,
    pub frobenius_order: usize,
}

impl Default for RadialConfig {
    fn default() -> Self {
        RadialConfig {
            integrator: IntegratorConfig64::new(1e-11, 1e-13).unwrap(),
            samples: 200,
            seed_offset: 0.01,
            frobenius_order: 20,
        }
    }
}

impl RadialConfig {
    pub fn tightened(self, factor: f64) -> Self {
        RadialConfig {
            integrator: self.integrator.tightened(factor),
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RadialSeed {
    Frobenius(FrobeniusSeries),
    Asymptotic(AsymptoticSolution),
    /// Series about a regular point at infinity (`ω = 0`), placed at `R_max`.
    Infinity(InfinitySeries),
}

impl RadialSeed {
    fn spec(&self) -> &PotentialSpec {
        match self {
            RadialSeed::Frobenius(f) => &f.spec,
            RadialSeed::Asymptotic(a) => &a.spec,
            RadialSeed::Infinity(a) => &a.spec,
        }
    }
}

/// Where a seed is placed: a Frobenius series at `r₀ + offset`, a normal
/// solution at `R_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedDescriptor {
    pub seed: RadialSeed,
    pub r_seed: f64,
    /// `(R, ΔR')` at `r_seed`, after scaling.
    pub state: [f64; 2],
}

/// Samples of a solution of `(ΔR')' + UR = 0`; `flux` is `ΔR'`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialSolution {
    pub spec: PotentialSpec,
    pub r: Vec<f64>,
    pub value: Vec<f64>,
    pub derivative: Vec<f64>,
    pub flux: Vec<f64>,
    /// `∫_{r_seed}^{r} (Δ R'² − U R²) dr`.
    pub energy: Vec<f64>,
    pub seed: SeedDescriptor,
    pub config: RadialConfig,
}

/// `R_max = max(30·scale/|ω|, 50·r_inner)`.
pub fn default_outer_radius(bg: &Background, omega: f64) -> f64 {
    (30.0 * bg.frequency_scale() / omega.abs()).max(50.0 * bg.inner_radius())
}

/// Radius where the integration variable switches from `ln(r − r_inner)` to `1/r`.
pub fn switch_radius(bg: &Background) -> f64 {
    10.0 * bg.inner_radius()
}

#[derive(Clone, Copy)]
enum Var {
    Log,
    Inverse,
}

struct Problem {
    spec: PotentialSpec,
    r_in: f64,
    r_out: f64,
    /// The far chart is `u = r_sw/r`, so both charts span `O(1)` in `u`.
    r_sw: f64,
}

impl Problem {
    fn new(spec: &PotentialSpec) -> Self {
        let bg = &spec.background;
        Problem {
            spec: *spec,
            r_in: bg.inner_radius(),
            r_out: bg.r_minus(),
            r_sw: switch_radius(bg),
        }
    }

    fn delta_u(&self, r: f64) -> f64 {
        let md = &self.spec.mode;
        delta_u(
            &self.spec.background,
            self.spec.equation,
            md.m,
            md.omega,
            md.lambda,
            r,
        )
    }

    fn to_var(&self, v: Var, r: f64) -> f64 {
        match v {
            Var::Log => (r - self.r_in).ln(),
            Var::Inverse => self.r_sw / r,
        }
    }

    fn from_var(&self, v: Var, u: f64) -> f64 {
        match v {
            Var::Log => self.r_in + u.exp(),
            Var::Inverse => self.r_sw / u,
        }
    }

    /// `d(R, P, E)/du` with `Δ = (r − r_in)(r − r_out)` factored so the log chart stays regular.
    /// The energy component is returned divided by `e_unit`.
    fn rhs(&self, v: Var, u: f64, y: &[f64], out: &mut [f64], e_unit: f64) {
        let r = self.from_var(v, u);
        let du = self.delta_u(r);
        // Every component carries a factor (dr/du)/Δ.
        let k = match v {
            Var::Log => 1.0 / (r - self.r_out),
            Var::Inverse => -r * r / self.r_sw / self.spec.background.delta(r),
        };
        out[0] = y[1] * k;
        out[1] = -du * y[0] * k;
        let s = e_unit.sqrt();
        let (a, b) = (y[0] / s, y[1] / s);
        out[2] = (b * b - du * a * a) * k;
    }

    /// Carry `(R, P)` from `r0` to every target, all on one side of `r0`, with the
    /// energy integral from `r0` as third component.
    fn propagate(
        &self,
        r0: f64,
        y0: [f64; 2],
        targets: &[f64],
        cfg: &RadialConfig,
    ) -> Result<Vec<[f64; 3]>> {
        let mut out = vec![[0.0; 3]; targets.len()];
        if targets.is_empty() {
            return Ok(out);
        }
        let far = targets.iter().copied().fold(r0, |acc, t| {
            if (t - r0).abs() > (acc - r0).abs() {
                t
            } else {
                acc
            }
        });
        let dir = (far - r0).signum();
        if targets
            .iter()
            .any(|&t| (t - r0) * dir < -1e-12 * r0.abs().max(1.0))
        {
            return Err(Error::InvalidInput(
                "targets on both sides of the seed".into(),
            ));
        }
        let sw = self.r_sw;
        let mut breaks = vec![r0];
        if (sw - r0) * (sw - far) < 0.0 {
            breaks.push(sw);
        }
        breaks.push(far);
        // Tolerances are relative to the seed size; the energy is carried in units of
        // that size, which puts its absolute tolerance on the scale of R².
        let scale = y0[0].abs().max(y0[1].abs());
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "seed state {y0:?} is zero or not finite"
            )));
        }
        let mut y = vec![y0[0], y0[1], 0.0];
        let mut ic = cfg.integrator;
        ic.abs_tol *= scale;
        for seg in breaks.windows(2) {
            let (ra, rb) = (seg[0], seg[1]);
            let var = if ra.max(rb) <= sw * (1.0 + 1e-12) {
                Var::Log
            } else {
                Var::Inverse
            };
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            let idx: Vec<usize> = (0..targets.len())
                .filter(|&i| targets[i] >= lo && targets[i] <= hi)
                .collect();
            let us: Vec<f64> = idx.iter().map(|&i| self.to_var(var, targets[i])).collect();
            let (ua, ub) = (self.to_var(var, ra), self.to_var(var, rb));
            let us: Vec<f64> = us
                .iter()
                .map(|&u| u.clamp(ua.min(ub), ua.max(ub)))
                .collect();
            let traj = ode_solve(
                |u, y: &[f64], dy: &mut [f64]| self.rhs(var, u, y, dy, scale),
                ua,
                ub,
                &y,
                &us,
                &ic,
            )
            .map_err(|e| match e {
                Error::Integration { location, reason } => Error::Integration {
                    location: self.from_var(var, location),
                    reason,
                },
                other => other,
            })?;
            for (k, &i) in idx.iter().enumerate() {
                let z = &traj.ys[k];
                out[i] = [z[0], z[1], z[2] * scale];
            }
            y = traj.y_end;
        }
        Ok(out)
    }
}

fn log_grid(r_in: f64, a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = ((a - r_in).ln(), (b - r_in).ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                r_in + (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Integrate from the seed across `range = (r_a, r_b)`. A Frobenius seed about the
/// inner point sits at `r_a`, seeds at infinity at `r_b`.
pub fn radial_integrate(
    seed: &RadialSeed,
    range: (f64, f64),
    cfg: &RadialConfig,
) -> Result<RadialSolution> {
    let spec = *seed.spec();
    let bg = &spec.background;
    let r_in = bg.inner_radius();
    let (ra, rb) = range;
    if !(ra > r_in && rb > ra && rb.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "range ({ra}, {rb}) not inside ({r_in}, inf)"
        )));
    }
    if cfg.samples < 2 {
        return Err(Error::InvalidInput("at least two samples required".into()));
    }
    let (r_seed, state) = match seed {
        RadialSeed::Frobenius(f) => {
            if (f.point - r_in).abs() > 1e-12 * r_in.max(1.0) {
                return Err(Error::InvalidInput(
                    "Frobenius seed must expand about the inner singular point".into(),
                ));
            }
            let [v, d, _] = f.eval(ra)?;
            (ra, [v, bg.delta(ra) * d])
        }
        RadialSeed::Asymptotic(a) => {
            let (v, d) = a.eval(rb);
            (rb, [v, bg.delta(rb) * d])
        }
        RadialSeed::Infinity(a) => {
            let (v, d) = a.eval(rb);
            (rb, [v, bg.delta(rb) * d])
        }
    };
    let p = Problem::new(&spec);
    let r = log_grid(r_in, ra, rb, cfg.samples);
    let ys = p.propagate(r_seed, state, &r, cfg)?;
    let value: Vec<f64> = ys.iter().map(|y| y[0]).collect();
    let flux: Vec<f64> = ys.iter().map(|y| y[1]).collect();
    let energy: Vec<f64> = ys.iter().map(|y| y[2]).collect();
    let derivative = r
        .iter()
        .zip(&flux)
        .map(|(&x, &f)| f / bg.delta(x))
        .collect();
    Ok(RadialSolution {
        spec,
        r,
        value,
        derivative,
        flux,
        energy,
        seed: SeedDescriptor {
            seed: seed.clone(),
            r_seed,
            state,
        },
        config: *cfg,
    })
}

impl RadialSolution {
    /// `(R, ΔR')` at any `r` in the integrated range, by re-integration from the seed.
    pub fn state_at(&self, r: f64) -> Result<[f64; 2]> {
        let (lo, hi) = (self.r[0], *self.r.last().unwrap());
        if !(r >= lo * (1.0 - 1e-12) && r <= hi * (1.0 + 1e-12)) {
            return Err(Error::Domain(format!(
                "r = {r} outside the solution range [{lo}, {hi}]"
            )));
        }
        let [v, f, _] = Problem::new(&self.spec).propagate(
            self.seed.r_seed,
            self.seed.state,
            &[r],
            &self.config,
        )?[0];
        Ok([v, f])
    }

    /// `∫_a^b (Δ R'² − U R²) dr` over a sub-interval of the solution range.
    pub fn energy_between(&self, a: f64, b: f64) -> Result<f64> {
        let (lo, hi) = (self.r[0], *self.r.last().unwrap());
        if !(a >= lo * (1.0 - 1e-12) && b <= hi * (1.0 + 1e-12) && a <= b) {
            return Err(Error::Domain(format!("[{a}, {b}] not inside [{lo}, {hi}]")));
        }
        let ys = Problem::new(&self.spec).propagate(
            self.seed.r_seed,
            self.seed.state,
            &[a, b],
            &self.config,
        )?;
        Ok(ys[1][2] - ys[0][2])
    }

    /// The same solution multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in out
            .value
            .iter_mut()
            .chain(out.derivative.iter_mut())
            .chain(out.flux.iter_mut())
        {
            *v *= c;
        }
        for e in out.energy.iter_mut() {
            *e *= c * c;
        }
        out.seed.state = [c * self.seed.state[0], c * self.seed.state[1]];
        out
    }

    pub fn branch(&self) -> Option<Branch> {
        match &self.seed.seed {
            RadialSeed::Asymptotic(a) => Some(a.branch),
            RadialSeed::Infinity(a) => {
                let roots = super::infinity_exponents_oracle(&a.spec).ok()?;
                let lo = roots[0].re.min(roots[1].re);
                Some(if (a.exponent - lo).abs() < 1e-9 * (1.0 + lo.abs()) { Branch::Decaying } else { Branch::Growing })
            }
            RadialSeed::Frobenius(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Wronskian {
    pub r_match: f64,
    /// `Δ·(R₁R₂' − R₂R₁') = R₁P₂ − R₂P₁`.
    pub value: f64,
    /// `|value|` over the product of the `(R, ΔR')` norms of the two solutions.
    pub relative: f64,
}

pub fn connection_wronskian(
    a: &RadialSolution,
    b: &RadialSolution,
    r_match: f64,
) -> Result<Wronskian> {
    if a.spec != b.spec {
        return Err(Error::InvalidInput(
            "Wronskian of solutions for different modes".into(),
        ));
    }
    let ya = a.state_at(r_match)?;
    let yb = b.state_at(r_match)?;
    let value = ya[0] * yb[1] - yb[0] * ya[1];
    let norm = ya[0].hypot(ya[1]) * yb[0].hypot(yb[1]);
    let relative = if norm > 0.0 { value.abs() / norm } else { 0.0 };
    Ok(Wronskian {
        r_match,
        value,
        relative,
    })
}

/// Least-squares fit of `ln|R| = c + rate·r + power·ln r + b/r` to the samples with `r ≥ from`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalFormFit {
    pub rate: f64,
    pub power: f64,
    pub correction: f64,
    pub points: usize,
    pub rms: f64,
}

pub fn fit_normal_form(sol: &RadialSolution, from: f64) -> Result<NormalFormFit> {
    let rows: Vec<(f64, f64)> = sol
        .r
        .iter()
        .zip(&sol.value)
        .filter(|(r, v)| **r >= from && v.abs() > 0.0)
        .map(|(r, v)| (*r, v.abs().ln()))
        .collect();
    if rows.len() < 8 {
        return Err(Error::Fit(format!(
            "{} usable samples above r = {from}",
            rows.len()
        )));
    }
    let basis = |r: f64| [1.0, r, r.ln(), 1.0 / r];
    let mut a = DMatrix::from_fn(rows.len(), 4, |i, j| basis(rows[i].0)[j]);
    let norms: Vec<f64> = (0..4).map(|j| a.column(j).norm()).collect();
    for (j, n) in norms.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / n);
    }
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|x| x.1));
    let x = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Fit(e.into()))?;
    let rms = ((&a * &x - &b).norm_squared() / rows.len() as f64).sqrt();
    Ok(NormalFormFit {
        rate: x[1] / norms[1],
        power: x[2] / norms[2],
        correction: x[3] / norms[3],
        points: rows.len(),
        rms,
    })
}
