use std::collections::BTreeMap;

use num_complex::Complex;
use serde::Serialize;

use super::closed::{spin_coeffs_closed_at, weyl_scalars_closed_at};
use super::types::SpinCoeffs;
use crate::geometry::{tetrad_components, Background, ChartPoint, R, TH};
use crate::numerics::HyperDual;
use crate::Result;

type C64 = Complex<f64>;

/// A complex field on `(r, θ)` with its two coordinate derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: C64,
    pub dr: C64,
    pub dth: C64,
}

impl Jet {
    fn from_hd(z: Complex<HyperDual<f64>>) -> Self {
        Jet {
            v: Complex::new(z.re.value, z.im.value),
            dr: Complex::new(z.re.d1, z.im.d1),
            dth: Complex::new(z.re.d2, z.im.d2),
        }
    }

    fn lin(terms: &[(f64, Jet)]) -> Jet {
        let mut out = Jet {
            v: C64::new(0.0, 0.0),
            dr: C64::new(0.0, 0.0),
            dth: C64::new(0.0, 0.0),
        };
        for &(k, j) in terms {
            out.v += j.v * k;
            out.dr += j.dr * k;
            out.dth += j.dth * k;
        }
        out
    }
}

/// A tetrad direction as a derivation: component values and component jets.
#[derive(Clone, Copy, Debug)]
pub struct FrameOp {
    pub comps: [Jet; 4],
}

impl FrameOp {
    pub fn apply(&self, f: &Jet) -> C64 {
        self.comps[R].v * f.dr + self.comps[TH].v * f.dth
    }

    fn neg(&self) -> FrameOp {
        FrameOp {
            comps: self.comps.map(|j| Jet::lin(&[(-1.0, j)])),
        }
    }
}

/// Closed-form NP data on `(r, θ)` with first derivatives, and the four
/// derivations `D = l`, `Δ = l̄`, `δ = m`, `δ̃ = −m̄`.
pub struct NpJets {
    pub plain: SpinCoeffs<Jet>,
    pub tilded: SpinCoeffs<Jet>,
    pub psi: [Jet; 5],
    pub psi_tilde: [Jet; 5],
    pub d: FrameOp,
    pub delta_op: FrameOp,
    pub dlt: FrameOp,
    pub dlt_tilde: FrameOp,
}

pub fn np_jets(bg: &Background, r: f64, theta: f64) -> NpJets {
    let rr = HyperDual::new(r, 1.0, 0.0, 0.0);
    let tt = HyperDual::new(theta, 0.0, 1.0, 0.0);
    let sc = spin_coeffs_closed_at(bg, rr, tt);
    let w = weyl_scalars_closed_at(bg, rr, tt);
    let frame = tetrad_components(bg, rr, tt).frame().map(|v| FrameOp {
        comps: v.map(Jet::from_hd),
    });
    NpJets {
        plain: sc.plain.map(Jet::from_hd),
        tilded: sc.tilded.map(Jet::from_hd),
        psi: w.psi.map(Jet::from_hd),
        psi_tilde: w.psi_tilde.map(Jet::from_hd),
        d: frame[0],
        delta_op: frame[1],
        dlt: frame[2],
        dlt_tilde: frame[3].neg(),
    }
}

/// One sector's view: its coefficients `s`, the partner `t`, Weyl scalars and
/// the derivations with `δ`, `δ̃` exchanged in the tilded view.
pub(crate) struct Sector<'a> {
    pub(crate) s: &'a SpinCoeffs<Jet>,
    pub(crate) t: &'a SpinCoeffs<Jet>,
    pub(crate) psi: &'a [Jet; 5],
    pub(crate) d: &'a FrameOp,
    pub(crate) de: &'a FrameOp,
    pub(crate) dl: &'a FrameOp,
    pub(crate) dlt: &'a FrameOp,
}

impl NpJets {
    pub(crate) fn sector(&self, tilded: bool) -> Sector<'_> {
        if tilded {
            Sector {
                s: &self.tilded,
                t: &self.plain,
                psi: &self.psi_tilde,
                d: &self.d,
                de: &self.delta_op,
                dl: &self.dlt_tilde,
                dlt: &self.dlt,
            }
        } else {
            Sector {
                s: &self.plain,
                t: &self.tilded,
                psi: &self.psi,
                d: &self.d,
                de: &self.delta_op,
                dl: &self.dlt,
                dlt: &self.dlt_tilde,
            }
        }
    }
}

fn vacuum_and_bianchi(x: &Sector) -> Vec<(&'static str, C64)> {
    let s = x.s.map(|j| j.v);
    let t = x.t.map(|j| j.v);
    let p: Vec<C64> = x.psi.iter().map(|j| j.v).collect();
    let (al, be, ga, ep, ka, la, mu, nu, pi, rh, si, ta) = (
        s.alpha, s.beta, s.gamma, s.epsilon, s.kappa, s.lambda, s.mu, s.nu, s.pi, s.rho, s.sigma,
        s.tau,
    );
    let (alt, bet, gat, ept, kat, mu_t, pit, rht, sit, tat) = (
        t.alpha, t.beta, t.gamma, t.epsilon, t.kappa, t.mu, t.pi, t.rho, t.sigma, t.tau,
    );
    let j = x.s;
    let (d, de, dl, dlt) = (x.d, x.de, x.dl, x.dlt);
    let ps = x.psi;
    vec![
        (
            "D_alpha",
            d.apply(&j.alpha)
                - dlt.apply(&j.epsilon)
                - (-bet * ep - ga * kat - ka * la
                    + pi * (ep + rh)
                    + al * (-2.0 * ep + ept + rh)
                    + be * sit),
        ),
        (
            "D_beta",
            d.apply(&j.beta)
                - dl.apply(&j.epsilon)
                - (p[1] - alt * ep - ka * (ga + mu)
                    + ep * pit
                    + be * (-ept + rht)
                    + (al + pi) * si),
        ),
        (
            "D_gamma",
            d.apply(&j.gamma)
                - de.apply(&j.epsilon)
                - (p[2] - gat * ep - ga * (2.0 * ep + ept) - ka * nu
                    + pi * (be + ta)
                    + al * (pit + ta)
                    + be * tat),
        ),
        (
            "D_lambda",
            d.apply(&j.lambda)
                - dlt.apply(&j.pi)
                - (-kat * nu + pi * (al - bet + pi) + la * (-3.0 * ep + ept + rh) + mu * sit),
        ),
        (
            "D_rho",
            d.apply(&j.rho)
                - dlt.apply(&j.kappa)
                - (ka * (-3.0 * al - bet + pi) + rh * (ep + ept + rh) + si * sit - kat * ta),
        ),
        (
            "D_sigma",
            d.apply(&j.sigma)
                - dl.apply(&j.kappa)
                - (p[0] + (3.0 * ep - ept + rh + rht) * si - ka * (alt + 3.0 * be - pit + ta)),
        ),
        (
            "D_tau",
            d.apply(&j.tau)
                - de.apply(&j.kappa)
                - (p[1] - (3.0 * ga + gat) * ka
                    + pit * rh
                    + (ep - ept + rh) * ta
                    + si * (pi + tat)),
        ),
        (
            "Delta_rho",
            de.apply(&j.rho)
                - dlt.apply(&j.tau)
                - (-p[2] + ka * nu + (ga + gat - mu_t) * rh - la * si - ta * (al - bet + tat)),
        ),
        (
            "delta_alpha",
            dl.apply(&j.alpha)
                - dlt.apply(&j.beta)
                - (-p[2] + al * (alt - 2.0 * be) + be * bet + ep * (mu - mu_t) + (ga + mu) * rh
                    - ga * rht
                    - la * si),
        ),
        (
            "delta_rho",
            dl.apply(&j.rho)
                - dlt.apply(&j.sigma)
                - (-p[1]
                    + ka * (mu - mu_t)
                    + (alt + be) * rh
                    + (-3.0 * al + bet) * si
                    + (rh - rht) * ta),
        ),
        (
            "deltat_Psi0",
            dlt.apply(&ps[0])
                - d.apply(&ps[1])
                - ((4.0 * al - pi) * p[0] - 2.0 * (ep + 2.0 * rh) * p[1] + 3.0 * ka * p[2]),
        ),
        (
            "deltat_Psi1",
            dlt.apply(&ps[1])
                - d.apply(&ps[2])
                - (la * p[0] + 2.0 * (al - pi) * p[1] - 3.0 * rh * p[2] + 2.0 * ka * p[3]),
        ),
        (
            "Delta_Psi0",
            de.apply(&ps[0])
                - dl.apply(&ps[1])
                - (4.0 * ga * p[0] - mu * p[0] - 2.0 * (be + 2.0 * ta) * p[1] + 3.0 * si * p[2]),
        ),
        (
            "Delta_Psi1",
            de.apply(&ps[1])
                - dl.apply(&ps[2])
                - (nu * p[0] + 2.0 * (ga - mu) * p[1] - 3.0 * ta * p[2] + 2.0 * si * p[3]),
        ),
    ]
}

/// Commutators applied to the coordinate functions; max over the four.
fn commutators(x: &Sector) -> Vec<(&'static str, C64)> {
    let s = x.s.map(|j| j.v);
    let t = x.t.map(|j| j.v);
    let (d, de, dl, dlt) = (x.d, x.de, x.dl, x.dlt);
    let mut worst = [(0.0f64, C64::new(0.0, 0.0)); 4];
    for nu in 0..4 {
        // X(x^ν) = X^ν and X(Y(x^ν)) = X(Y^ν).
        let c = |a: &FrameOp, b: &FrameOp| a.apply(&b.comps[nu]) - b.apply(&a.comps[nu]);
        let (dn, den, dln, dltn) = (
            d.comps[nu].v,
            de.comps[nu].v,
            dl.comps[nu].v,
            dlt.comps[nu].v,
        );
        let vals = [
            c(d, de)
                - (-(s.gamma + t.gamma) * dn - (s.epsilon + t.epsilon) * den
                    + (s.pi + t.tau) * dln
                    + (t.pi + s.tau) * dltn),
            c(d, dl)
                - (-(t.alpha + s.beta - t.pi) * dn - s.kappa * den
                    + (s.epsilon - t.epsilon + t.rho) * dln
                    + s.sigma * dltn),
            c(de, dl)
                - (t.nu * dn + (t.alpha + s.beta - s.tau) * den + (s.gamma - t.gamma - s.mu) * dln
                    - t.lambda * dltn),
            c(dl, dlt)
                - ((s.mu - t.mu) * dn
                    + (s.rho - t.rho) * den
                    + (-s.alpha + t.beta) * dln
                    + (t.alpha - s.beta) * dltn),
        ];
        for (w, v) in worst.iter_mut().zip(vals) {
            if v.norm() >= w.0 {
                *w = (v.norm(), v);
            }
        }
    }
    vec![
        ("[D,Delta]", worst[0].1),
        ("[D,delta]", worst[1].1),
        ("[Delta,delta]", worst[2].1),
        ("[delta,deltat]", worst[3].1),
    ]
}

/// Per-equation `|LHS − RHS|`; tilded versions carry a leading `~`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NPResidualReport {
    pub entries: BTreeMap<String, f64>,
}

impl NPResidualReport {
    pub fn max(&self) -> f64 {
        self.entries.values().copied().fold(0.0, f64::max)
    }

    /// Entry-wise maximum, for aggregating over points.
    pub fn merge(&mut self, other: &NPResidualReport) {
        for (k, v) in &other.entries {
            let e = self.entries.entry(k.clone()).or_insert(0.0);
            *e = e.max(*v);
        }
    }
}

/// Every commutator, vacuum equation and Bianchi identity, and their tilded versions.
pub fn np_residuals(bg: &Background, p: &ChartPoint) -> Result<NPResidualReport> {
    p.validate(bg)?;
    let jets = np_jets(bg, p.r, p.theta);
    let mut entries = BTreeMap::new();
    for tilded in [false, true] {
        let sector = jets.sector(tilded);
        let prefix = if tilded { "~" } else { "" };
        for (name, v) in vacuum_and_bianchi(&sector)
            .into_iter()
            .chain(commutators(&sector))
        {
            entries.insert(format!("{prefix}{name}"), v.norm());
        }
    }
    Ok(NPResidualReport { entries })
}

/// Coefficient of `Ψ̇₁` in the decoupling argument,
/// `A₁ = a₁(−4τ−2β) − b₁(−4ρ−2ε) − D(4τ+2β) + δ(4ρ+2ε)` with
/// `a₁ = −3ε+ε̃−ρ̃−4ρ`, `b₁ = −α̃−3β+π̃−4τ`; returns `(|A₁|, |Ã₁|)`.
pub fn a1_identity_check(bg: &Background, p: &ChartPoint) -> Result<(f64, f64)> {
    p.validate(bg)?;
    let jets = np_jets(bg, p.r, p.theta);
    let one = |x: &Sector| {
        let s = x.s.map(|j| j.v);
        let t = x.t.map(|j| j.v);
        let a1 = -3.0 * s.epsilon + t.epsilon - t.rho - 4.0 * s.rho;
        let b1 = -t.alpha - 3.0 * s.beta + t.pi - 4.0 * s.tau;
        let tb = Jet::lin(&[(4.0, x.s.tau), (2.0, x.s.beta)]);
        let re = Jet::lin(&[(4.0, x.s.rho), (2.0, x.s.epsilon)]);
        (a1 * (-tb.v) - b1 * (-re.v) - x.d.apply(&tb) + x.dl.apply(&re)).norm()
    };
    Ok((one(&jets.sector(false)), one(&jets.sector(true))))
}
