use num_rational::Ratio;
use serde::Serialize;

use crate::geometry::{Background, BackgroundKind};
use crate::{Error, Result};

/// Winding numbers within this distance of an integer count as integral.
pub const KERR_LATTICE_TOL: f64 = 1e-9;

/// Separated mode `e^{i(mφ − ωt)} R(r) S(θ)` with separation constant `Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeIndex {
    pub kind: BackgroundKind,
    pub m: f64,
    pub omega: f64,
    pub lambda: f64,
}

impl ModeIndex {
    pub fn new(bg: &Background, m: f64, omega: f64, lambda: f64) -> Self {
        ModeIndex {
            kind: bg.kind(),
            m,
            omega,
            lambda,
        }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        ModeIndex { lambda, ..self }
    }

    /// Lattice membership for `bg`, as an error describing the violated condition.
    pub fn check_lattice(&self, bg: &Background, convention: LatticeConvention) -> Result<()> {
        if self.kind != bg.kind() {
            return Err(Error::InvalidInput(format!(
                "mode for {:?} used with {:?}",
                self.kind,
                bg.kind()
            )));
        }
        let v = lattice_check(bg, self.m, self.omega, convention);
        if v.accepted {
            Ok(())
        } else {
            Err(Error::OffLattice(v.reason))
        }
    }
}

/// Which Kerr frequency set to use. Taub-bolt has a single lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum LatticeConvention {
    /// `(ω + mΩ)/κ ∈ ℤ`, from invariance under both identifications.
    #[default]
    Invariance,
    /// `ω ∈ Ω + κℤ` for every `m`.
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeMode {
    pub m: f64,
    pub omega: f64,
    /// Frequency index: `ω = −mΩ + κn` (Kerr), `Ω + κn` (paper set) or `m + n` (Taub-bolt).
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeVerdict {
    pub accepted: bool,
    /// Integer frequency index when accepted.
    pub n: Option<i64>,
    pub reason: String,
}

fn exact_ratio(x: f64) -> Option<Ratio<i64>> {
    let q = Ratio::<i64>::approximate_float(x)?;
    (*q.numer() as f64 / *q.denom() as f64 == x).then_some(q)
}

fn frequency(bg: &Background, m: f64, n: i64, convention: LatticeConvention) -> f64 {
    match (bg, convention) {
        (Background::TaubBolt { .. }, _) => m + n as f64,
        (Background::Kerr { .. }, LatticeConvention::Invariance) => {
            -m * bg.omega_h() + bg.kappa() * n as f64
        }
        (Background::Kerr { .. }, LatticeConvention::Paper) => bg.omega_h() + bg.kappa() * n as f64,
    }
}

/// Whether `e^{i(mφ − ωt)}` descends to the identified manifold.
pub fn lattice_check(
    bg: &Background,
    m: f64,
    omega: f64,
    convention: LatticeConvention,
) -> LatticeVerdict {
    let reject = |reason: String| LatticeVerdict {
        accepted: false,
        n: None,
        reason,
    };
    match bg {
        Background::TaubBolt { .. } => {
            let (Some(mq), Some(wq)) = (exact_ratio(m), exact_ratio(omega)) else {
                return reject(format!(
                    "m = {m}, omega = {omega} not representable as exact rationals"
                ));
            };
            let two = Ratio::from_integer(2);
            if !(wq * two).is_integer() {
                return reject(format!("2 omega = {} not an integer", wq * two));
            }
            if !(wq - mq).is_integer() {
                return reject(format!("omega - m = {} not an integer", wq - mq));
            }
            LatticeVerdict {
                accepted: true,
                n: Some((wq - mq).to_integer()),
                reason: "accepted".into(),
            }
        }
        Background::Kerr { .. } => {
            if m.fract() != 0.0 || !m.is_finite() {
                return reject(format!("m = {m} not an integer"));
            }
            let w = match convention {
                LatticeConvention::Invariance => (omega + m * bg.omega_h()) / bg.kappa(),
                LatticeConvention::Paper => (omega - bg.omega_h()) / bg.kappa(),
            };
            let n = w.round();
            if (w - n).abs() > KERR_LATTICE_TOL {
                return reject(format!("winding number {w} not an integer"));
            }
            LatticeVerdict {
                accepted: true,
                n: Some(n as i64),
                reason: "accepted".into(),
            }
        }
    }
}

/// Admissible `(m, ω)` for the given `m` values and frequency indices.
/// `m` values off the azimuthal lattice (ℤ for Kerr, ½ℤ for Taub-bolt) are skipped.
pub fn mode_lattice(
    bg: &Background,
    ms: &[f64],
    ns: impl IntoIterator<Item = i64> + Clone,
    convention: LatticeConvention,
) -> Vec<LatticeMode> {
    let mut out = Vec::new();
    for &m in ms {
        let m_ok = match bg {
            Background::Kerr { .. } => m.fract() == 0.0,
            Background::TaubBolt { .. } => (2.0 * m).fract() == 0.0,
        };
        if !m_ok {
            continue;
        }
        for n in ns.clone() {
            let omega = frequency(bg, m, n, convention);
            if lattice_check(bg, m, omega, convention).accepted {
                out.push(LatticeMode { m, omega, n });
            }
        }
    }
    out
}
