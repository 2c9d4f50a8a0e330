//! Spin coefficients, Weyl scalars, the tilde involution and residuals of the
//! Newman–Penrose equations in the Riemannian setting.
//!
//! Derivations: `D = l`, `Δ = l̄`, `δ = m`, `δ̃ = −m̄`; the tetrad Gram matrix has
//! `g(l, l̄) = g(m, m̄) = 1`. The tilded equations are obtained by exchanging
//! every quantity with its partner and `δ ↔ δ̃`.

mod closed;
mod extract;
mod residuals;
mod types;

pub use closed::{
    psi2_closed, spin_coeffs_closed, spin_coeffs_closed_at, weyl_scalars_closed,
    weyl_scalars_closed_at,
};
pub use extract::{
    spin_coeffs_numeric, spin_coeffs_numeric_with_residual, weyl_scalars_numeric, weyl_tensor,
    EXTRACTION_REJECT,
};
pub use residuals::{
    a1_identity_check, np_jets, np_residuals, FrameOp, Jet, NPResidualReport, NpJets,
};
pub use types::{tilde_map, SpinCoefficientSet, SpinCoeffs, Tilde, WeylScalarSet, SPIN_NAMES};

#[cfg(test)]
mod tests;
