//! Mode lattices, the separated potentials `U`, `Ũ`, `V`, and the identities
//! tying them to the four-dimensional operators `𝐋`, `𝐋̃`.
//!
//! `𝐑 = d/dr Δ d/dr + U(r)` and `𝐒 = (1/sinθ) d/dθ sinθ d/dθ + V(cosθ)`.

mod lattice;
mod operator;
mod potentials;

pub use lattice::{
    lattice_check, mode_lattice, LatticeConvention, LatticeMode, LatticeVerdict, ModeIndex,
    KERR_LATTICE_TOL,
};
pub use operator::{
    apply_l, field_jet, l_operator, separation_consistency, teukolsky_operator_identity, FieldJet,
    SeparationCheck, TeukolskyIdentity,
};
pub use potentials::{
    angular_coefficients, delta_u, potential_u, potential_u_at, potential_v,
    uv_decomposition_residual, uv_decomposition_terms, AngularCoefficients, Equation,
    PotentialSpec, UvDecomposition, REMOVABLE_TOL,
};

#[cfg(test)]
mod tests;
