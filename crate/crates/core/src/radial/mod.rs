//! The radial equation `(ΔR')' + UR = 0`: exponents at its singular points,
//! Frobenius and normal-solution expansions, integration and Wronskians.

pub(crate) mod expansion;
mod frobenius;
mod integrate;
mod singular;

pub use expansion::{
    asymptotic_normal_solution, infinity_series, liouville_q, liouville_tail, AsymptoticSolution, Branch, InfinitySeries, INFINITY_SERIES_MAX_ORDER,
    LiouvilleTail,
};
pub use frobenius::{frobenius_series, FrobeniusSeries, FROBENIUS_MAX_ORDER};
pub use integrate::{
    connection_wronskian, default_outer_radius, fit_normal_form, radial_integrate, switch_radius,
    NormalFormFit, RadialConfig, RadialSeed, RadialSolution, SeedDescriptor, Wronskian,
};
pub use singular::{
    indicial_oracle, infinity_exponents, infinity_exponents_oracle, singular_points, SingularKind,
    SingularLocation, SingularPointData,
};
