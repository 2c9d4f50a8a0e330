//! Background metrics, charts, identifications and adapted tetrads.

mod background;
mod charts;
mod metric;

pub(crate) use background::c;
pub use background::{random_points, Background, BackgroundKind, ChartPoint, DOMAIN_EPS};
pub use charts::{
    bolt_transition, chart_metric, chart_regularity_probe, chart_to_boyer_lindquist,
    identification_lattice, Chart, LatticeDescriptor, ProbeKind, RegularityReport,
};
pub use metric::{
    christoffel_eval, christoffel_lower, gram_matrix, inner, inverse,
    metric_compatibility_residual, metric_components, metric_eval, metric_jet, reference_gram,
    tetrad_components, tetrad_eval, CVec4, Christoffel, Mat4, MetricComponents, MetricJet, Tetrad,
    PH, R, T, TH,
};

#[cfg(test)]
mod tests;
