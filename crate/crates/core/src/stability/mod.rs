//! The mode-stability certificate: negativity of the radial potential, positivity
//! of the energy integral, and a scan for modes that are regular at the inner
//! boundary and decaying at infinity.

mod energy;
mod negativity;
mod scan;

pub use energy::{energy_functional, RadialProfile};
pub use negativity::{negativity_certificate, ModeNegativity, NegativityConfig, NegativityReport, TailBound};
pub use scan::{connection_check, mode_scan, ModeScanReport, RowVerdict, ScanConfig, ScanRow, ScanVerdict};

use serde::Serialize;

use crate::{Error, Result};

/// Environment variable capping the worker threads of the grid and scan loops.
pub const THREADS_ENV: &str = "INSTANTON_LAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    Certified,
    NotCertified,
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("{THREADS_ENV} = {v:?} is not a thread count")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

/// `max` that keeps NaN, so a poisoned grid value cannot be skipped.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
