//! Burst metrics, growth rates, gain bandwidth, momentum orders and scaling
//! fits.

mod bursts;
mod dispersion;
mod growth;
mod orders;
mod powerlaw;
mod sweep;

pub use bursts::{detect_bursts, local_maxima, prominence, Baseline, BurstMetrics};
pub use dispersion::{
    default_detuning_grid, growth_rate_at, jacobian_growth_rate, linear_dispersion, steady_pump,
    DispersionResult,
};
pub use growth::{fit_growth_rate, GrowthFit};
pub use orders::momentum_orders;
pub use powerlaw::{fit_power_law, PowerLawFit};
pub use sweep::{run_sweep, ReplicateResult, SweepPoint, SweepResult};

/// Candidate peaks must reach this fraction of the global maximum in prominence.
pub const DEFAULT_MIN_PROMINENCE: f64 = 0.1;
