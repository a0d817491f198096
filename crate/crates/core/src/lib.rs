//! Semiclassical simulation and analysis of collective atomic recoil lasing
//! in a pumped ring cavity.
//!
//! * [`params`] converts laboratory quantities into model coefficients.
//! * [`dynamics`] integrates the macro-atom and two-mode field equations.
//! * [`analysis`] extracts bursts, growth rates, gain bandwidth and scaling
//!   exponents.
//! * [`config`] and [`io`] read and write configurations and CSV files.

pub mod analysis;
pub mod config;
pub mod constants;
pub mod dynamics;
mod error;
pub mod io;
pub mod ode;
pub mod params;
pub mod run;
pub mod seed;

pub use analysis::{
    detect_bursts, fit_growth_rate, fit_power_law, linear_dispersion, momentum_orders, run_sweep,
    Baseline, BurstMetrics, DispersionResult, PowerLawFit, SweepResult,
};
pub use config::{parse_config, serialize_config, Config, ConfigError, RunConfig, SweepConfig};
pub use dynamics::{
    bunching, integrate, powers, pump_eval, rhs, sample_ensemble, AtomEnsemble, FieldState,
    IntegrateError, PumpProfile, SimState, Trajectory,
};
pub use error::{Error, Result};
pub use params::{
    calibrate_backscatter, carl_gain, classify_regime, derive, kappa_from_decay,
    srs_free_space_gain, ModelParams, PhysicalParams, Regime,
};
