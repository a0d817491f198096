//! Single-run orchestration shared by the sweep runner and the CLI.

use crate::analysis::{
    default_detuning_grid, detect_bursts, linear_dispersion, Baseline, BurstMetrics, DispersionResult,
    DEFAULT_MIN_PROMINENCE,
};
use crate::config::{PumpSettings, RunConfig};
use crate::dynamics::{initial_state, integrate, sample_ensemble, IntegrateError, PumpProfile, Trajectory};
use crate::error::Result;
use crate::params::{classify_regime, derive, ModelParams, RegimeReport, DEFAULT_HYSTERESIS};

/// Model coefficients and pump profile for a run configuration.
pub fn prepare(config: &RunConfig) -> Result<(ModelParams, PumpProfile)> {
    let sim = &config.simulation;
    let mut model = derive(&config.physical, sim.n_sim, config.pump.tau_bw())?;
    if let Some(detuning) = sim.cavity_detuning {
        model.cavity_detuning = detuning;
    }
    let pump = match &config.pump {
        PumpSettings::Ramp { tau_bw } => PumpProfile::ramp(model.eta, *tau_bw)?,
        PumpSettings::Recorded { file } => PumpProfile::from_csv(file)?,
    };
    Ok((model, pump))
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub model: ModelParams,
    pub trajectory: Trajectory,
    pub metrics: BurstMetrics,
}

/// Burst metrics with the backscatter level following the pump.
pub fn burst_metrics(model: &ModelParams, traj: &Trajectory) -> BurstMetrics {
    let ratio = (model.beta.norm() / model.kappa).powi(2);
    detect_bursts(traj, Baseline::PumpFraction(ratio), DEFAULT_MIN_PROMINENCE)
}

/// Samples the ensemble with `seed`, integrates to `t_end` and extracts
/// burst metrics.
pub fn simulate(config: &RunConfig, seed: u64) -> std::result::Result<RunOutput, IntegrateError> {
    let (model, pump) = prepare(config)?;
    let sim = &config.simulation;
    let ensemble = sample_ensemble(sim.n_sim, config.physical.temperature, &model, seed, sim.quiet_start)?;
    let trajectory = integrate(&initial_state(ensemble), &model, &pump, sim.t_end, sim.tol, sim.sample_dt)?;
    let metrics = burst_metrics(&model, &trajectory);
    Ok(RunOutput { model, trajectory, metrics })
}

/// Derived model, dispersion analysis and regime for a configuration.
#[derive(Debug, Clone)]
pub struct Classification {
    pub model: ModelParams,
    pub dispersion: DispersionResult,
    pub report: RegimeReport,
}

/// Classifies the operating regime from the linearized dispersion.
pub fn classify(config: &RunConfig) -> Result<Classification> {
    let (model, _) = prepare(config)?;
    let grid = default_detuning_grid(&model, 801);
    let dispersion = linear_dispersion(&model, &grid)?;
    let regime = classify_regime(dispersion.gain_bandwidth, model.kappa, model.recoil, DEFAULT_HYSTERESIS);
    let report = RegimeReport { regime, gain_bandwidth: dispersion.gain_bandwidth, gain: model.carl_gain() };
    Ok(Classification { model, dispersion, report })
}
