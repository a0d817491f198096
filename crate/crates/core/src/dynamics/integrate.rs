use num_complex::Complex64;
use thiserror::Error;

use super::ensemble::bunching_of;
use super::model::{fields_of, rhs_packed, SimState};
use super::pump::PumpProfile;
use crate::error::{invalid, Error};
use crate::ode::{Dopri5, FailureKind, OdeFailure, OdeStats};
use crate::params::ModelParams;

/// Sampled time series of one integration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    /// Sample times in s.
    pub t: Vec<f64>,
    pub p_plus: Vec<f64>,
    pub p_minus: Vec<f64>,
    pub bunching: Vec<Complex64>,
    pub mean_u: Vec<f64>,
    pub std_u: Vec<f64>,
    /// Full states at the requested snapshot times.
    pub snapshots: Vec<SimState>,
    /// State at the last time reached.
    pub final_state: Option<SimState>,
    pub stats: OdeStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    fn push(&mut self, t: f64, y: &[f64], n: usize, model: &ModelParams) {
        let fields = fields_of(y, n);
        let momentum = &y[n..2 * n];
        let mean = momentum.iter().sum::<f64>() / n as f64;
        let var = momentum.iter().map(|u| (u - mean).powi(2)).sum::<f64>() / n as f64;
        self.t.push(t);
        self.p_plus.push(fields.pump.norm_sqr() * model.photon_power);
        self.p_minus.push(fields.reverse.norm_sqr() * model.photon_power);
        self.bunching.push(bunching_of(&y[..n]));
        self.mean_u.push(mean);
        self.std_u.push(var.sqrt());
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrateError {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("integration failed at t = {:.6e} s ({:?}, last step {:.3e} s)", .failure.t, .failure.kind, .failure.h)]
    Failed {
        failure: OdeFailure,
        /// Samples recorded before the failure.
        partial: Box<Trajectory>,
    },
}

impl IntegrateError {
    pub fn failure_kind(&self) -> Option<FailureKind> {
        match self {
            IntegrateError::Failed { failure, .. } => Some(failure.kind),
            IntegrateError::Invalid(_) => None,
        }
    }
}

/// Sample times `t0, t0 + dt, …` not exceeding `t_end`.
pub fn sample_grid(t0: f64, t_end: f64, dt: f64) -> Vec<f64> {
    let count = ((t_end - t0) / dt * (1.0 + 1e-12)).floor() as usize;
    (0..=count).map(|k| (t0 + k as f64 * dt).min(t_end)).collect()
}

/// Integrates from `init` to `t_end` with relative tolerance `tol`, sampling
/// every `sample_dt`.
pub fn integrate(
    init: &SimState,
    model: &ModelParams,
    pump: &PumpProfile,
    t_end: f64,
    tol: f64,
    sample_dt: f64,
) -> Result<Trajectory, IntegrateError> {
    integrate_with_snapshots(init, model, pump, t_end, tol, sample_dt, &[])
}

/// Like [`integrate`], additionally storing full states at `snapshot_times`
/// (ascending).
pub fn integrate_with_snapshots(
    init: &SimState,
    model: &ModelParams,
    pump: &PumpProfile,
    t_end: f64,
    tol: f64,
    sample_dt: f64,
    snapshot_times: &[f64],
) -> Result<Trajectory, IntegrateError> {
    if !(t_end.is_finite() && t_end > init.t) {
        return Err(invalid(format!("t_end {t_end} must exceed the start time {}", init.t)).into());
    }
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(invalid(format!("tol {tol} outside [1e-12, 1e-3]")).into());
    }
    if !(sample_dt.is_finite() && sample_dt > 0.0) {
        return Err(invalid("sample_dt must be positive").into());
    }
    if snapshot_times.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("snapshot times must be ascending").into());
    }

    let n = init.ensemble.len();
    let weight = init.ensemble.weight;
    let samples = sample_grid(init.t, t_end, sample_dt);
    let mut times: Vec<(f64, bool)> = samples.iter().map(|&t| (t, false)).collect();
    times.extend(
        snapshot_times
            .iter()
            .filter(|&&t| t >= init.t && t <= t_end)
            .map(|&t| (t, true)),
    );
    times.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let stops: Vec<f64> = times.iter().map(|x| x.0).collect();

    let mut traj = Trajectory::default();
    let mut cursor = 0;
    let solver = Dopri5::new(tol, tol);
    let result = solver.solve(
        |t, y, dy| rhs_packed(y, dy, model, weight, pump.eval(t)),
        init.t,
        &init.to_vector(),
        t_end,
        &stops,
        |t, y| {
            if times[cursor].1 {
                traj.snapshots.push(SimState::from_vector(t, y, weight));
            } else {
                traj.push(t, y, n, model);
            }
            cursor += 1;
        },
    );
    match result {
        Ok((y, stats)) => {
            traj.final_state = Some(SimState::from_vector(t_end, &y, weight));
            traj.stats = stats;
            Ok(traj)
        }
        Err(failure) => Err(IntegrateError::Failed { failure, partial: Box::new(traj) }),
    }
}
