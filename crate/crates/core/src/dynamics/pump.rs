use std::path::Path;

use crate::error::{invalid, Result};

/// Time dependence of the pump drive η(t) in rad/s.
#[derive(Debug, Clone, PartialEq)]
pub enum PumpProfile {
    /// η_max·(1 − exp(−t/τ_bw)); τ_bw = 0 switches on instantly.
    Ramp { eta_max: f64, tau_bw: f64 },
    /// Measured trace, linearly interpolated and clamped at the ends.
    Recorded { samples: Vec<(f64, f64)> },
}

impl PumpProfile {
    pub fn ramp(eta_max: f64, tau_bw: f64) -> Result<Self> {
        if !(eta_max.is_finite() && eta_max >= 0.0) {
            return Err(invalid("ramp amplitude must be non-negative"));
        }
        if !(tau_bw.is_finite() && tau_bw >= 0.0) {
            return Err(invalid("ramp time constant must be non-negative"));
        }
        Ok(PumpProfile::Ramp { eta_max, tau_bw })
    }

    pub fn recorded(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("recorded pump trace is empty"));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(invalid("recorded pump times must be strictly increasing"));
        }
        if samples.iter().any(|&(t, eta)| !t.is_finite() || !eta.is_finite() || eta < 0.0) {
            return Err(invalid("recorded pump samples must be finite with eta >= 0"));
        }
        Ok(PumpProfile::Recorded { samples })
    }

    /// Constant drive.
    pub fn constant(eta: f64) -> Result<Self> {
        Self::recorded(vec![(0.0, eta)])
    }

    /// Reads a two-column CSV (`t_seconds, eta_rad_per_s`) with a header row.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let mut samples = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            if record.len() != 2 {
                return Err(invalid(format!(
                    "{}: row {} has {} columns, expected 2",
                    path.display(),
                    i + 2,
                    record.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    invalid(format!("{}: row {}: cannot parse '{s}'", path.display(), i + 2))
                })
            };
            samples.push((parse(&record[0])?, parse(&record[1])?));
        }
        Self::recorded(samples)
    }

    pub fn eval(&self, t: f64) -> f64 {
        pump_eval(self, t)
    }
}

/// Pump drive at time `t`.
pub fn pump_eval(p: &PumpProfile, t: f64) -> f64 {
    match p {
        PumpProfile::Ramp { eta_max, tau_bw } => {
            if *tau_bw == 0.0 {
                *eta_max
            } else {
                eta_max * -(-t / tau_bw).exp_m1()
            }
        }
        PumpProfile::Recorded { samples } => {
            let first = samples[0];
            let last = samples[samples.len() - 1];
            if t <= first.0 {
                return first.1;
            }
            if t >= last.0 {
                return last.1;
            }
            let hi = samples.partition_point(|&(ts, _)| ts <= t);
            let (t0, y0) = samples[hi - 1];
            let (t1, y1) = samples[hi];
            y0 + (y1 - y0) * (t - t0) / (t1 - t0)
        }
    }
}
