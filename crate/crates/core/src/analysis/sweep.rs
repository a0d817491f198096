use rayon::prelude::*;

use super::bursts::BurstMetrics;
use super::powerlaw::{fit_power_law, PowerLawFit};
use crate::config::{RunConfig, SweepParameter};
use crate::error::{invalid, Result};
use crate::run::simulate;

/// One replicate of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateResult {
    pub seed: u64,
    /// `None` if the integration failed.
    pub metrics: Option<BurstMetrics>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub replicates: Vec<ReplicateResult>,
    /// Empty-cavity backscatter level ratio·P₊ at the nominal pump power.
    pub backscatter_level: f64,
}

impl SweepPoint {
    pub fn failed(&self) -> bool {
        self.replicates.iter().any(|r| r.metrics.is_none())
    }

    fn mean(&self, f: impl Fn(&BurstMetrics) -> f64) -> f64 {
        let values: Vec<f64> = self.replicates.iter().filter_map(|r| r.metrics.as_ref()).map(f).collect();
        if values.is_empty() {
            f64::NAN
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        }
    }

    pub fn mean_height(&self) -> f64 {
        self.mean(|m| m.first_peak_height)
    }

    pub fn mean_revivals(&self) -> f64 {
        self.mean(|m| m.revival_count() as f64)
    }

    pub fn mean_height_over_baseline(&self) -> f64 {
        self.mean(|m| m.height_over_baseline())
    }

    pub fn mean_peak_time(&self) -> f64 {
        self.mean(|m| m.first_peak_time.unwrap_or(f64::NAN))
    }

    pub fn mean_max_baseline_ratio(&self) -> f64 {
        self.mean(|m| m.max_baseline_ratio)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub points: Vec<SweepPoint>,
    /// First value whose mean peak height exceeds 3× the backscatter level.
    pub threshold: Option<f64>,
    pub fit: Option<PowerLawFit>,
    pub fit_range: Option<(f64, f64)>,
    pub failed_points: usize,
}

/// Runs `base` for every value and seed and fits the first-peak height
/// against the swept parameter above threshold.
///
/// Points run in parallel on `threads` worker threads (0 = all cores); the
/// result does not depend on the thread count.
pub fn run_sweep(
    base: &RunConfig,
    parameter: SweepParameter,
    values: &[f64],
    seeds: &[u64],
    threads: usize,
) -> Result<SweepResult> {
    if values.len() < 3 {
        return Err(invalid("a sweep needs at least 3 values"));
    }
    if seeds.is_empty() {
        return Err(invalid("a sweep needs at least one replicate seed"));
    }
    let configs: Vec<RunConfig> = values
        .iter()
        .map(|&v| {
            let mut c = base.clone();
            parameter.apply(&mut c.physical, v);
            c
        })
        .collect();
    let jobs: Vec<(usize, u64)> =
        (0..values.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| invalid(e.to_string()))?;
    let outcomes: Vec<Option<BurstMetrics>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, seed)| simulate(&configs[i], seed).ok().map(|out| out.metrics))
            .collect()
    });

    let mut points: Vec<SweepPoint> = configs
        .iter()
        .zip(values)
        .map(|(c, &value)| SweepPoint {
            value,
            replicates: Vec::with_capacity(seeds.len()),
            backscatter_level: c.physical.backscatter_ratio * c.physical.pump_power,
        })
        .collect();
    for (&(i, seed), metrics) in jobs.iter().zip(outcomes) {
        points[i].replicates.push(ReplicateResult { seed, metrics });
    }

    let failed_points = points.iter().filter(|p| p.failed()).count();
    let threshold_index = points
        .iter()
        .position(|p| !p.failed() && p.mean_height() > 3.0 * p.backscatter_level);
    let mut result = SweepResult {
        parameter,
        threshold: threshold_index.map(|i| points[i].value),
        fit: None,
        fit_range: None,
        failed_points,
        points,
    };
    if let Some(start) = threshold_index {
        let usable: Vec<(f64, f64)> = result.points[start..]
            .iter()
            .filter(|p| !p.failed() && p.mean_height() > 0.0)
            .map(|p| (p.value, p.mean_height()))
            .collect();
        if let Ok(fit) = fit_power_law(&usable, None) {
            result.fit = Some(fit);
            result.fit_range = Some((usable[0].0, usable[usable.len() - 1].0));
        }
    }
    Ok(result)
}
