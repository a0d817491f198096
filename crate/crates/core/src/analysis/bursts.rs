use crate::dynamics::Trajectory;

/// Reference level for the reverse-mode power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    /// Fixed level in W.
    Constant(f64),
    /// Backscatter level `ratio · P₊(t)` following the pump.
    PumpFraction(f64),
}

impl Baseline {
    pub fn at(&self, traj: &Trajectory, index: usize) -> f64 {
        match *self {
            Baseline::Constant(level) => level,
            Baseline::PumpFraction(ratio) => ratio * traj.p_plus[index],
        }
    }
}

/// Peak statistics of the reverse-mode power.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BurstMetrics {
    /// Height of the first superradiant peak in W (0 if none).
    pub first_peak_height: f64,
    pub first_peak_time: Option<f64>,
    /// Baseline at the first peak.
    pub first_peak_baseline: f64,
    /// Pump power at the first peak.
    pub first_peak_pump: f64,
    /// Time from the start until P₋ first exceeds 10× the baseline.
    pub delay: Option<f64>,
    /// 10–90 % rise time of the first peak above the baseline pedestal.
    pub rise_time: Option<f64>,
    pub revival_times: Vec<f64>,
    pub revival_heights: Vec<f64>,
    /// Largest P₋/baseline over the trace (samples with zero baseline skipped).
    pub max_baseline_ratio: f64,
}

impl BurstMetrics {
    pub fn revival_count(&self) -> usize {
        self.revival_times.len()
    }

    pub fn has_burst(&self) -> bool {
        self.first_peak_time.is_some()
    }

    /// First-peak height relative to the baseline at that time.
    pub fn height_over_baseline(&self) -> f64 {
        if self.first_peak_baseline > 0.0 {
            self.first_peak_height / self.first_peak_baseline
        } else {
            f64::INFINITY
        }
    }
}

/// Indices of local maxima; flat tops report their middle sample.
pub fn local_maxima(y: &[f64]) -> Vec<usize> {
    let mut peaks = Vec::new();
    let n = y.len();
    let mut i = 1;
    while i + 1 < n {
        if y[i - 1] < y[i] {
            let mut ahead = i + 1;
            while ahead + 1 < n && y[ahead] == y[i] {
                ahead += 1;
            }
            if y[ahead] < y[i] {
                peaks.push((i + ahead - 1) / 2);
                i = ahead;
                continue;
            }
        }
        i += 1;
    }
    peaks
}

/// Topographic prominence of the peak at `index`.
pub fn prominence(y: &[f64], index: usize) -> f64 {
    let h = y[index];
    let mut left_min = h;
    for &v in y[..index].iter().rev() {
        if v > h {
            break;
        }
        left_min = left_min.min(v);
    }
    let mut right_min = h;
    for &v in &y[index + 1..] {
        if v > h {
            break;
        }
        right_min = right_min.min(v);
    }
    h - left_min.max(right_min)
}

fn crossing_time(t: &[f64], y: &[f64], i: usize, level: f64) -> f64 {
    let (y0, y1) = (y[i], y[i + 1]);
    if y1 == y0 {
        return t[i + 1];
    }
    t[i] + (level - y0) / (y1 - y0) * (t[i + 1] - t[i])
}

/// Time of the last upward crossing of `level` before `peak`.
fn last_crossing(t: &[f64], y: &[f64], peak: usize, level: f64) -> Option<(usize, f64)> {
    (0..peak)
        .rev()
        .find(|&i| y[i] < level && y[i + 1] >= level)
        .map(|i| (i, crossing_time(t, y, i, level)))
}

/// Locates superradiant bursts in the reverse-mode power.
///
/// Candidate peaks are local maxima with prominence of at least
/// `min_prominence` times the global maximum. The first candidate above the
/// baseline is the first burst; later candidates whose prominence exceeds
/// three times the baseline at their time are revivals.
pub fn detect_bursts(traj: &Trajectory, baseline: Baseline, min_prominence: f64) -> BurstMetrics {
    let y = &traj.p_minus;
    let t = &traj.t;
    let mut metrics = BurstMetrics::default();
    if y.is_empty() {
        return metrics;
    }

    for i in 0..y.len() {
        let level = baseline.at(traj, i);
        if level > 0.0 {
            if metrics.delay.is_none() && y[i] > 10.0 * level {
                metrics.delay = Some(t[i] - t[0]);
            }
            metrics.max_baseline_ratio = metrics.max_baseline_ratio.max(y[i] / level);
        }
    }

    let global_max = y.iter().copied().fold(0.0, f64::max);
    if global_max <= 0.0 {
        return metrics;
    }
    let threshold = min_prominence * global_max;
    let candidates: Vec<(usize, f64)> = local_maxima(y)
        .into_iter()
        .map(|i| (i, prominence(y, i)))
        .filter(|&(_, p)| p >= threshold)
        .collect();

    let Some(pos) = candidates.iter().position(|&(i, _)| y[i] > baseline.at(traj, i)) else {
        return metrics;
    };
    let (first, _) = candidates[pos];
    let pedestal = baseline.at(traj, first);
    metrics.first_peak_height = y[first];
    metrics.first_peak_time = Some(t[first]);
    metrics.first_peak_baseline = pedestal;
    metrics.first_peak_pump = traj.p_plus[first];

    let span = y[first] - pedestal;
    if let Some((i90, t90)) = last_crossing(t, y, first, pedestal + 0.9 * span) {
        if let Some((_, t10)) = last_crossing(t, y, i90 + 1, pedestal + 0.1 * span) {
            metrics.rise_time = Some(t90 - t10);
        }
    }

    for &(i, prom) in &candidates[pos + 1..] {
        if prom > 3.0 * baseline.at(traj, i) {
            metrics.revival_times.push(t[i]);
            metrics.revival_heights.push(y[i]);
        }
    }
    metrics
}
