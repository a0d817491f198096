use crate::dynamics::Trajectory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    /// Field amplitude growth rate, half the slope of ln P₋.
    pub rate: f64,
    /// RMS residual of ln P₋ about the fitted line.
    pub residual: f64,
    pub samples: usize,
}

/// Least-squares exponential growth rate of P₋ on `window = (t0, t1)`.
pub fn fit_growth_rate(traj: &Trajectory, window: (f64, f64)) -> Result<GrowthFit> {
    let (t0, t1) = window;
    if t0.is_nan() || t1.is_nan() || t1 <= t0 {
        return Err(Error::InvalidWindow(format!("empty window [{t0}, {t1}]")));
    }
    if traj.t.is_empty() || t0 < traj.t[0] || t1 > traj.t[traj.t.len() - 1] {
        return Err(Error::InvalidWindow("window outside the trajectory".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &p) in traj.t.iter().zip(&traj.p_minus) {
        if t < t0 || t > t1 {
            continue;
        }
        if p.is_nan() || p <= 0.0 {
            return Err(Error::InvalidWindow(format!("non-positive P- = {p} at t = {t}")));
        }
        xs.push(t);
        ys.push(p.ln());
    }
    if xs.len() < 2 {
        return Err(Error::InvalidWindow("fewer than two samples in window".into()));
    }
    let (slope, intercept) = least_squares(&xs, &ys);
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / xs.len() as f64)
        .sqrt();
    Ok(GrowthFit { rate: slope / 2.0, residual, samples: xs.len() })
}

/// Ordinary least-squares line through centred data: (slope, intercept).
pub(crate) fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
