use super::growth::least_squares;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    /// Standard error of the exponent (0 for fewer than three points).
    pub exponent_stderr: f64,
    pub points: usize,
}

/// Fits `y = A·x^p` by least squares on `(ln x, ln y)`, restricted to
/// points with `x` inside `range` when given.
pub fn fit_power_law(points: &[(f64, f64)], range: Option<(f64, f64)>) -> Result<PowerLawFit> {
    let selected: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, _)| range.is_none_or(|(lo, hi)| x >= lo && x <= hi))
        .collect();
    if selected.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidData("power-law fit needs positive x and y".into()));
    }
    if selected.len() < 3 {
        return Err(Error::InvalidData(format!(
            "power-law fit needs at least 3 points, got {}",
            selected.len()
        )));
    }
    let lx: Vec<f64> = selected.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = selected.iter().map(|p| p.1.ln()).collect();
    let (slope, intercept) = least_squares(&lx, &ly);
    if !slope.is_finite() {
        return Err(Error::InvalidData("x values are all equal".into()));
    }
    let n = lx.len() as f64;
    let my = ly.iter().sum::<f64>() / n;
    let mx = lx.iter().sum::<f64>() / n;
    let ss_res: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let r_squared = if ss_res == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        r_squared,
        exponent_stderr: (ss_res / (n - 2.0) / sxx).sqrt(),
        points: selected.len(),
    })
}
