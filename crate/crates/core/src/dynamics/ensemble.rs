use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{invalid, Result};
use crate::params::ModelParams;

/// Macro-atom phases θ_j = 2k·x_j (rad) and momenta u_j in units of ħk.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomEnsemble {
    pub theta: Vec<f64>,
    pub momentum: Vec<f64>,
    /// Real atoms represented by each macro-atom.
    pub weight: f64,
}

impl AtomEnsemble {
    pub fn new(theta: Vec<f64>, momentum: Vec<f64>, weight: f64) -> Result<Self> {
        if theta.len() != momentum.len() {
            return Err(invalid("theta and momentum lengths differ"));
        }
        if theta.len() < 2 {
            return Err(invalid("an ensemble needs at least two macro-atoms"));
        }
        if theta.iter().chain(&momentum).any(|v| !v.is_finite()) || !weight.is_finite() {
            return Err(invalid("ensemble entries must be finite"));
        }
        Ok(Self { theta, momentum, weight })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn mean_momentum(&self) -> f64 {
        self.momentum.iter().sum::<f64>() / self.len() as f64
    }

    pub fn momentum_std(&self) -> f64 {
        let mean = self.mean_momentum();
        let var = self.momentum.iter().map(|u| (u - mean).powi(2)).sum::<f64>() / self.len() as f64;
        var.sqrt()
    }
}

/// Bunching b = ⟨exp(−iθ)⟩.
pub fn bunching(e: &AtomEnsemble) -> Complex64 {
    bunching_of(&e.theta)
}

pub(crate) fn bunching_of(theta: &[f64]) -> Complex64 {
    let sum: Complex64 = theta.iter().map(|&t| Complex64::from_polar(1.0, -t)).sum();
    sum / theta.len() as f64
}

/// Momentum spread σ_u = sqrt(k_B T m)/(ħk) in units of ħk.
pub fn momentum_spread(model: &ModelParams, temperature: f64) -> f64 {
    (BOLTZMANN * temperature * model.atom_mass).sqrt() / (HBAR * model.wavenumber)
}

/// Number of grid phases that share one momentum under quiet loading.
fn beamlet_size(n_sim: usize) -> usize {
    [4, 3, 2].into_iter().find(|m| n_sim % m == 0).unwrap_or(1)
}

/// Loads `n_sim` macro-atoms at temperature `temperature`.
///
/// With `quiet_start` the phases form the regular grid 2πj/n_sim and are
/// grouped into beamlets of M equally spaced phases (M = 4, 3 or 2, the
/// first that divides n_sim). Grid index `j + m·n_sim/M` belongs to beamlet
/// `j`, and all members of a beamlet share one momentum drawn from the
/// thermal distribution, so the bunching stays exactly zero under free
/// streaming. Without `quiet_start`, phases are uniform random and every
/// macro-atom has its own momentum.
pub fn sample_ensemble(
    n_sim: usize,
    temperature: f64,
    model: &ModelParams,
    seed: u64,
    quiet_start: bool,
) -> Result<AtomEnsemble> {
    if n_sim < 2 {
        return Err(invalid(format!("n_sim must be at least 2, got {n_sim}")));
    }
    if !(temperature.is_finite() && temperature >= 0.0) {
        return Err(invalid(format!("temperature must be non-negative, got {temperature}")));
    }
    let sigma = momentum_spread(model, temperature);
    let normal = Normal::new(0.0, sigma).map_err(|e| invalid(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = model.atom_number / n_sim as f64;

    let (theta, momentum) = if quiet_start {
        let theta: Vec<f64> = (0..n_sim).map(|i| TAU * i as f64 / n_sim as f64).collect();
        let members = beamlet_size(n_sim);
        let beamlets = n_sim / members;
        let draws: Vec<f64> = (0..beamlets).map(|_| normal.sample(&mut rng)).collect();
        let momentum = (0..n_sim).map(|i| draws[i % beamlets]).collect();
        (theta, momentum)
    } else {
        let momentum: Vec<f64> = (0..n_sim).map(|_| normal.sample(&mut rng)).collect();
        let theta = (0..n_sim).map(|_| rng.random_range(0.0..TAU)).collect();
        (theta, momentum)
    };
    AtomEnsemble::new(theta, momentum, weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bunching_examples() {
        let e = AtomEnsemble::new(vec![0.0; 3], vec![0.0; 3], 1.0).unwrap();
        assert_eq!(bunching(&e), Complex64::new(1.0, 0.0));
        let e = AtomEnsemble::new(vec![0.0, PI / 2.0], vec![0.0; 2], 1.0).unwrap();
        let b = bunching(&e);
        assert!((b - Complex64::new(0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn beamlet_sizes() {
        assert_eq!(beamlet_size(100), 4);
        assert_eq!(beamlet_size(9), 3);
        assert_eq!(beamlet_size(2), 2);
        assert_eq!(beamlet_size(7), 1);
    }

    #[test]
    fn rejects_bad_ensembles() {
        assert!(AtomEnsemble::new(vec![0.0], vec![0.0], 1.0).is_err());
        assert!(AtomEnsemble::new(vec![0.0, 1.0], vec![0.0], 1.0).is_err());
        assert!(AtomEnsemble::new(vec![0.0, f64::NAN], vec![0.0; 2], 1.0).is_err());
    }
}
