use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::dynamics::{rhs_packed, AtomEnsemble, FieldState, SimState};
use crate::error::{invalid, Result};
use crate::params::ModelParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Linear stability of the cold, unbunched, pumped cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionResult {
    /// Cavity detuning from the atom-shifted resonance, δ = Δ_c − U0·N (rad/s).
    pub detuning: Vec<f64>,
    /// Largest real part of the linearized eigenvalues at each detuning (1/s).
    pub growth_rate: Vec<f64>,
    pub peak_rate: f64,
    pub peak_detuning: f64,
    /// Collective gain bandwidth Δω_G = 2·peak_rate, the full width at half
    /// maximum of the amplification line of the fastest growing mode.
    pub gain_bandwidth: f64,
    /// Full width at half maximum of `growth_rate` over the detuning grid.
    pub detuning_fwhm: f64,
    pub no_gain: bool,
}

/// Steady pump amplitude η/(κ − iδ) of the empty cavity at detuning δ.
pub fn steady_pump(model: &ModelParams, detuning: f64) -> Complex64 {
    model.eta / Complex64::new(model.kappa, -detuning)
}

/// Growth rate from the closed linear system in (b, s, α₋*) with
/// s = ⟨ω_r u e^{−iθ}⟩:
///
/// ```text
/// db/dt   = −i s
/// ds/dt   = −2i ω_r U0 α₊ α₋*
/// dα₋*/dt = (−κ − iδ) α₋* + i U0 N α₊* b
/// ```
pub fn growth_rate_at(model: &ModelParams, pump: Complex64, detuning: f64) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let m = Matrix3::new(
        zero,
        -I,
        zero,
        zero,
        zero,
        -2.0 * I * model.recoil * model.u0 * pump,
        I * model.u0 * model.atom_number * pump.conj(),
        zero,
        Complex64::new(-model.kappa, -detuning),
    );
    let eigen = m.eigenvalues().expect("complex Schur form is triangular");
    eigen.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
}

/// Symmetric grid around the shifted resonance wide enough to contain the
/// gain line.
pub fn default_detuning_grid(model: &ModelParams, points: usize) -> Vec<f64> {
    let coupling = (2.0 * model.recoil * (model.u0 * model.eta / model.kappa).powi(2)
        * model.atom_number)
        .cbrt();
    let half = 6.0 * model.kappa.max(coupling);
    let points = points.max(3);
    (0..points)
        .map(|i| -half + 2.0 * half * i as f64 / (points - 1) as f64)
        .collect()
}

/// Evaluates the growth rate over `grid` with the pump at its steady state
/// for each detuning.
pub fn linear_dispersion(model: &ModelParams, grid: &[f64]) -> Result<DispersionResult> {
    if grid.is_empty() {
        return Err(invalid("detuning grid is empty"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("detuning grid must be strictly increasing"));
    }
    let rates: Vec<f64> = grid
        .iter()
        .map(|&d| growth_rate_at(model, steady_pump(model, d), d))
        .collect();
    let (peak_index, &peak_rate) = rates
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is nonempty");
    let no_gain = peak_rate.is_nan() || peak_rate <= 1e-9 * model.kappa;
    if no_gain {
        return Ok(DispersionResult {
            detuning: grid.to_vec(),
            growth_rate: rates,
            peak_rate: peak_rate.max(0.0),
            peak_detuning: grid[peak_index],
            gain_bandwidth: 0.0,
            detuning_fwhm: 0.0,
            no_gain,
        });
    }

    let half = peak_rate / 2.0;
    let edge = |range: &mut dyn Iterator<Item = usize>| -> f64 {
        let mut prev = peak_index;
        for i in range {
            if rates[i] < half {
                let f = (half - rates[i]) / (rates[prev] - rates[i]);
                return grid[i] + f * (grid[prev] - grid[i]);
            }
            prev = i;
        }
        grid[prev]
    };
    let lower = edge(&mut (0..peak_index).rev());
    let upper = edge(&mut (peak_index + 1..grid.len()));

    Ok(DispersionResult {
        detuning: grid.to_vec(),
        growth_rate: rates,
        peak_rate,
        peak_detuning: grid[peak_index],
        gain_bandwidth: 2.0 * peak_rate,
        detuning_fwhm: upper - lower,
        no_gain,
    })
}

/// Largest real part of the eigenvalues of a central-difference Jacobian of
/// the full equations of motion at the stationary cold, unbunched state with
/// cavity detuning `detuning` from the shifted resonance.
pub fn jacobian_growth_rate(model: &ModelParams, detuning: f64) -> f64 {
    let n_sim = 3;
    let weight = model.atom_number / n_sim as f64;
    let mut m = model.clone();
    m.cavity_detuning = model.u0 * model.atom_number + detuning;
    m.beta = Complex64::new(0.0, 0.0);
    let state = SimState {
        t: 0.0,
        ensemble: AtomEnsemble {
            theta: (0..n_sim).map(|j| std::f64::consts::TAU * j as f64 / n_sim as f64).collect(),
            momentum: vec![0.0; n_sim],
            weight,
        },
        fields: FieldState { pump: steady_pump(model, detuning), reverse: Complex64::new(0.0, 0.0) },
    };
    let y0 = state.to_vector();
    let dim = y0.len();
    let mut jac = DMatrix::<f64>::zeros(dim, dim);
    let mut plus = vec![0.0; dim];
    let mut minus = vec![0.0; dim];
    for col in 0..dim {
        let h = 1e-6 * y0[col].abs().max(1.0);
        let mut y = y0.clone();
        y[col] = y0[col] + h;
        rhs_packed(&y, &mut plus, &m, weight, m.eta);
        y[col] = y0[col] - h;
        rhs_packed(&y, &mut minus, &m, weight, m.eta);
        for row in 0..dim {
            jac[(row, col)] = (plus[row] - minus[row]) / (2.0 * h);
        }
    }
    jac.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}
