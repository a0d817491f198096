use num_complex::Complex64;

use super::ensemble::AtomEnsemble;
use super::pump::PumpProfile;
use crate::params::ModelParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pump-mode (α₊) and reverse-mode (α₋) amplitudes, normalized so that
/// |α|² is the intracavity photon number.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldState {
    pub pump: Complex64,
    pub reverse: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: f64,
    pub ensemble: AtomEnsemble,
    pub fields: FieldState,
}

/// Time derivative of a [`SimState`].
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub theta: Vec<f64>,
    pub momentum: Vec<f64>,
    pub pump: Complex64,
    pub reverse: Complex64,
}

impl SimState {
    /// Packs the state as `[θ…, u…, Re α₊, Im α₊, Re α₋, Im α₋]`.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut y = Vec::with_capacity(2 * self.ensemble.len() + 4);
        y.extend_from_slice(&self.ensemble.theta);
        y.extend_from_slice(&self.ensemble.momentum);
        y.extend([
            self.fields.pump.re,
            self.fields.pump.im,
            self.fields.reverse.re,
            self.fields.reverse.im,
        ]);
        y
    }

    pub(crate) fn from_vector(t: f64, y: &[f64], weight: f64) -> Self {
        let n = (y.len() - 4) / 2;
        SimState {
            t,
            ensemble: AtomEnsemble {
                theta: y[..n].to_vec(),
                momentum: y[n..2 * n].to_vec(),
                weight,
            },
            fields: fields_of(y, n),
        }
    }

    /// w·Σu + |α₊|² − |α₋|², total momentum in units of ħk.
    pub fn total_momentum(&self) -> f64 {
        self.ensemble.weight * self.ensemble.momentum.iter().sum::<f64>()
            + self.fields.pump.norm_sqr()
            - self.fields.reverse.norm_sqr()
    }

    pub fn photon_number(&self) -> f64 {
        self.fields.pump.norm_sqr() + self.fields.reverse.norm_sqr()
    }

    /// Hamiltonian of the lossless undriven system divided by ħ.
    pub fn energy(&self, model: &ModelParams) -> f64 {
        let w = self.ensemble.weight;
        let n = self.ensemble.len() as f64;
        let kinetic: f64 = self.ensemble.momentum.iter().map(|u| u * u).sum();
        let grating: Complex64 = self
            .ensemble
            .theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .sum();
        let cross = self.fields.pump * self.fields.reverse.conj() * grating;
        0.25 * model.recoil * w * kinetic
            + model.u0 * (w * n * self.photon_number() + 2.0 * w * cross.re)
    }
}

pub(crate) fn fields_of(y: &[f64], n: usize) -> FieldState {
    FieldState {
        pump: Complex64::new(y[2 * n], y[2 * n + 1]),
        reverse: Complex64::new(y[2 * n + 2], y[2 * n + 3]),
    }
}

/// Equations of motion on the packed state vector.
pub(crate) fn rhs_packed(y: &[f64], dy: &mut [f64], model: &ModelParams, weight: f64, eta: f64) {
    let n = (y.len() - 4) / 2;
    let (theta, rest) = y.split_at(n);
    let momentum = &rest[..n];
    let FieldState { pump, reverse } = fields_of(y, n);
    let force = 4.0 * model.u0;
    let cross = pump * reverse.conj();

    let mut grating = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let (s, c) = theta[j].sin_cos();
        grating += Complex64::new(c, s);
        dy[j] = model.recoil * momentum[j];
        dy[n + j] = force * (cross.re * s + cross.im * c);
    }

    let atoms = weight * n as f64;
    let cavity = Complex64::new(-model.kappa, model.cavity_detuning - model.u0 * atoms);
    let coupling = I * model.u0 * weight;
    let dpump = cavity * pump - coupling * grating.conj() * reverse - I * model.beta.conj() * reverse + eta;
    let dreverse = cavity * reverse - coupling * grating * pump - I * model.beta * pump;
    dy[2 * n] = dpump.re;
    dy[2 * n + 1] = dpump.im;
    dy[2 * n + 2] = dreverse.re;
    dy[2 * n + 3] = dreverse.im;
}

/// Time derivative of `s`.
///
/// ```text
/// dθ_j/dt = ω_r u_j
/// du_j/dt = 4 U0 Im(α₊ α₋* e^{iθ_j})
/// dα₊/dt  = (iΔ_c − κ − iU0 N) α₊ − iU0 w Σe^{−iθ_j} α₋ − iβ* α₋ + η(t)
/// dα₋/dt  = (iΔ_c − κ − iU0 N) α₋ − iU0 w Σe^{+iθ_j} α₊ − iβ α₊
/// ```
pub fn rhs(s: &SimState, model: &ModelParams, pump: &PumpProfile) -> Derivative {
    let y = s.to_vector();
    let mut dy = vec![0.0; y.len()];
    rhs_packed(&y, &mut dy, model, s.ensemble.weight, pump.eval(s.t));
    let n = s.ensemble.len();
    let fields = fields_of(&dy, n);
    Derivative {
        theta: dy[..n].to_vec(),
        momentum: dy[n..2 * n].to_vec(),
        pump: fields.pump,
        reverse: fields.reverse,
    }
}

/// Circulating powers (P₊, P₋) in W.
pub fn powers(f: &FieldState, model: &ModelParams) -> (f64, f64) {
    (
        f.pump.norm_sqr() * model.photon_power,
        f.reverse.norm_sqr() * model.photon_power,
    )
}
