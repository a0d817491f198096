//! Laboratory parameters, derived model coefficients, closed-form gains and
//! regime classification.
//!
//! All frequencies are angular (rad/s). Powers are intracavity circulating
//! powers in W.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{
    BOLTZMANN, HBAR, RB87_D1_LINEWIDTH, RB87_D1_WAVELENGTH, RB87_MASS, SPEED_OF_LIGHT,
};
use crate::error::{invalid, Error, Result};

/// Default one-photon Rabi frequency, 2π × 84 kHz.
pub const DEFAULT_COUPLING_G: f64 = 2.0 * PI * 84.0e3;
/// Empty-cavity reverse/pump power ratio from mirror backscattering.
pub const DEFAULT_BACKSCATTER_RATIO: f64 = 1.8e-4;
/// Calibration factor applied to the mode-volume formula for g.
pub const COUPLING_FORMULA_CALIBRATION: f64 = std::f64::consts::FRAC_1_SQRT_2;
/// Factor that turns "much smaller/larger than" into a threshold.
pub const DEFAULT_HYSTERESIS: f64 = 3.0;

/// Cavity loss, specified either through the finesse or the intensity decay time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CavityLoss {
    Finesse(f64),
    DecayTime(f64),
}

/// Choice of the atom-cavity coupling constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// Fixed value in rad/s.
    Override(f64),
    /// Evaluate `sqrt(3 Γ δ_fsr) / (k w0)` times the calibration factor.
    Formula,
}

/// Laboratory quantities describing one experimental configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    pub wavelength: f64,
    pub d1_wavelength: f64,
    pub linewidth: f64,
    pub cavity_length: f64,
    pub waist: f64,
    pub loss: CavityLoss,
    pub atom_number: f64,
    pub pump_power: f64,
    pub temperature: f64,
    pub atom_mass: f64,
    pub coupling: Coupling,
    pub backscatter_ratio: f64,
    /// Phase of the backscatter coupling β in rad.
    pub backscatter_phase: f64,
}

impl PhysicalParams {
    /// Defaults for the ⁸⁷Rb ring cavity with the required quantities supplied.
    pub fn new(
        wavelength: f64,
        loss: CavityLoss,
        atom_number: f64,
        pump_power: f64,
        temperature: f64,
    ) -> Self {
        Self {
            wavelength,
            d1_wavelength: RB87_D1_WAVELENGTH,
            linewidth: RB87_D1_LINEWIDTH,
            cavity_length: 0.085,
            waist: 107e-6,
            loss,
            atom_number,
            pump_power,
            temperature,
            atom_mass: RB87_MASS,
            coupling: Coupling::Override(DEFAULT_COUPLING_G),
            backscatter_ratio: DEFAULT_BACKSCATTER_RATIO,
            backscatter_phase: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength", self.wavelength),
            ("d1_wavelength", self.d1_wavelength),
            ("cavity_length", self.cavity_length),
            ("waist", self.waist),
            ("atom_mass", self.atom_mass),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(invalid(format!("{name} must be positive, got {value}")));
            }
        }
        let non_negative = [
            ("linewidth", self.linewidth),
            ("atom_number", self.atom_number),
            ("pump_power", self.pump_power),
            ("temperature", self.temperature),
        ];
        for (name, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(invalid(format!("{name} must be non-negative, got {value}")));
            }
        }
        match self.loss {
            CavityLoss::Finesse(f) if !(f.is_finite() && f > 0.0) => {
                return Err(invalid(format!("finesse must be positive, got {f}")))
            }
            CavityLoss::DecayTime(t) if !(t.is_finite() && t > 0.0) => {
                return Err(invalid(format!("decay_time must be positive, got {t}")))
            }
            _ => {}
        }
        if let Coupling::Override(g) = self.coupling {
            if !(g.is_finite() && g >= 0.0) {
                return Err(invalid(format!("coupling_g must be non-negative, got {g}")));
            }
        }
        if !(0.0..1.0).contains(&self.backscatter_ratio) {
            return Err(invalid(format!(
                "backscatter_ratio must lie in [0, 1), got {}",
                self.backscatter_ratio
            )));
        }
        if !self.backscatter_phase.is_finite() {
            return Err(invalid("backscatter_phase must be finite"));
        }
        if self.wavelength == self.d1_wavelength {
            return Err(Error::ZeroDetuning);
        }
        Ok(())
    }

    /// Free spectral range c/L in Hz.
    pub fn free_spectral_range(&self) -> f64 {
        SPEED_OF_LIGHT / self.cavity_length
    }

    /// Field decay rate κ in rad/s.
    pub fn kappa(&self) -> Result<f64> {
        match self.loss {
            CavityLoss::DecayTime(tau) => kappa_from_decay(tau),
            CavityLoss::Finesse(f) => kappa_from_finesse(f, self.free_spectral_range()),
        }
    }
}

/// Simulation coefficients derived from [`PhysicalParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Field decay rate κ.
    pub kappa: f64,
    /// Recoil shift ω_r = 2ħk²/m.
    pub recoil: f64,
    /// Light shift per photon U0 = g²/Δ_a.
    pub u0: f64,
    pub coupling_g: f64,
    /// Atom-laser detuning Δ_a.
    pub atom_detuning: f64,
    /// Doppler width σ_v = 2k sqrt(k_B T / m).
    pub doppler_width: f64,
    /// Free spectral range in Hz.
    pub fsr: f64,
    pub n_target: f64,
    /// Pump drive amplitude η (real).
    pub eta: f64,
    /// Backscatter coupling β.
    pub beta: Complex64,
    pub tau_bw: f64,
    pub atom_number: f64,
    pub n_sim: usize,
    /// Real atoms per macro-atom.
    pub weight: f64,
    /// Cavity-pump detuning Δ_c.
    pub cavity_detuning: f64,
    pub wavenumber: f64,
    pub wavelength: f64,
    pub atom_mass: f64,
    pub temperature: f64,
    /// Circulating power carried by one intracavity photon, ħω·δ_fsr (W).
    pub photon_power: f64,
}

impl ModelParams {
    /// Detuning of the cavity from its atom-shifted resonance, Δ_c − U0·N.
    pub fn shifted_detuning(&self) -> f64 {
        self.cavity_detuning - self.u0 * self.atom_number
    }

    /// Collective CARL gain for the target pump photon number.
    pub fn carl_gain(&self) -> f64 {
        carl_gain(self.n_target, self.atom_number, self.u0, self.kappa).unwrap_or(0.0)
    }

    /// Backscatter-only reverse power for a given pump power.
    pub fn backscatter_level(&self, pump_power: f64) -> f64 {
        let ratio = (self.beta.norm() / self.kappa).powi(2);
        ratio * pump_power
    }
}

/// κ = 1/(2τ) for an intensity decay time τ.
pub fn kappa_from_decay(tau: f64) -> Result<f64> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(invalid(format!("decay time must be positive, got {tau}")));
    }
    Ok(1.0 / (2.0 * tau))
}

/// κ = π δ_fsr / F.
pub fn kappa_from_finesse(finesse: f64, fsr: f64) -> Result<f64> {
    if !(finesse.is_finite() && finesse > 0.0) {
        return Err(invalid(format!("finesse must be positive, got {finesse}")));
    }
    Ok(PI * fsr / finesse)
}

/// Converts laboratory parameters into model coefficients for `n_sim`
/// macro-atoms and a pump build-up time `tau_bw`.
pub fn derive(p: &PhysicalParams, n_sim: usize, tau_bw: f64) -> Result<ModelParams> {
    p.validate()?;
    if n_sim < 2 {
        return Err(invalid(format!("n_sim must be at least 2, got {n_sim}")));
    }
    if !(tau_bw.is_finite() && tau_bw >= 0.0) {
        return Err(invalid(format!("tau_bw must be non-negative, got {tau_bw}")));
    }
    let weight = p.atom_number / n_sim as f64;
    if weight < 1.0 {
        return Err(invalid(format!(
            "atom_number {} is smaller than n_sim {n_sim}",
            p.atom_number
        )));
    }

    let k = 2.0 * PI / p.wavelength;
    let atom_detuning =
        2.0 * PI * SPEED_OF_LIGHT * (1.0 / p.wavelength - 1.0 / p.d1_wavelength);
    if atom_detuning == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    let recoil = 2.0 * HBAR * k * k / p.atom_mass;
    let doppler_width = 2.0 * k * (BOLTZMANN * p.temperature / p.atom_mass).sqrt();
    let fsr = p.free_spectral_range();
    let kappa = p.kappa()?;
    let coupling_g = match p.coupling {
        Coupling::Override(g) => g,
        Coupling::Formula => {
            (3.0 * p.linewidth * fsr).sqrt() / (k * p.waist) * COUPLING_FORMULA_CALIBRATION
        }
    };
    let u0 = coupling_g * coupling_g / atom_detuning;
    let omega = 2.0 * PI * SPEED_OF_LIGHT / p.wavelength;
    let photon_power = HBAR * omega * fsr;
    let n_target = p.pump_power / photon_power;
    let beta = Complex64::from_polar(calibrate_backscatter(p.backscatter_ratio, kappa)?, p.backscatter_phase);

    Ok(ModelParams {
        kappa,
        recoil,
        u0,
        coupling_g,
        atom_detuning,
        doppler_width,
        fsr,
        n_target,
        eta: kappa * n_target.sqrt(),
        beta,
        tau_bw,
        atom_number: p.atom_number,
        n_sim,
        weight,
        cavity_detuning: u0 * p.atom_number,
        wavenumber: k,
        wavelength: p.wavelength,
        atom_mass: p.atom_mass,
        temperature: p.temperature,
        photon_power,
    })
}

/// Backscatter coupling magnitude for which the empty resonant cavity settles
/// at `|α₋|²/|α₊|² = target_ratio`.
pub fn calibrate_backscatter(target_ratio: f64, kappa: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&target_ratio) {
        return Err(invalid(format!(
            "backscatter ratio must lie in [0, 1), got {target_ratio}"
        )));
    }
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(invalid(format!("kappa must be positive, got {kappa}")));
    }
    Ok(kappa * target_ratio.sqrt())
}

/// Cavity CARL gain G = n N U0² / (2κ).
pub fn carl_gain(photons: f64, atom_number: f64, u0: f64, kappa: f64) -> Result<f64> {
    if kappa == 0.0 {
        return Err(invalid("carl_gain: kappa is zero"));
    }
    if photons < 0.0 || atom_number < 0.0 || kappa < 0.0 {
        return Err(invalid("carl_gain: arguments must be non-negative"));
    }
    Ok(photons * atom_number * u0 * u0 / (2.0 * kappa))
}

/// Free-space superradiant Rayleigh scattering gain of an elongated cloud.
///
/// The end-fire mode of a cloud of length `cloud_length` has decay rate
/// κ_sr = c/(2L) and coupling g_sr = sqrt(3Γκ_sr)/(k w_sr).
pub fn srs_free_space_gain(
    atom_number: f64,
    rabi: f64,
    linewidth: f64,
    cloud_length: f64,
    mode_waist: f64,
    atom_detuning: f64,
    wavenumber: f64,
) -> Result<f64> {
    if atom_detuning == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    for (name, v) in [
        ("atom_number", atom_number),
        ("rabi", rabi),
        ("linewidth", linewidth),
        ("cloud_length", cloud_length),
        ("mode_waist", mode_waist),
        ("wavenumber", wavenumber),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(invalid(format!("{name} must be positive, got {v}")));
        }
    }
    let kappa_sr = free_space_decay(cloud_length);
    let g_sr = (3.0 * linewidth * kappa_sr).sqrt() / (wavenumber * mode_waist);
    Ok(atom_number * rabi * rabi * g_sr * g_sr
        / (2.0 * kappa_sr * atom_detuning * atom_detuning))
}

/// End-fire mode decay rate κ_sr = c/(2L).
pub fn free_space_decay(cloud_length: f64) -> f64 {
    SPEED_OF_LIGHT / (2.0 * cloud_length)
}

/// Operating regime of the collective instability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Superradiant,
    GoodCavity,
    Crossover,
    QuantumLimit,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Superradiant => "Superradiant",
            Regime::GoodCavity => "GoodCavity",
            Regime::Crossover => "Crossover",
            Regime::QuantumLimit => "QuantumLimit",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Regime label together with the quantities it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub gain_bandwidth: f64,
    pub gain: f64,
}

/// Classifies by comparing the gain bandwidth against κ and ω_r with a
/// hysteresis factor `h`.
pub fn classify_regime(gain_bandwidth: f64, kappa: f64, recoil: f64, h: f64) -> Regime {
    if gain_bandwidth < recoil / h {
        Regime::QuantumLimit
    } else if gain_bandwidth < kappa / h {
        Regime::Superradiant
    } else if gain_bandwidth > h * kappa {
        Regime::GoodCavity
    } else {
        Regime::Crossover
    }
}
