use std::f64::consts::TAU;

use approx::assert_relative_eq;
use carl_core::params::{
    calibrate_backscatter, carl_gain, classify_regime, derive, free_space_decay, kappa_from_decay,
    kappa_from_finesse, srs_free_space_gain, CavityLoss, Coupling, PhysicalParams, Regime,
};
use carl_core::dynamics::{powers, FieldState};
use carl_core::Error;
use num_complex::Complex64;

// Independent constant values, written out rather than imported.
const H_PLANCK: f64 = 6.626_070_15e-34;
const C_LIGHT: f64 = 299_792_458.0;
const K_B: f64 = 1.380_649e-23;
const MASS_RB87: f64 = 1.4432e-25;

fn high_finesse(wavelength: f64, atoms: f64, power: f64, temperature: f64) -> PhysicalParams {
    PhysicalParams::new(wavelength, CavityLoss::DecayTime(3.8e-6), atoms, power, temperature)
}

#[test]
fn decay_time_gives_quoted_kappa() {
    let kappa = kappa_from_decay(3.8e-6).unwrap();
    assert_relative_eq!(kappa, 1.316e5, max_relative = 2e-4);
    assert_relative_eq!(kappa / TAU, 20.9e3, max_relative = 2e-3);
}

#[test]
fn finesse_and_decay_time_agree() {
    let fsr = C_LIGHT / 0.085;
    let from_finesse = kappa_from_finesse(87_000.0, fsr).unwrap();
    assert_relative_eq!(from_finesse, kappa_from_decay(3.8e-6).unwrap(), max_relative = 0.05);
    let low = kappa_from_finesse(6400.0, fsr).unwrap();
    assert_relative_eq!(low / from_finesse, 87_000.0 / 6400.0, max_relative = 1e-12);
    assert_relative_eq!(low, 1.79e6, max_relative = 0.05);
    assert!(kappa_from_finesse(0.0, fsr).is_err());
}

#[test]
fn recoil_shift_at_795_nm() {
    let m = derive(&high_finesse(795e-9, 1e6, 1.0, 0.0), 100, 20e-6).unwrap();
    let k = TAU / 795e-9;
    let hbar = H_PLANCK / TAU;
    assert_relative_eq!(m.recoil, 2.0 * hbar * k * k / MASS_RB87, max_relative = 1e-6);
    assert_relative_eq!(m.recoil, 9.13e4, max_relative = 5e-3);
    assert_relative_eq!(m.recoil / TAU, 14e3, max_relative = 0.05);
    assert_eq!(m.doppler_width, 0.0);
}

#[test]
fn detuning_and_photon_number_at_797_nm() {
    let m = derive(&high_finesse(797.3e-9, 1.5e6, 4.0, 2e-6), 100, 20e-6).unwrap();
    let delta = TAU * C_LIGHT * (1.0 / 797.3e-9 - 1.0 / 794.8e-9);
    assert_relative_eq!(m.atom_detuning, delta, max_relative = 1e-9);
    assert_relative_eq!(m.atom_detuning, -7.4e12, max_relative = 0.01);
    assert!(m.u0 < 0.0);
    assert_relative_eq!(m.u0, m.coupling_g.powi(2) / m.atom_detuning, max_relative = 1e-14);

    let photon_power = H_PLANCK * C_LIGHT / 797.3e-9 * C_LIGHT / 0.085;
    assert_relative_eq!(m.n_target, 4.0 / photon_power, max_relative = 1e-6);
    assert_relative_eq!(m.n_target, 4.3e9, max_relative = 0.1);
    assert_relative_eq!(m.eta, m.kappa * m.n_target.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(m.weight, 1.5e4);
}

#[test]
fn doppler_width_at_two_microkelvin() {
    let m = derive(&high_finesse(795e-9, 1e6, 1.0, 2e-6), 100, 20e-6).unwrap();
    let k = TAU / 795e-9;
    assert_relative_eq!(m.doppler_width, 2.0 * k * (K_B * 2e-6 / MASS_RB87).sqrt(), max_relative = 1e-6);
    assert_relative_eq!(m.doppler_width, 2.2e5, max_relative = 0.02);
}

#[test]
fn derive_rejects_invalid_inputs() {
    let mut p = high_finesse(795e-9, 1e6, 1.0, 0.0);
    p.wavelength = p.d1_wavelength;
    assert_eq!(derive(&p, 100, 0.0), Err(Error::ZeroDetuning));

    let p = high_finesse(795e-9, 50.0, 1.0, 0.0);
    assert!(derive(&p, 100, 0.0).is_err());
    let p = high_finesse(795e-9, 1e6, -1.0, 0.0);
    assert!(derive(&p, 100, 0.0).is_err());
    let p = high_finesse(795e-9, 1e6, 1.0, 0.0);
    assert!(derive(&p, 1, 0.0).is_err());
    let p = PhysicalParams::new(795e-9, CavityLoss::DecayTime(0.0), 1e6, 1.0, 0.0);
    assert!(derive(&p, 100, 0.0).is_err());
}

#[test]
fn gain_arithmetic() {
    assert_eq!(carl_gain(0.0, 1.5e6, 0.038, 1.32e5).unwrap(), 0.0);
    let g = carl_gain(4.3e9, 1.5e6, 0.038, 1.32e5).unwrap();
    assert_relative_eq!(g, 3.5e7, max_relative = 0.02);
    assert!((1e3..=1e9).contains(&g));
    assert_relative_eq!(carl_gain(8.6e9, 1.5e6, 0.038, 1.32e5).unwrap(), 2.0 * g, max_relative = 1e-14);
    assert!(carl_gain(1.0, 1.0, 1.0, 0.0).is_err());
}

#[test]
fn free_space_gain_structure() {
    let k = TAU / 795e-9;
    let linewidth = TAU * 6e6;
    let detuning = -TAU * 5e9;
    let rabi = 1e8;
    let gain = |atoms: f64, rabi: f64, length: f64| {
        srs_free_space_gain(atoms, rabi, linewidth, length, 10e-6, detuning, k).unwrap()
    };
    let base = gain(1e6, rabi, 100e-6);
    assert_relative_eq!(gain(2e6, rabi, 100e-6), 2.0 * base, max_relative = 1e-12);
    assert_relative_eq!(gain(1e6, 3.0 * rabi, 100e-6), 9.0 * base, max_relative = 1e-12);
    assert!((1e4..=1e6).contains(&base), "G = {base}");
    assert!(base < 1e-3 * free_space_decay(100e-6));

    // G·κ_sr ∝ g_sr² ∝ κ_sr, so halving the cloud length leaves G unchanged.
    assert_relative_eq!(free_space_decay(50e-6), 2.0 * free_space_decay(100e-6), max_relative = 1e-15);
    assert_relative_eq!(gain(1e6, rabi, 50e-6), base, max_relative = 1e-12);
    assert_eq!(
        srs_free_space_gain(1e6, rabi, linewidth, 1e-4, 1e-5, 0.0, k),
        Err(Error::ZeroDetuning)
    );
}

#[test]
fn regime_boundaries() {
    let kappa = 1e5;
    let recoil = 1e3;
    assert_eq!(classify_regime(0.1 * kappa, kappa, recoil, 3.0), Regime::Superradiant);
    assert_eq!(classify_regime(10.0 * kappa, kappa, recoil, 3.0), Regime::GoodCavity);
    assert_eq!(classify_regime(kappa, kappa, recoil, 3.0), Regime::Crossover);
    assert_eq!(classify_regime(0.1 * recoil, kappa, recoil, 3.0), Regime::QuantumLimit);
}

#[test]
fn backscatter_coupling() {
    assert_eq!(calibrate_backscatter(0.0, 1e5).unwrap(), 0.0);
    assert_relative_eq!(calibrate_backscatter(1.8e-4, 1.0).unwrap(), 0.0134, max_relative = 2e-3);
    assert!(calibrate_backscatter(1.0, 1e5).is_err());
    assert!(calibrate_backscatter(-0.1, 1e5).is_err());
}

#[test]
fn photon_power_conversion() {
    let m = derive(&high_finesse(795e-9, 1e6, 4.0, 0.0), 100, 20e-6).unwrap();
    let zero = FieldState::default();
    assert_eq!(powers(&zero, &m), (0.0, 0.0));

    let one = FieldState { pump: Complex64::new(1.0, 0.0), reverse: Complex64::new(0.0, 1.0) };
    let (p_plus, p_minus) = powers(&one, &m);
    assert_eq!(p_plus, p_minus);
    assert_relative_eq!(m.fsr, 3.53e9, max_relative = 2e-3);
    assert_relative_eq!(p_plus, 8.8e-10, max_relative = 0.01);

    let target = FieldState { pump: Complex64::from_polar(m.n_target.sqrt(), 0.3), reverse: Complex64::default() };
    assert_relative_eq!(powers(&target, &m).0, 4.0, max_relative = 1e-12);
}

#[test]
fn coupling_formula_path() {
    let mut p = high_finesse(795e-9, 1e6, 1.0, 0.0);
    p.coupling = Coupling::Formula;
    let m = derive(&p, 100, 0.0).unwrap();
    let k = TAU / 795e-9;
    let literal = (3.0 * TAU * 6e6 * C_LIGHT / 0.085).sqrt() / (k * 107e-6);
    assert_relative_eq!(m.coupling_g, literal / 2f64.sqrt(), max_relative = 1e-6);
    assert_relative_eq!(m.coupling_g / TAU, 84e3, max_relative = 0.01);
}
