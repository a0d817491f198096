use std::f64::consts::PI;

use approx::assert_relative_eq;
use carl_core::config::parse_run_config;
use carl_core::dynamics::{
    bunching, initial_state, integrate, integrate_with_snapshots, pump_eval, rhs, sample_ensemble,
    AtomEnsemble, FieldState, IntegrateError, PumpProfile, SimState,
};
use carl_core::ode::FailureKind;
use carl_core::params::{derive, CavityLoss, Coupling, ModelParams, PhysicalParams};
use carl_core::run::simulate;
use carl_core::RunConfig;
use num_complex::Complex64;
use proptest::prelude::*;

fn model_at(wavelength: f64, temperature: f64, n_sim: usize) -> ModelParams {
    let p = PhysicalParams::new(wavelength, CavityLoss::DecayTime(3.8e-6), 1e6, 1.0, temperature);
    derive(&p, n_sim, 20e-6).unwrap()
}

fn uncoupled_model(n_sim: usize) -> ModelParams {
    let mut p = PhysicalParams::new(795e-9, CavityLoss::DecayTime(3.8e-6), 1e6, 1.0, 10e-6);
    p.coupling = Coupling::Override(0.0);
    p.backscatter_ratio = 0.0;
    derive(&p, n_sim, 20e-6).unwrap()
}

fn burst_config() -> RunConfig {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../configs/burst_high_finesse.ini"
    ))
    .unwrap();
    parse_run_config(&text).unwrap()
}

/// Lossless, undriven model with strong fields and a thermal ensemble.
fn lossless_state(seed: u64) -> (ModelParams, SimState) {
    let mut m = model_at(795e-9, 2e-6, 100);
    m.kappa = 0.0;
    m.eta = 0.0;
    m.beta = Complex64::default();
    m.cavity_detuning = 0.0;
    let ensemble = sample_ensemble(100, 2e-6, &m, seed, false).unwrap();
    let state = SimState {
        t: 0.0,
        ensemble,
        fields: FieldState { pump: Complex64::new(3.0e4, 0.0), reverse: Complex64::new(2.0e3, 1.0e3) },
    };
    (m, state)
}

#[test]
fn cold_quiet_start_is_unbunched_and_at_rest() {
    let m = model_at(795e-9, 0.0, 100);
    let e = sample_ensemble(100, 0.0, &m, 3, true).unwrap();
    assert!(e.momentum.iter().all(|&u| u == 0.0));
    assert!(bunching(&e).norm() < 1e-12);

    let pair = sample_ensemble(2, 0.0, &m, 3, true).unwrap();
    assert_eq!(pair.theta[0], 0.0);
    assert_relative_eq!(pair.theta[1], PI, max_relative = 1e-15);
    assert!(sample_ensemble(1, 0.0, &m, 3, true).is_err());
    assert!(sample_ensemble(10, -1.0, &m, 3, true).is_err());
}

#[test]
fn thermal_phase_velocity_spread_matches_doppler_width() {
    let m = model_at(795e-9, 2e-6, 100);
    let draws = 10_000;
    let e = sample_ensemble(draws, 2e-6, &m, 11, false).unwrap();
    let spread = e.momentum_std() * m.recoil;
    let standard_error = m.doppler_width / (2.0 * (draws - 1) as f64).sqrt();
    assert!(
        (spread - m.doppler_width).abs() < 3.0 * standard_error,
        "spread {spread:.4e} vs {:.4e} (se {standard_error:.2e})",
        m.doppler_width
    );
    assert_relative_eq!(spread, 2.2e5, max_relative = 0.03);
}

#[test]
fn quiet_start_stays_unbunched_under_free_streaming() {
    let m = uncoupled_model(400);
    let e = sample_ensemble(400, 10e-6, &m, 5, true).unwrap();
    let pump = PumpProfile::constant(0.0).unwrap();
    let traj = integrate(&initial_state(e), &m, &pump, 50e-6, 1e-9, 1e-6).unwrap();
    let worst = traj.bunching.iter().map(|b| b.norm()).fold(0.0, f64::max);
    assert!(worst < 1e-10, "|b| reached {worst:e}");
}

#[test]
fn uncoupled_fields_decay_and_atoms_stream() {
    let mut m = uncoupled_model(8);
    m.eta = 0.0;
    let e = sample_ensemble(8, 10e-6, &m, 2, false).unwrap();
    let init = SimState {
        t: 0.0,
        ensemble: e.clone(),
        fields: FieldState { pump: Complex64::new(100.0, 20.0), reverse: Complex64::new(-5.0, 3.0) },
    };
    let pump = PumpProfile::constant(0.0).unwrap();
    let d = rhs(&init, &m, &pump);
    assert!(d.momentum.iter().all(|&du| du == 0.0));
    assert_relative_eq!(d.pump.re, -m.kappa * 100.0, max_relative = 1e-14);
    assert_relative_eq!(d.reverse.im, -m.kappa * 3.0, max_relative = 1e-14);

    let t_end = 3.0 / m.kappa;
    let traj = integrate(&init, &m, &pump, t_end, 1e-10, t_end / 30.0).unwrap();
    let last = traj.final_state.unwrap();
    let decay = (-2.0 * m.kappa * t_end).exp();
    assert_relative_eq!(last.fields.pump.norm_sqr(), init.fields.pump.norm_sqr() * decay, max_relative = 1e-8);
    assert_relative_eq!(last.fields.reverse.norm_sqr(), init.fields.reverse.norm_sqr() * decay, max_relative = 1e-8);
    for j in 0..e.len() {
        assert_eq!(last.ensemble.momentum[j], e.momentum[j]);
        let expected = e.theta[j] + m.recoil * e.momentum[j] * t_end;
        assert!((last.ensemble.theta[j] - expected).abs() < 1e-8 * expected.abs().max(1.0));
    }
}

#[test]
fn bunched_cold_start_scatters_at_collective_rate() {
    let mut m = model_at(795e-9, 0.0, 10);
    m.beta = Complex64::default();
    let e = AtomEnsemble::new(vec![0.0; 10], vec![0.0; 10], m.weight).unwrap();
    let pump_amp = Complex64::new(2.0e4, 0.0);
    let s = SimState { t: 0.0, ensemble: e, fields: FieldState { pump: pump_amp, reverse: Complex64::default() } };
    let d = rhs(&s, &m, &PumpProfile::constant(0.0).unwrap());
    let expected = -Complex64::i() * m.u0 * m.atom_number * pump_amp;
    assert!((d.reverse - expected).norm() < 1e-12 * expected.norm());
}

#[test]
fn ramp_pump_matches_closed_form_without_atoms() {
    let m = uncoupled_model(4);
    assert_eq!(m.cavity_detuning, 0.0);
    let pump = PumpProfile::ramp(m.eta, m.tau_bw).unwrap();
    assert_relative_eq!(pump_eval(&pump, m.tau_bw), m.eta * (1.0 - (-1.0f64).exp()), max_relative = 1e-14);
    let e = sample_ensemble(4, 0.0, &m, 1, true).unwrap();
    let tol = 1e-9;
    let t_end = 60e-6;
    let traj = integrate(&initial_state(e), &m, &pump, t_end, tol, 0.5e-6).unwrap();

    let rate = 1.0 / m.tau_bw;
    let amplitude = |t: f64| {
        m.eta / m.kappa * (1.0 - (-m.kappa * t).exp())
            - m.eta / (m.kappa - rate) * ((-rate * t).exp() - (-m.kappa * t).exp())
    };
    for (&t, &p) in traj.t.iter().zip(&traj.p_plus).skip(1) {
        let expected = amplitude(t).powi(2) * m.photon_power;
        assert!((p - expected).abs() <= 10.0 * tol * expected, "t={t:e} {p:e} vs {expected:e}");
    }
    assert!(traj.p_minus.iter().all(|&p| p == 0.0));
}

#[test]
fn lossless_flow_conserves_invariants() {
    let (m, init) = lossless_state(9);
    let pump = PumpProfile::constant(0.0).unwrap();
    let t_end = 10.0 / m.recoil;
    let traj = integrate(&init, &m, &pump, t_end, 1e-9, t_end / 50.0).unwrap();
    let last = traj.final_state.unwrap();
    let scale = init.photon_number();
    assert!((last.photon_number() - scale).abs() / scale < 1e-6);
    assert!((last.total_momentum() - init.total_momentum()).abs() / scale < 1e-6);
    let energy_scale = m.u0.abs() * m.atom_number * scale;
    assert!((last.energy(&m) - init.energy(&m)).abs() / energy_scale < 1e-6);
    let moved = last.ensemble.momentum.iter().zip(&init.ensemble.momentum).any(|(a, b)| (a - b).abs() > 1e-3);
    assert!(moved, "the invariants must be tested on nontrivial dynamics");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn translation_with_reverse_phase_is_a_symmetry(phi in -PI..PI, seed in 0u64..1000) {
        let (m, state) = lossless_state(seed);
        let pump = PumpProfile::constant(0.0).unwrap();
        let rotation = Complex64::from_polar(1.0, phi);
        let mut shifted = state.clone();
        shifted.ensemble.theta.iter_mut().for_each(|t| *t += phi);
        shifted.fields.reverse *= rotation;

        let a = rhs(&state, &m, &pump);
        let b = rhs(&shifted, &m, &pump);
        let force_scale = 4.0 * m.u0.abs() * state.fields.pump.norm() * state.fields.reverse.norm();
        for j in 0..a.theta.len() {
            prop_assert!((a.theta[j] - b.theta[j]).abs() <= 1e-12 * a.theta[j].abs().max(1.0));
            prop_assert!((a.momentum[j] - b.momentum[j]).abs() <= 1e-10 * force_scale);
        }
        prop_assert!((a.pump - b.pump).norm() <= 1e-10 * a.pump.norm().max(1.0));
        prop_assert!((a.reverse * rotation - b.reverse).norm() <= 1e-10 * a.reverse.norm().max(1.0));

        let t_end = 0.2 / m.recoil;
        let ta = integrate(&state, &m, &pump, t_end, 1e-10, t_end / 4.0).unwrap();
        let tb = integrate(&shifted, &m, &pump, t_end, 1e-10, t_end / 4.0).unwrap();
        for k in 0..ta.len() {
            prop_assert!((ta.bunching[k].norm() - tb.bunching[k].norm()).abs() < 1e-6);
            prop_assert!((ta.p_minus[k] - tb.p_minus[k]).abs() <= 1e-6 * ta.p_minus[k]);
        }
    }
}

#[test]
fn halving_tolerance_changes_less_than_the_error() {
    let mut c = burst_config();
    c.simulation.n_sim = 100;
    c.simulation.t_end = 40e-6;
    c.simulation.sample_dt = 0.05e-6;
    let run = |tol: f64| {
        let mut c = c.clone();
        c.simulation.tol = tol;
        simulate(&c, 1).unwrap().trajectory.p_minus
    };
    let coarse = run(1e-7);
    let fine = run(5e-8);
    let reference = run(1e-11);
    let peak = reference.iter().copied().fold(0.0, f64::max);
    let gap = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / peak;
    let change = gap(&coarse, &fine);
    let error = gap(&coarse, &reference);
    assert!(change <= error, "change {change:e} error {error:e}");
    assert!(error < 1e2 * 1e-7, "error {error:e}");
}

#[test]
fn macro_atom_count_does_not_move_the_burst() {
    let mut c = burst_config();
    c.simulation.t_end = 40e-6;
    c.simulation.sample_dt = 0.05e-6;
    let mut run = |n_sim| {
        c.simulation.n_sim = n_sim;
        simulate(&c, 1).unwrap().metrics
    };
    let coarse = run(100);
    let fine = run(1000);
    assert_relative_eq!(coarse.first_peak_time.unwrap(), fine.first_peak_time.unwrap(), max_relative = 0.05);
    assert_relative_eq!(coarse.first_peak_height, fine.first_peak_height, max_relative = 0.25);
}

#[test]
fn runs_are_deterministic_per_seed() {
    let mut c = burst_config();
    c.simulation.n_sim = 100;
    c.simulation.t_end = 30e-6;
    let a = simulate(&c, 42).unwrap().trajectory;
    let b = simulate(&c, 42).unwrap().trajectory;
    assert_eq!(a, b);
    let m = model_at(795e-9, 5e-6, 100);
    let other = sample_ensemble(100, 5e-6, &m, 43, true).unwrap();
    assert_ne!(sample_ensemble(100, 5e-6, &m, 42, true).unwrap(), other);
}

#[test]
fn snapshots_match_the_final_state() {
    let mut c = burst_config();
    c.simulation.n_sim = 100;
    let (m, pump) = carl_core::run::prepare(&c).unwrap();
    let e = sample_ensemble(100, 2e-6, &m, 1, true).unwrap();
    let init = initial_state(e);
    let traj = integrate_with_snapshots(&init, &m, &pump, 10e-6, 1e-8, 1e-6, &[4e-6, 10e-6]).unwrap();
    assert_eq!(traj.snapshots.len(), 2);
    assert_eq!(traj.snapshots[0].t, 4e-6);
    assert_eq!(&traj.snapshots[1], traj.final_state.as_ref().unwrap());
    assert_eq!(traj.len(), 11);
}

#[test]
fn invalid_requests_and_failures_are_reported() {
    let m = uncoupled_model(4);
    let init = initial_state(sample_ensemble(4, 0.0, &m, 1, true).unwrap());
    let pump = PumpProfile::constant(1.0).unwrap();
    assert!(matches!(integrate(&init, &m, &pump, 0.0, 1e-8, 1e-6), Err(IntegrateError::Invalid(_))));
    assert!(matches!(integrate(&init, &m, &pump, 1e-6, 1e-2, 1e-7), Err(IntegrateError::Invalid(_))));
    assert!(PumpProfile::recorded(vec![]).is_err());

    let mut stiff = m.clone();
    stiff.cavity_detuning = 1e17;
    let init = SimState { fields: FieldState { pump: Complex64::new(1.0, 0.0), ..Default::default() }, ..init };
    match integrate(&init, &stiff, &pump, 1e-6, 1e-8, 1e-9) {
        Err(IntegrateError::Failed { failure, partial }) => {
            assert_eq!(failure.kind, FailureKind::StepUnderflow);
            assert!(failure.t < 1e-6);
            assert!(partial.t.iter().all(|&t| t <= failure.t));
        }
        other => panic!("expected a failure, got {:?}", other.map(|t| t.len())),
    }
}
