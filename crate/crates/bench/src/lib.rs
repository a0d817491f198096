//! Fixtures shared by the benchmarks.

use carl_core::dynamics::{initial_state, SimState};
use carl_core::params::{derive, CavityLoss, ModelParams, PhysicalParams};
use carl_core::{sample_ensemble, PumpProfile};

/// Burst configuration at 4 W, 797.3 nm with `n_sim` macro-atoms.
pub fn burst_setup(n_sim: usize) -> (ModelParams, PumpProfile, SimState) {
    let physical = PhysicalParams::new(797.3e-9, CavityLoss::DecayTime(3.8e-6), 1.5e6, 4.0, 2e-6);
    let model = derive(&physical, n_sim, 20e-6).expect("valid parameters");
    let pump = PumpProfile::ramp(model.eta, model.tau_bw).expect("valid ramp");
    let ensemble = sample_ensemble(n_sim, physical.temperature, &model, 1, true).expect("valid ensemble");
    (model, pump, initial_state(ensemble))
}
