//! Macro-atom + two-mode field dynamics of the pumped ring cavity.

mod ensemble;
mod integrate;
mod model;
mod pump;

pub use ensemble::{bunching, momentum_spread, sample_ensemble, AtomEnsemble};
pub use integrate::{integrate, integrate_with_snapshots, sample_grid, IntegrateError, Trajectory};
pub use model::{powers, rhs, Derivative, FieldState, SimState};
pub use pump::{pump_eval, PumpProfile};

pub(crate) use model::rhs_packed;

/// Initial state for a pumped run: pump ramps up from an empty cavity.
pub fn initial_state(ensemble: AtomEnsemble) -> SimState {
    SimState { t: 0.0, ensemble, fields: FieldState::default() }
}
