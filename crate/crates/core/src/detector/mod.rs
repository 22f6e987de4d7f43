//! Two inertial Unruh-DeWitt detectors with Gaussian switching, to second
//! order in the coupling, and sweeps over the dimensionless (Ωσ, L/σ) plane.

mod erf;
mod sweep;
mod xstate;

pub use erf::{erf_complex, erf_damped, erf_real, erfc_real, erfcx, faddeeva_w, ERF_DOMAIN};
pub use sweep::{
    entanglement_boundary, evaluate_point, refine_boundary, sweep, RowFlag, SweepGrid, SweepRow,
    MIN_L_OVER_SIGMA,
};
pub use xstate::{
    assemble_rho, compute_elements, corr_coefficient, corr_leading, d3_closed_form, xstate_concurrence,
    xstate_entanglement_flags, AssembledState, DetectorParams, XStateElements, PERTURBATIVE_LIMIT,
};
