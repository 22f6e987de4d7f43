//! Information-theoretic, entanglement and discord measures. Entropic
//! quantities are in bits.

mod discord;
mod entanglement;
mod entropy;
mod fidelity;
mod schmidt;

pub use discord::{
    cq_commutator_defect, dephase_local, discord_d3, discord_given_measurement, discord_projective_opt,
    ensemble_classicality_witness, is_classical_quantum, local_eigenbasis, measurement_j, Certificate,
    CqCheck, CqVerdict, EnsembleVerdict, EnsembleWitness, MeasureResult, MeasurementInfo,
    ProjectiveMeasurement, MIN_OUTCOME_PROB,
};
pub use entanglement::{chsh_max, concurrence_wootters, correlation_matrix, ppt_check, PptReport};
pub use entropy::{classical_mutual_information, mutual_information, shannon_entropy, vn_entropy};
pub use fidelity::fidelity;
pub use schmidt::{entanglement_entropy, schmidt_decompose, SchmidtDecomposition};
