//! Shared helpers for integration tests.
#![allow(dead_code)]

pub mod oracle;

use qcorr::density::{BipartiteState, DensityMatrix};
use qcorr::measures::{dephase_local, local_eigenbasis, vn_entropy};

/// S(ρ*) - S(ρ) with ρ* the state dephased in the eigenbasis of ρ_A.
pub fn d3_by_entropies(rho: &BipartiteState) -> f64 {
    let (basis, _) = local_eigenbasis(rho);
    let dephased = dephase_local(rho, &basis).unwrap();
    vn_entropy(dephased.density()) - vn_entropy(rho.density())
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn max_mixed(d: usize) -> DensityMatrix {
    DensityMatrix::maximally_mixed(d)
}
