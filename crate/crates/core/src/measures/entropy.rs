use crate::density::{BipartiteState, DensityMatrix, Subsystem};
use crate::eigen::CLIP_TOL;

/// -Σ p log2 p over the entries, skipping zeros. Entries in `[-CLIP_TOL, 0)`
/// count as zero.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let h: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    debug_assert!(probs.iter().all(|&p| p >= -CLIP_TOL || p.is_nan()));
    h.max(0.0)
}

/// Von Neumann entropy in bits.
pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    shannon_entropy(&rho.clipped_eigenvalues())
}

/// S(ρ_A) + S(ρ_B) - S(ρ_AB) in bits.
pub fn mutual_information(rho: &BipartiteState) -> f64 {
    vn_entropy(&rho.partial_trace(Subsystem::A)) + vn_entropy(&rho.partial_trace(Subsystem::B))
        - vn_entropy(rho.density())
}

/// Mutual information of a joint distribution `p[k][l]`.
pub fn classical_mutual_information(p: &[Vec<f64>]) -> f64 {
    let rows: Vec<f64> = p.iter().map(|r| r.iter().sum()).collect();
    let ncol = p.first().map_or(0, |r| r.len());
    let cols: Vec<f64> = (0..ncol).map(|j| p.iter().map(|r| r[j]).sum()).collect();
    let joint: Vec<f64> = p.iter().flatten().copied().collect();
    shannon_entropy(&rows) + shannon_entropy(&cols) - shannon_entropy(&joint)
}
