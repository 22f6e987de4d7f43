use crate::density::DensityMatrix;
use crate::eigen::eig_hermitian;
use crate::error::{mismatch, Result};
use crate::matrix::ComplexMatrix;

/// Relative cutoff below which an eigenvalue is treated as outside the support.
const SUPPORT_CUTOFF: f64 = 64.0 * f64::EPSILON;

/// Uhlmann fidelity `tr sqrt(sqrt(ρ) σ sqrt(ρ))`, so that pure states give
/// `|<ψ|φ>|`.
///
/// Evaluated as the trace norm of `W† sqrt(σ)` with `ρ = W W†` a factorization
/// over the support of whichever argument has lower numerical rank. Square
/// roots of near-zero eigenvalues are where the direct formula loses half its
/// digits; restricting to the support avoids them for low-rank states.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(mismatch(rho.dim(), sigma.dim()));
    }
    let fr = support_factor(rho);
    let fs = support_factor(sigma);
    let (w, other) = if fs.cols() < fr.cols() { (fs, rho) } else { (fr, sigma) };
    let inner = &(&w.adjoint() * other.matrix()) * &w;
    let ev = eig_hermitian(&inner.hermitian_part())?.eigenvalues;
    let f: f64 = ev.iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok(f.min(1.0))
}

/// Columns `sqrt(λ_k) v_k` for the eigenpairs above the support cutoff.
fn support_factor(rho: &DensityMatrix) -> ComplexMatrix {
    let spec = rho.spectrum();
    let top = spec.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let kept: Vec<usize> = (0..spec.dim()).filter(|&k| spec.eigenvalues[k] > SUPPORT_CUTOFF * top).collect();
    let n = rho.dim();
    ComplexMatrix::from_fn(n, kept.len().max(1), |i, c| match kept.get(c) {
        Some(&k) => spec.eigenvectors[(i, k)] * spec.eigenvalues[k].sqrt(),
        None => crate::matrix::ZERO,
    })
}
