use serde::Serialize;

use crate::density::{BipartiteState, Subsystem};
use crate::eigen::{eig_hermitian, eigvals_hermitian, psd_sqrt, CLIP_TOL};
use crate::error::{mismatch, Result};
use crate::matrix::{tensor_product, ComplexMatrix, C64, ZERO};

fn require_two_qubits(rho: &BipartiteState) -> Result<()> {
    if rho.dims() != (2, 2) {
        return Err(mismatch("2x2", format!("{}x{}", rho.dim_a(), rho.dim_b())));
    }
    Ok(())
}

fn pauli(k: usize) -> ComplexMatrix {
    let i = C64::i();
    let one = C64::new(1.0, 0.0);
    let data = match k {
        0 => vec![one, ZERO, ZERO, one],
        1 => vec![ZERO, one, one, ZERO],
        2 => vec![ZERO, -i, i, ZERO],
        3 => vec![one, ZERO, ZERO, -one],
        _ => unreachable!("pauli index"),
    };
    ComplexMatrix::new(2, 2, data).expect("2x2")
}

/// Wootters concurrence of a two-qubit state.
///
/// The λ_i are square roots of the eigenvalues of `sqrt(ρ) ρ~ sqrt(ρ)` with
/// `ρ~ = (σy⊗σy) ρ* (σy⊗σy)`; this Hermitian form has the same spectrum as
/// the non-Hermitian product `ρ ρ~`.
pub fn concurrence_wootters(rho: &BipartiteState) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = tensor_product(&pauli(2), &pauli(2));
    let flipped = &(&yy * &rho.matrix().conj()) * &yy;
    let root = psd_sqrt(rho.matrix())?;
    let r = &(&root * &flipped) * &root;
    let mut lam: Vec<f64> =
        eigvals_hermitian(&r.hermitian_part())?.into_iter().map(|x| x.max(0.0).sqrt()).collect();
    lam.sort_by(|a, b| b.total_cmp(a));
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}

/// Peres-Horodecki data for the transpose on B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptReport {
    pub is_ppt: bool,
    pub min_eigenvalue: f64,
    /// Sum of the moduli of the negative eigenvalues.
    pub negativity: f64,
}

pub fn ppt_check(rho: &BipartiteState) -> PptReport {
    let pt = rho.partial_transpose(Subsystem::B);
    let ev = eigvals_hermitian(&pt).expect("partial transpose is Hermitian");
    let min_eigenvalue = ev.last().copied().unwrap_or(0.0);
    let negativity = ev.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
    PptReport { is_ppt: min_eigenvalue >= -CLIP_TOL, min_eigenvalue, negativity }
}

/// Horodecki maximal CHSH value `2 sqrt(m1 + m2)`, m1 >= m2 the two largest
/// eigenvalues of TᵀT with `T_ij = tr(ρ σ_i ⊗ σ_j)`.
pub fn chsh_max(rho: &BipartiteState) -> Result<f64> {
    require_two_qubits(rho)?;
    let t = correlation_matrix(rho);
    let tt = ComplexMatrix::from_fn(3, 3, |i, j| C64::new((0..3).map(|k| t[k][i] * t[k][j]).sum(), 0.0));
    let m = eig_hermitian(&tt)?.eigenvalues;
    Ok(2.0 * (m[0] + m[1]).max(0.0).sqrt())
}

/// `T_ij = tr(ρ σ_i ⊗ σ_j)` for i, j over x, y, z.
pub fn correlation_matrix(rho: &BipartiteState) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let op = tensor_product(&pauli(i + 1), &pauli(j + 1));
            *v = (rho.matrix() * &op).trace().re;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{DensityMatrix, PureVector};

    fn singlet() -> BipartiteState {
        let h = 0.5_f64.sqrt();
        BipartiteState::from_pure(2, 2, &PureVector::from_real(&[0.0, h, -h, 0.0]).unwrap()).unwrap()
    }

    fn werner(p: f64) -> BipartiteState {
        let m = &singlet().matrix().scale(p) + &ComplexMatrix::identity(4).scale((1.0 - p) / 4.0);
        BipartiteState::from_matrix(2, 2, m).unwrap()
    }

    fn product() -> BipartiteState {
        let a = DensityMatrix::from_real_diagonal(&[0.7, 0.3]).unwrap();
        let b = DensityMatrix::from_pure(&PureVector::from_real(&[0.6, 0.8]).unwrap());
        BipartiteState::product(&a, &b)
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence_wootters(&singlet()).unwrap() - 1.0).abs() < 1e-7);
        assert!(concurrence_wootters(&product()).unwrap() < 1e-7);
        for p in [0.0_f64, 0.2, 1.0 / 3.0, 0.5, 0.8] {
            let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
            assert!((concurrence_wootters(&werner(p)).unwrap() - expected).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn ppt_examples() {
        assert!(ppt_check(&product()).is_ppt);
        let w = ppt_check(&werner(0.5));
        assert!(!w.is_ppt);
        // partial transpose of Werner(p) has eigenvalue (1 - 3p)/4
        assert!((w.min_eigenvalue + 0.125).abs() < 1e-14);
        assert!((w.negativity - 0.125).abs() < 1e-14);
        let s = ppt_check(&singlet());
        assert!((s.negativity - 0.5).abs() < 1e-14);
    }

    #[test]
    fn chsh_examples() {
        assert!((chsh_max(&singlet()).unwrap() - 2.0 * 2.0_f64.sqrt()).abs() < 1e-13);
        for p in [0.3, 0.5, 0.9] {
            let v = chsh_max(&werner(p)).unwrap();
            assert!((v - 2.0 * 2.0_f64.sqrt() * p).abs() < 1e-13);
        }
        // pure product |0>|+>: T has a single nonzero entry T_zx = 1
        let zero_plus = PureVector::basis(2, 0)
            .tensor(&PureVector::from_real(&[0.5_f64.sqrt(), 0.5_f64.sqrt()]).unwrap());
        let v = chsh_max(&BipartiteState::from_pure(2, 2, &zero_plus).unwrap()).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn wrong_dims_rejected() {
        let big = BipartiteState::new(3, 3, DensityMatrix::maximally_mixed(9)).unwrap();
        assert!(concurrence_wootters(&big).is_err());
        assert!(chsh_max(&big).is_err());
        assert!(ppt_check(&big).is_ppt);
    }
}
