use crate::density::PureVector;
use crate::eigen::eig_hermitian;
use crate::error::{mismatch, Error, Result};
use crate::matrix::{vec_norm, ComplexMatrix, C64, ZERO};

/// Coefficients below this are dropped from the decomposition.
const COEFF_CUTOFF: f64 = 1e-12;

/// ψ = Σ_k λ_k |α_k> ⊗ |β_k>
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Nonincreasing, strictly positive.
    pub coefficients: Vec<f64>,
    pub basis_a: Vec<Vec<C64>>,
    pub basis_b: Vec<Vec<C64>>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn reconstruct(&self) -> Vec<C64> {
        let db = self.basis_b.first().map_or(0, |b| b.len());
        let da = self.basis_a.first().map_or(0, |a| a.len());
        let mut out = vec![ZERO; da * db];
        for ((l, a), b) in self.coefficients.iter().zip(&self.basis_a).zip(&self.basis_b) {
            for i in 0..da {
                for j in 0..db {
                    out[i * db + j] += a[i] * b[j] * *l;
                }
            }
        }
        out
    }
}

/// Schmidt decomposition of a normalized vector on a `dim_a x dim_b` split.
pub fn schmidt_decompose(psi: &PureVector, dim_a: usize, dim_b: usize) -> Result<SchmidtDecomposition> {
    if dim_a * dim_b != psi.dim() {
        return Err(mismatch(dim_a * dim_b, psi.dim()));
    }
    let norm = vec_norm(psi.amplitudes());
    if (norm - 1.0).abs() > crate::density::NORM_TOL {
        return Err(Error::Unnormalized { norm });
    }
    // ψ reshaped as a dim_a x dim_b coefficient matrix.
    let amps = psi.amplitudes();
    let coeff = ComplexMatrix::from_fn(dim_a, dim_b, |i, j| amps[i * dim_b + j]);
    let gram = &coeff * &coeff.adjoint();
    let spec = eig_hermitian(&gram)?;

    // Recompute each coefficient as |Ψ^T conj(α)|, which is accurate to
    // machine precision even when the Gram eigenvalue is tiny.
    let mut terms: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..dim_a)
        .map(|k| {
            let alpha = spec.vector(k);
            let beta: Vec<C64> =
                (0..dim_b).map(|j| (0..dim_a).map(|i| alpha[i].conj() * coeff[(i, j)]).sum()).collect();
            let lambda = vec_norm(&beta);
            (lambda, alpha, beta)
        })
        .filter(|(l, _, _)| *l > COEFF_CUTOFF)
        .map(|(l, a, b)| {
            let b = b.into_iter().map(|z| z / l).collect();
            (l, a, b)
        })
        .collect();
    terms.sort_by(|x, y| y.0.total_cmp(&x.0));

    let mut out = SchmidtDecomposition {
        coefficients: Vec::with_capacity(terms.len()),
        basis_a: Vec::with_capacity(terms.len()),
        basis_b: Vec::with_capacity(terms.len()),
    };
    for (l, a, b) in terms {
        out.coefficients.push(l);
        out.basis_a.push(a);
        out.basis_b.push(b);
    }
    Ok(out)
}

/// Entropy of the Schmidt weights λ_k², in bits.
pub fn entanglement_entropy(psi: &PureVector, dim_a: usize, dim_b: usize) -> Result<f64> {
    let sd = schmidt_decompose(psi, dim_a, dim_b)?;
    let weights: Vec<f64> = sd.coefficients.iter().map(|l| l * l).collect();
    Ok(super::shannon_entropy(&weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_has_one_coefficient() {
        let psi = PureVector::basis(2, 0).tensor(&PureVector::basis(2, 1));
        let sd = schmidt_decompose(&psi, 2, 2).unwrap();
        assert_eq!(sd.rank(), 1);
        assert!((sd.coefficients[0] - 1.0).abs() < 1e-15);
        assert_eq!(entanglement_entropy(&psi, 2, 2).unwrap(), 0.0);
    }

    #[test]
    fn singlet_coefficients() {
        let h = 0.5_f64.sqrt();
        let psi = PureVector::from_real(&[0.0, h, -h, 0.0]).unwrap();
        let sd = schmidt_decompose(&psi, 2, 2).unwrap();
        assert_eq!(sd.rank(), 2);
        for c in &sd.coefficients {
            assert!((c - h).abs() < 1e-15);
        }
        let rec = sd.reconstruct();
        assert!(rec.iter().zip(psi.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-15));
        assert!((entanglement_entropy(&psi, 2, 2).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_split_and_norm() {
        let psi = PureVector::basis(4, 0);
        assert!(schmidt_decompose(&psi, 3, 2).is_err());
    }
}
