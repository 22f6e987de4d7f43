//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slow for large matrices but every operator here is at most a
//! few dozen rows, and the rotation criterion below (off-diagonal entry
//! against the geometric mean of the two diagonal entries) gives small
//! eigenvalues of graded positive matrices to high *relative* accuracy.
//! The perturbative detector states have eigenvalues spanning fourteen
//! orders of magnitude, and their entropies depend on the small ones.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Input must be Hermitian to this tolerance.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues whose gap is below this fraction of the larger modulus are
/// treated as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-9;
/// Negative eigenvalues down to `-CLIP_TOL` are rounding noise.
pub const CLIP_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 80;

/// Eigenvalues sorted descending, with eigenvector `i` in column `i`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    /// Set when some cluster of eigenvalues passing [`is_degenerate_pair`]
    /// had its basis fixed by the computational-basis tie-break.
    pub degenerate: bool,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.eigenvectors.column(i)
    }

    /// V f(Λ) V†
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * fl[k]).sum())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Output is deterministic for identical input. Eigenvectors are phased so
/// that their largest-modulus component (first one on ties) is real and
/// positive. Within a cluster of eigenvalues whose consecutive pairs pass
/// [`is_degenerate_pair`] the basis is rebuilt by projecting computational
/// basis vectors, in index order, onto the cluster's eigenspace.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, &mut v);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors: Vec<Vec<C64>> = order.iter().map(|&k| v.column(k)).collect();

    let scale = eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let mut degenerate = false;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && is_degenerate_pair(eigenvalues[end - 1], eigenvalues[end], scale) {
            end += 1;
        }
        if end - start > 1 {
            degenerate = true;
            let rebuilt = tie_break(&vectors[start..end], n);
            vectors.splice(start..end, rebuilt);
        }
        start = end;
    }

    for vec in vectors.iter_mut() {
        fix_phase(vec);
    }
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[j][i]);
    Ok(Spectrum { eigenvalues, eigenvectors, degenerate })
}

/// Gap below [`DEGENERACY_GAP`] relative to the larger of the two, or at
/// rounding level relative to `scale`, the largest eigenvalue modulus.
///
/// A purely absolute gap would merge the well separated small eigenvalues
/// of nearly pure states and mix their eigenvectors.
pub fn is_degenerate_pair(hi: f64, lo: f64, scale: f64) -> bool {
    let gap = hi - lo;
    gap < DEGENERACY_GAP * hi.abs().max(lo.abs()) || gap <= 64.0 * f64::EPSILON * scale
}

/// Eigenvalues only, sorted descending.
pub fn eigvals_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eig_hermitian(m)?.eigenvalues)
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(m)?;
    let min = spec.min_eigenvalue();
    if min < -CLIP_TOL {
        return Err(Error::NegativeEigenvalue { value: min });
    }
    Ok(spec.map(|l| l.max(0.0).sqrt()))
}

fn jacobi(a: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let n = a.rows();
    if n < 2 {
        return;
    }
    let floor = 1e-300_f64.max(a.frobenius_norm() * 1e-40);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= floor {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if g <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() * 0.5 {
                    continue;
                }
                rotated = true;
                rotate(a, v, p, q, app, aqq, apq, g);
            }
        }
        if !rotated {
            return;
        }
    }
    log::warn!("Jacobi eigensolver hit the sweep limit ({MAX_SWEEPS})");
}

#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    app: f64,
    aqq: f64,
    apq: C64,
    g: f64,
) {
    let n = a.rows();
    // a_pq = g e^{i phi}; J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
    let phase = apq / g;
    let phase_c = phase.conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let jqp = -phase_c * s;
    let jqq = phase_c * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let nkp = akp * c + akq * jqp;
        let nkq = akp * s + akq * jqq;
        a[(k, p)] = nkp;
        a[(p, k)] = nkp.conj();
        a[(k, q)] = nkq;
        a[(q, k)] = nkq.conj();
    }
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(q, q)] = C64::new(aqq + t * g, 0.0);
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
}

fn tie_break(cluster: &[Vec<C64>], n: usize) -> Vec<Vec<C64>> {
    let size = cluster.len();
    let mut chosen: Vec<Vec<C64>> = Vec::with_capacity(size);
    // Collect (norm, candidate) for each basis vector and accept in index
    // order; a candidate whose residual is tiny lies outside the cluster.
    for e in 0..n {
        if chosen.len() == size {
            break;
        }
        let mut w: Vec<C64> = vec![ZERO; n];
        for u in cluster {
            let coef = u[e].conj();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi += coef * ui;
            }
        }
        for _ in 0..2 {
            for c in &chosen {
                let ov: C64 = c.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, ci) in w.iter_mut().zip(c) {
                    *wi -= ov * ci;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            chosen.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    if chosen.len() < size {
        // Cannot happen for an orthonormal cluster, but keep the solver's
        // vectors rather than return a short basis.
        return cluster.to_vec();
    }
    chosen
}

fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, z) in v.iter().enumerate() {
        let r = z.norm();
        if r > best_norm * (1.0 + 1e-12) {
            best = i;
            best_norm = r;
        }
    }
    if best_norm <= 0.0 {
        return;
    }
    let ph = v[best].conj() / best_norm;
    for z in v.iter_mut() {
        *z *= ph;
    }
    v[best] = C64::new(v[best].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ONE;

    fn gram_defect(v: &ComplexMatrix) -> f64 {
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(v.rows()))
    }

    #[test]
    fn small_separated_eigenvalues_keep_their_vectors() {
        // eigenvalues ~1, 2.4e-7, 3.5e-10, 4.4e-14
        let x = C64::new(-8.300578629650338e-7, 5.854322299634292e-6);
        let (a, c, e) = (1.215882495327035e-7, 1.2124171883518426e-7, 3.500627696899139e-11);
        let z = ZERO;
        let r = |v: f64| C64::new(v, 0.0);
        let m = ComplexMatrix::new(
            4,
            4,
            vec![r(1.0 - 2.0 * a - e), z, z, x, z, r(a), r(c), z, z, r(c), r(a), z, x.conj(), z, z, r(e)],
        )
        .unwrap();
        let spec = eig_hermitian(&m).unwrap();
        assert!(!spec.degenerate);
        assert!(spec.reconstruct().max_abs_diff(&m) < 1e-15);
        assert!((spec.eigenvalues[2] / (a - c) - 1.0).abs() < 1e-9);
        let v = spec.vector(2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[1].norm() - h).abs() < 1e-12 && (v[1] + v[2]).norm() < 1e-12);
        let root = psd_sqrt(&m).unwrap();
        assert!((&root * &root).max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn degeneracy_criterion() {
        assert!(is_degenerate_pair(0.5, 0.5 - 1e-12, 1.0));
        assert!(!is_degenerate_pair(3.5e-10, 4.4e-14, 1.0));
        assert!(is_degenerate_pair(1e-17, -1e-17, 1.0));
        assert!(!is_degenerate_pair(0.5, 0.49, 1.0));
    }

    #[test]
    fn identity_spectrum() {
        let s = eig_hermitian(&ComplexMatrix::identity(5)).unwrap();
        assert!(s.eigenvalues.iter().all(|&l| l == 1.0));
        assert!(s.degenerate);
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(5));
    }

    #[test]
    fn werner_half_spectrum_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[0.125, 0.625, 0.125, 0.125]);
        let s = eig_hermitian(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![0.625, 0.125, 0.125, 0.125]);
    }

    #[test]
    fn pauli_x() {
        let m = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let s = eig_hermitian(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-15);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let m = ComplexMatrix::new(
            3,
            3,
            vec![
                C64::new(2.0, 0.0),
                C64::new(0.3, -0.4),
                C64::new(0.0, 1.0),
                C64::new(0.3, 0.4),
                C64::new(-1.0, 0.0),
                C64::new(0.2, 0.2),
                C64::new(0.0, -1.0),
                C64::new(0.2, -0.2),
                C64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let s = eig_hermitian(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
        assert!(gram_defect(&s.eigenvectors) < 1e-13);
        assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn degenerate_cluster_uses_computational_basis() {
        // I/2 (+) a rotated copy: eigenspace spanned by e0, e1 in a mixed basis.
        let h = 0.5_f64.sqrt();
        let u = ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).unwrap();
        let m = &(&u * &ComplexMatrix::from_real_diagonal(&[0.5, 0.5])) * &u.adjoint();
        let s = eig_hermitian(&m).unwrap();
        assert!(s.degenerate);
        assert!(s.eigenvectors.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn graded_matrix_small_eigenvalue_relative_accuracy() {
        // [[1, x], [x, x^2 + d]] has determinant d, so the small eigenvalue
        // is d / (large eigenvalue) to first order.
        let x = 3e-7;
        let d = 2e-20;
        let m = ComplexMatrix::from_real_rows(&[&[1.0, x], &[x, x * x + d]]).unwrap();
        let s = eig_hermitian(&m).unwrap();
        let large = s.eigenvalues[0];
        let small = s.eigenvalues[1];
        assert!((large * small - d).abs() / d < 1e-6, "small eigenvalue {small:e}");
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_examples() {
        let r = psd_sqrt(&ComplexMatrix::from_real_diagonal(&[4.0, 1.0])).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 1.0])) < 1e-15);
        let i3 = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&i3).unwrap().max_abs_diff(&i3) < 1e-15);
        let bad = ComplexMatrix::from_real_diagonal(&[1.0, -1e-6]);
        assert!(matches!(psd_sqrt(&bad), Err(Error::NegativeEigenvalue { .. })));
        let tiny_neg = ComplexMatrix::from_real_diagonal(&[1.0, -1e-12]);
        assert!(psd_sqrt(&tiny_neg).is_ok());
    }
}
