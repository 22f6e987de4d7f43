//! Density matrices, pure vectors and bipartite bookkeeping.
//!
//! Bipartite index convention: subsystem A is the slower-varying index, so
//! the two-qubit basis order is |00>, |01>, |10>, |11> with |ij> = |i>_A |j>_B.

use serde::Serialize;

use crate::eigen::{eig_hermitian, Spectrum, CLIP_TOL, HERMITIAN_TOL};
use crate::error::{mismatch, Error, Result};
use crate::matrix::{vec_norm, ComplexMatrix, C64, ZERO};

/// Default validation tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;
/// Normalization tolerance for pure vectors.
pub const NORM_TOL: f64 = 1e-10;

/// Diagnostics from [`validate_density`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub dim: usize,
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks Hermiticity, unit trace and positivity, all against `tol`.
///
/// Non-square input yields a failed report with infinite defects.
pub fn validate_density(m: &ComplexMatrix, tol: f64) -> DensityReport {
    if !m.is_square() {
        return DensityReport {
            dim: m.rows(),
            hermiticity_defect: f64::INFINITY,
            trace_defect: f64::INFINITY,
            min_eigenvalue: f64::NEG_INFINITY,
            tolerance: tol,
            passed: false,
        };
    }
    let herm = m.hermiticity_defect();
    let tr = m.trace();
    let trace_defect = (tr - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = if herm <= HERMITIAN_TOL.max(tol) {
        eig_hermitian(&m.hermitian_part()).map(|s| s.min_eigenvalue()).unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NEG_INFINITY
    };
    let passed = herm <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
    DensityReport {
        dim: m.rows(),
        hermiticity_defect: herm,
        trace_defect,
        min_eigenvalue,
        tolerance: tol,
        passed,
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DENSITY_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let report = validate_density(&matrix, tol);
        if !report.passed {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.3e} (tol {:.1e})",
                report.hermiticity_defect, report.trace_defect, report.min_eigenvalue, tol
            )));
        }
        Ok(Self { matrix })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64) }
    }

    pub fn from_pure(psi: &PureVector) -> Self {
        Self { matrix: ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()) }
    }

    pub fn from_real_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn spectrum(&self) -> Spectrum {
        eig_hermitian(&self.matrix).expect("density matrices are Hermitian")
    }

    /// Eigenvalues (descending) with values in `[-CLIP_TOL, 0)` set to zero.
    pub fn clipped_eigenvalues(&self) -> Vec<f64> {
        self.spectrum()
            .eigenvalues
            .into_iter()
            .map(|l| if (-CLIP_TOL..0.0).contains(&l) { 0.0 } else { l })
            .collect()
    }

    /// Probabilistic mixture `Σ w_i ρ_i`.
    pub fn mixture(weights: &[f64], states: &[&DensityMatrix]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(mismatch(states.len(), weights.len()));
        }
        let dim = states[0].dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(mismatch(dim, s.dim()));
            }
            acc = &acc + &s.matrix.scale(*w);
        }
        Self::new(acc)
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureVector {
    amplitudes: Vec<C64>,
}

impl PureVector {
    /// Accepts amplitudes whose norm is within [`NORM_TOL`] of one.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("empty state vector".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Unnormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Unnormalized { norm });
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut a = vec![ZERO; dim];
        a[index] = C64::new(1.0, 0.0);
        Self { amplitudes: a }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureVector) -> C64 {
        crate::matrix::inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn tensor(&self, other: &PureVector) -> PureVector {
        PureVector { amplitudes: crate::matrix::tensor_vec(&self.amplitudes, &other.amplitudes) }
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Which side of a bipartite split an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subsystem {
    A,
    B,
}

/// A density matrix on H_A ⊗ H_B.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    state: DensityMatrix,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, state: DensityMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != state.dim() {
            return Err(mismatch(format!("{dim_a}x{dim_b}"), format!("dim {}", state.dim())));
        }
        Ok(Self { dim_a, dim_b, state })
    }

    pub fn from_matrix(dim_a: usize, dim_b: usize, m: ComplexMatrix) -> Result<Self> {
        Self::new(dim_a, dim_b, DensityMatrix::new(m)?)
    }

    pub fn from_pure(dim_a: usize, dim_b: usize, psi: &PureVector) -> Result<Self> {
        Self::new(dim_a, dim_b, DensityMatrix::from_pure(psi))
    }

    pub fn product(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Self {
        let m = crate::matrix::tensor_product(rho_a.matrix(), rho_b.matrix());
        Self { dim_a: rho_a.dim(), dim_b: rho_b.dim(), state: DensityMatrix::from_trusted(m) }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.state.matrix()
    }

    /// Entry `<i j| ρ |k l>` with `i, k` on A and `j, l` on B.
    #[inline]
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.matrix()[(i * self.dim_b + j, k * self.dim_b + l)]
    }

    /// Reduced state of the kept subsystem.
    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let (da, db) = self.dims();
        let m = match keep {
            Subsystem::A => {
                ComplexMatrix::from_fn(da, da, |i, k| (0..db).map(|j| self.entry(i, j, k, j)).sum())
            }
            Subsystem::B => {
                ComplexMatrix::from_fn(db, db, |j, l| (0..da).map(|i| self.entry(i, j, i, l)).sum())
            }
        };
        DensityMatrix::from_trusted(m)
    }

    /// Transpose on one factor. The result is Hermitian with unit trace but
    /// need not be positive.
    pub fn partial_transpose(&self, on: Subsystem) -> ComplexMatrix {
        let (da, db) = self.dims();
        let n = da * db;
        ComplexMatrix::from_fn(n, n, |r, c| {
            let (i, j) = (r / db, r % db);
            let (k, l) = (c / db, c % db);
            match on {
                Subsystem::A => self.entry(k, j, i, l),
                Subsystem::B => self.entry(i, l, k, j),
            }
        })
    }

    /// The same state with the roles of A and B exchanged.
    pub fn swapped(&self) -> BipartiteState {
        let (da, db) = self.dims();
        let n = da * db;
        let m = ComplexMatrix::from_fn(n, n, |r, c| {
            let (j, i) = (r / da, r % da);
            let (l, k) = (c / da, c % da);
            self.entry(i, j, k, l)
        });
        BipartiteState { dim_a: db, dim_b: da, state: DensityMatrix::from_trusted(m) }
    }
}

/// Free-function form of [`BipartiteState::partial_trace`].
pub fn partial_trace(rho: &BipartiteState, keep: Subsystem) -> DensityMatrix {
    rho.partial_trace(keep)
}

/// Free-function form of [`BipartiteState::partial_transpose`].
pub fn partial_transpose(rho: &BipartiteState, on: Subsystem) -> ComplexMatrix {
    rho.partial_transpose(on)
}
