//! Measurement-based correlation measures: J, conditional entropy, the
//! eigenbasis-dephasing discord D3, measurement-optimized discord, and the
//! classicality tests built on them.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use super::entropy::{mutual_information, vn_entropy};
use crate::density::{BipartiteState, DensityMatrix, Subsystem};
use crate::error::{mismatch, Error, Result};
use crate::matrix::{inner, ComplexMatrix, C64, ZERO};

/// Outcomes rarer than this contribute nothing to the conditional entropy.
pub const MIN_OUTCOME_PROB: f64 = 1e-14;

/// A complete rank-1 projective measurement on subsystem A.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    basis: Vec<Vec<C64>>,
}

impl ProjectiveMeasurement {
    /// From an orthonormal basis; completeness and orthogonality are
    /// checked to 1e-10.
    pub fn from_basis(basis: Vec<Vec<C64>>) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidParameter("empty measurement".into()));
        }
        for v in &basis {
            if v.len() != d {
                return Err(mismatch(d, v.len()));
            }
        }
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                if (inner(u, v) - C64::new(expected, 0.0)).norm() > 1e-10 {
                    return Err(Error::InvalidParameter("measurement vectors are not orthonormal".into()));
                }
            }
        }
        Ok(Self { basis })
    }

    pub fn computational(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|a| (0..dim).map(|i| if i == a { C64::new(1.0, 0.0) } else { ZERO }).collect())
            .collect();
        Self { basis }
    }

    /// Qubit measurement along the Bloch direction (θ, φ) and its antipode.
    pub fn qubit_bloch(theta: f64, phi: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = C64::from_polar(1.0, phi);
        let up = vec![C64::new(c, 0.0), e * s];
        let down = vec![-e.conj() * s, C64::new(c, 0.0)];
        Self { basis: vec![up, down] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.basis.iter().map(|v| ComplexMatrix::outer(v, v)).collect()
    }
}

/// A value plus a flag recording that the degenerate-basis tie-break fired.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub degeneracy_flag: bool,
}

/// Output of [`measurement_j`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementInfo {
    pub j: f64,
    pub conditional_entropy: f64,
    pub outcome_probs: Vec<f64>,
}

/// Projectors onto the eigenvectors of ρ_A in descending eigenvalue order.
///
/// The flag is set when two eigenvalues of ρ_A pass
/// [`crate::eigen::is_degenerate_pair`];
/// the basis is then the computational tie-break.
pub fn local_eigenbasis(rho: &BipartiteState) -> (ProjectiveMeasurement, bool) {
    let spec = rho.partial_trace(Subsystem::A).spectrum();
    let basis = (0..spec.dim()).map(|k| spec.vector(k)).collect();
    let flag = spec.degenerate;
    (ProjectiveMeasurement { basis }, flag)
}

fn check_measurement(rho: &BipartiteState, m: &ProjectiveMeasurement) -> Result<()> {
    if m.dim() != rho.dim_a() {
        return Err(mismatch(rho.dim_a(), m.dim()));
    }
    Ok(())
}

/// <a| ρ |a> as an (unnormalized) operator on B.
fn conditional_block(rho: &BipartiteState, a: &[C64]) -> ComplexMatrix {
    let (da, db) = rho.dims();
    ComplexMatrix::from_fn(db, db, |j, l| {
        let mut acc = ZERO;
        for i in 0..da {
            let ai = a[i].conj();
            if ai == ZERO {
                continue;
            }
            for (k, &ak) in a.iter().enumerate().take(da) {
                if ak == ZERO {
                    continue;
                }
                acc += ai * rho.entry(i, j, k, l) * ak;
            }
        }
        acc
    })
}

/// Σ_a (Π_a ⊗ 1) ρ (Π_a ⊗ 1)
pub fn dephase_local(rho: &BipartiteState, basis: &ProjectiveMeasurement) -> Result<BipartiteState> {
    check_measurement(rho, basis)?;
    let (da, db) = rho.dims();
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n, n);
    for a in basis.basis() {
        let block = conditional_block(rho, a);
        for i in 0..da {
            for k in 0..da {
                let w = a[i] * a[k].conj();
                if w == ZERO {
                    continue;
                }
                for j in 0..db {
                    for l in 0..db {
                        out[(i * db + j, k * db + l)] += w * block[(j, l)];
                    }
                }
            }
        }
    }
    BipartiteState::new(da, db, DensityMatrix::new(out.hermitian_part())?)
}

/// J = S(ρ_B) - Σ_a p_a S(ρ_B|a) for a projective measurement on A.
pub fn measurement_j(rho: &BipartiteState, m: &ProjectiveMeasurement) -> Result<MeasurementInfo> {
    check_measurement(rho, m)?;
    let s_b = vn_entropy(&rho.partial_trace(Subsystem::B));
    let mut probs = Vec::with_capacity(m.dim());
    let mut cond = 0.0;
    for a in m.basis() {
        let block = conditional_block(rho, a).hermitian_part();
        let p = block.trace().re;
        probs.push(p.max(0.0));
        if p < MIN_OUTCOME_PROB {
            continue;
        }
        let rho_b_a = DensityMatrix::from_trusted(block.scale(1.0 / p));
        cond += p * vn_entropy(&rho_b_a);
    }
    Ok(MeasurementInfo { j: s_b - cond, conditional_entropy: cond, outcome_probs: probs })
}

/// D = I - J for the given measurement.
pub fn discord_given_measurement(rho: &BipartiteState, m: &ProjectiveMeasurement) -> Result<f64> {
    Ok(mutual_information(rho) - measurement_j(rho, m)?.j)
}

/// D3 = I(ρ) - I(Φ(ρ)), Φ dephasing A in the eigenbasis of ρ_A.
pub fn discord_d3(rho: &BipartiteState) -> MeasureResult {
    let (basis, flag) = local_eigenbasis(rho);
    let dephased = dephase_local(rho, &basis).expect("eigenbasis matches subsystem A");
    MeasureResult { value: mutual_information(rho) - mutual_information(&dephased), degeneracy_flag: flag }
}

/// Minimum of [`discord_given_measurement`] over all rank-1 projective
/// measurements on a qubit A.
///
/// A 64 (polar) x 32 (azimuthal) Bloch grid, seeded also with the ρ_A
/// eigenbasis, is followed by three rounds of coordinate refinement with the
/// step shrinking by 10 each round.
pub fn discord_projective_opt(rho: &BipartiteState) -> Result<f64> {
    if rho.dim_a() != 2 {
        return Err(Error::Unsupported(format!(
            "measurement optimization needs a qubit on A (dim_a = {})",
            rho.dim_a()
        )));
    }
    let mi = mutual_information(rho);
    let cost = |theta: f64, phi: f64| -> f64 {
        let m = ProjectiveMeasurement::qubit_bloch(theta, phi);
        mi - measurement_j(rho, &m).expect("qubit measurement").j
    };

    const N_THETA: usize = 64;
    const N_PHI: usize = 32;
    let d_theta = PI / (N_THETA - 1) as f64;
    let d_phi = 2.0 * PI / N_PHI as f64;

    let (eig_basis, _) = local_eigenbasis(rho);
    let (t0, p0) = bloch_angles(&eig_basis.basis()[0]);
    let mut best = (cost(t0, p0), t0, p0);
    for it in 0..N_THETA {
        let theta = it as f64 * d_theta;
        for ip in 0..N_PHI {
            let phi = ip as f64 * d_phi;
            let c = cost(theta, phi);
            if c < best.0 {
                best = (c, theta, phi);
            }
        }
    }
    let eigen_value = cost(t0, p0);

    let (mut step_t, mut step_p) = (d_theta, d_phi);
    for _ in 0..3 {
        for coord in 0..2 {
            let (_, t, p) = best;
            for k in -10..=10 {
                let f = k as f64 / 10.0;
                let (tt, pp) = if coord == 0 { (t + f * step_t, p) } else { (t, p + f * step_p) };
                let c = cost(tt, pp);
                if c < best.0 {
                    best = (c, tt, pp);
                }
            }
        }
        step_t *= 0.1;
        step_p *= 0.1;
    }
    Ok(best.0.min(eigen_value))
}

fn bloch_angles(v: &[C64]) -> (f64, f64) {
    // v ~ (cos θ/2, e^{iφ} sin θ/2) up to a global phase
    let (a, b) = (v[0], v[1]);
    let theta = 2.0 * b.norm().atan2(a.norm());
    let phi = if a.norm() > 0.0 && b.norm() > 0.0 { (b * a.conj()).arg() } else { 0.0 };
    (theta, phi)
}

/// Verdict of the D3-based Classical-Quantum test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CqVerdict {
    ClassicalQuantum,
    NotClassicalQuantum,
    /// ρ_A is degenerate, so the D3 basis is not unique.
    UndeterminedByD3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CqCheck {
    pub verdict: CqVerdict,
    pub d3: MeasureResult,
}

impl CqCheck {
    pub fn is_classical_quantum(&self) -> bool {
        self.verdict == CqVerdict::ClassicalQuantum
    }
}

/// CQ test via D3 < tol; degenerate marginals give `UndeterminedByD3`.
pub fn is_classical_quantum(rho: &BipartiteState, tol: f64) -> CqCheck {
    let d3 = discord_d3(rho);
    let verdict = if d3.degeneracy_flag {
        CqVerdict::UndeterminedByD3
    } else if d3.value < tol {
        CqVerdict::ClassicalQuantum
    } else {
        CqVerdict::NotClassicalQuantum
    };
    CqCheck { verdict, d3 }
}

/// Largest commutator norm among the A-operators `M_jl = <·j|ρ|·l>`.
///
/// ρ is Classical-Quantum exactly when these operators form a commuting
/// family (the family is closed under adjoint, so this includes normality),
/// which makes the defect a basis-free CQ test that works with degenerate
/// marginals.
pub fn cq_commutator_defect(rho: &BipartiteState) -> f64 {
    let (da, db) = rho.dims();
    let blocks: Vec<ComplexMatrix> = (0..db)
        .flat_map(|j| (0..db).map(move |l| (j, l)))
        .map(|(j, l)| ComplexMatrix::from_fn(da, da, |i, k| rho.entry(i, j, k, l)))
        .collect();
    let mut worst: f64 = 0.0;
    for (x, bx) in blocks.iter().enumerate() {
        for by in &blocks[x..] {
            let comm = &(bx * by) - &(by * bx);
            worst = worst.max(comm.max_abs());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleVerdict {
    NotClassical,
    Undetermined,
}

/// Which test certified a non-classical mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// D3 of the mixture (or of its swap) is at least the tolerance.
    D3,
    /// Degenerate marginal; the commutator defect exceeded the tolerance.
    Commutator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleWitness {
    pub verdict: EnsembleVerdict,
    pub weights: Option<Vec<f64>>,
    pub certificate: Option<Certificate>,
    /// Mixtures examined before stopping.
    pub tried: usize,
}

/// One-sided search for a convex mixture of the ensemble that is not
/// Classical-Classical.
///
/// Tries each member, the uniform mixture, then `samples` Dirichlet(1)
/// weight vectors drawn from `seed`. A mixture fails when either it or its
/// A/B swap fails the CQ test: D3 >= `tol` with a non-degenerate marginal, or
/// commutator defect >= `tol` when the marginal is degenerate.
pub fn ensemble_classicality_witness(
    states: &[BipartiteState],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<EnsembleWitness> {
    let first = states.first().ok_or(Error::EmptyEnsemble)?;
    let dims = first.dims();
    if let Some(bad) = states.iter().find(|s| s.dims() != dims) {
        return Err(mismatch(format!("{:?}", dims), format!("{:?}", bad.dims())));
    }
    let n = states.len();
    let mut candidates: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    if n > 1 {
        candidates.push(vec![1.0 / n as f64; n]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let raw: Vec<f64> = (0..n).map(|_| Exp1.sample(&mut rng)).collect();
        let total: f64 = raw.iter().sum();
        candidates.push(raw.into_iter().map(|x| x / total).collect());
    }

    let densities: Vec<&DensityMatrix> = states.iter().map(|s| s.density()).collect();
    for (tried, w) in candidates.into_iter().enumerate() {
        let mix = BipartiteState::new(dims.0, dims.1, DensityMatrix::mixture(&w, &densities)?)?;
        for side in [mix.clone(), mix.swapped()] {
            if let Some(cert) = fails_cq(&side, tol) {
                return Ok(EnsembleWitness {
                    verdict: EnsembleVerdict::NotClassical,
                    weights: Some(w),
                    certificate: Some(cert),
                    tried: tried + 1,
                });
            }
        }
    }
    Ok(EnsembleWitness {
        verdict: EnsembleVerdict::Undetermined,
        weights: None,
        certificate: None,
        tried: n + usize::from(n > 1) + samples,
    })
}

fn fails_cq(rho: &BipartiteState, tol: f64) -> Option<Certificate> {
    let check = is_classical_quantum(rho, tol);
    match check.verdict {
        CqVerdict::NotClassicalQuantum => Some(Certificate::D3),
        CqVerdict::ClassicalQuantum => None,
        CqVerdict::UndeterminedByD3 => (cq_commutator_defect(rho) >= tol).then_some(Certificate::Commutator),
    }
}
