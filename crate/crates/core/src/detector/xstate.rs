use serde::Serialize;

use super::erf::{erf_damped, erfcx, faddeeva_w};
use crate::density::{BipartiteState, DensityMatrix};
use crate::eigen::eig_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Excitation probability above which second-order perturbation theory is
/// no longer trusted.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Two identical inertial detectors with Gaussian switching.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorParams {
    pub eps0: f64,
    pub sigma: f64,
    pub omega: f64,
    pub distance_l: f64,
}

impl DetectorParams {
    pub fn new(eps0: f64, sigma: f64, omega: f64, distance_l: f64) -> Result<Self> {
        let p = Self { eps0, sigma, omega, distance_l };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with σ = 1 from the dimensionless pair (Ωσ, L/σ).
    pub fn dimensionless(eps0: f64, omega_sigma: f64, l_over_sigma: f64) -> Result<Self> {
        Self::new(eps0, 1.0, omega_sigma, l_over_sigma)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.eps0, self.sigma, self.omega, self.distance_l].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::NonFinite);
        }
        if self.eps0 <= 0.0 {
            return Err(Error::InvalidParameter(format!("eps0 = {} must be positive", self.eps0)));
        }
        if self.sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!("sigma = {} must be positive", self.sigma)));
        }
        if self.omega < 0.0 {
            return Err(Error::InvalidParameter(format!("omega = {} must be non-negative", self.omega)));
        }
        if self.distance_l <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "distance L = {} must be positive",
                self.distance_l
            )));
        }
        Ok(())
    }

    pub fn omega_sigma(&self) -> f64 {
        self.omega * self.sigma
    }

    pub fn l_over_sigma(&self) -> f64 {
        self.distance_l / self.sigma
    }

    /// Tolerance for identities that hold up to O(ε0⁴): 10·ε0⁴.
    pub fn slack(&self) -> f64 {
        10.0 * self.eps0.powi(4)
    }
}

/// Local/nonlocal parametrization of a two-qubit X-state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XStateElements {
    pub a_prob: f64,
    pub b_prob: f64,
    pub x_coh: C64,
    /// Real for detector-derived states.
    pub c_corr: C64,
    pub e_joint: f64,
}

impl XStateElements {
    /// Identical detectors: B = A and E = |X|² + A² + 2|C|².
    pub fn symmetric(a_prob: f64, x_coh: C64, c_corr: C64) -> Self {
        let e_joint = x_coh.norm_sqr() + a_prob * a_prob + 2.0 * c_corr.norm_sqr();
        Self { a_prob, b_prob: a_prob, x_coh, c_corr, e_joint }
    }

    pub fn is_perturbative(&self) -> bool {
        self.a_prob <= PERTURBATIVE_LIMIT
    }

    /// Matrix in the basis |00>, |01>, |10>, |11>.
    pub fn matrix(&self) -> ComplexMatrix {
        let (a, b, e) = (self.a_prob, self.b_prob, self.e_joint);
        let r = |v: f64| C64::new(v, 0.0);
        let data = vec![
            r(1.0 - a - b + e),
            ZERO,
            ZERO,
            self.x_coh,
            ZERO,
            r(b - e),
            self.c_corr,
            ZERO,
            ZERO,
            self.c_corr.conj(),
            r(a - e),
            ZERO,
            self.x_coh.conj(),
            ZERO,
            ZERO,
            r(e),
        ];
        ComplexMatrix::new(4, 4, data).expect("4x4")
    }

    /// Joint outcome probabilities p(r_A, r_B) from the diagonal.
    pub fn outcome_distribution(&self) -> [[f64; 2]; 2] {
        let (a, b, e) = (self.a_prob, self.b_prob, self.e_joint);
        [[1.0 - a - b + e, b - e], [a - e, e]]
    }
}

/// Second-order matrix elements of the two-detector state.
pub fn compute_elements(p: &DetectorParams) -> Result<XStateElements> {
    p.validate()?;
    let eps2 = p.eps0 * p.eps0;
    let s = p.omega_sigma();
    let y = p.l_over_sigma() / 2.0;
    let ratio = p.sigma / p.distance_l;
    let damp_s = (-s * s).exp();
    let damp_y = (-y * y).exp();

    // e^{-s²} - √π s erfc(s) = e^{-s²} (1 - √π s erfcx(s))
    let bracket = 1.0 - s * erfcx(s) / FRAC_1_SQRT_PI;
    let a_prob = eps2 / (4.0 * std::f64::consts::PI) * damp_s * bracket;

    let pref = eps2 * FRAC_1_SQRT_PI / 4.0 * ratio;
    let erf_iy = erf_damped(C64::new(0.0, y));
    let x_coh = C64::i() * pref * damp_s * (erf_iy + damp_y);

    // Im[e^{iΩL} e^{-y²} erf(s+iy)] - e^{-y²} sin ΩL = -e^{-s²} Im w(-y+is);
    // the left side cancels to e^{-s²} relative size when Ωσ is large
    let c_corr = -pref * damp_s * faddeeva_w(C64::new(-y, s)).im;

    let e = XStateElements::symmetric(a_prob, x_coh, C64::new(c_corr, 0.0));
    if !e.is_perturbative() {
        log::warn!("A = {a_prob} exceeds {PERTURBATIVE_LIMIT}; second-order expansion is unreliable");
    }
    Ok(e)
}

/// Assembled X-state with the outcome of the positivity repair.
#[derive(Debug, Clone)]
pub struct AssembledState {
    pub state: BipartiteState,
    pub clipped: bool,
    pub min_eigenvalue: f64,
}

/// Assemble the 4x4 state. Eigenvalues in [-tol, 0) are clipped to zero and
/// the trace restored; anything below -tol is an error.
pub fn assemble_rho(e: &XStateElements, tol: f64) -> Result<AssembledState> {
    let m = e.matrix();
    let spec = eig_hermitian(&m)?;
    let min_eigenvalue = spec.min_eigenvalue();
    if min_eigenvalue < -tol {
        return Err(Error::NegativeEigenvalue { value: min_eigenvalue });
    }
    if min_eigenvalue >= 0.0 {
        let state = BipartiteState::new(2, 2, DensityMatrix::with_tolerance(m, tol.max(1e-10))?)?;
        return Ok(AssembledState { state, clipped: false, min_eigenvalue });
    }
    let total: f64 = spec.eigenvalues.iter().map(|l| l.max(0.0)).sum();
    let repaired = spec.map(|l| l.max(0.0) / total).hermitian_part();
    let state = BipartiteState::new(2, 2, DensityMatrix::new(repaired)?)?;
    log::debug!("clipped eigenvalue {min_eigenvalue:e}");
    Ok(AssembledState { state, clipped: true, min_eigenvalue })
}

/// 2·max(0, |X| - A).
pub fn xstate_concurrence(e: &XStateElements) -> f64 {
    2.0 * (e.x_coh.norm() - e.a_prob).max(0.0)
}

/// The two partial-transpose alternatives: `|X| > A - slack` and `|C| > √E`.
pub fn xstate_entanglement_flags(e: &XStateElements, slack: f64) -> (bool, bool) {
    let cond1 = e.x_coh.norm() > e.a_prob - slack;
    let cond2 = e.c_corr.norm() > e.e_joint.max(0.0).sqrt();
    (cond1, cond2)
}

/// Pearson correlation of the two detectors' excitation outcomes.
pub fn corr_coefficient(e: &XStateElements) -> Result<f64> {
    let (a, b) = (e.a_prob, e.b_prob);
    if !(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter(format!("correlation undefined for A = {a}, B = {b}")));
    }
    Ok((e.e_joint - a * b) / (a * (1.0 - a) * b * (1.0 - b)).sqrt())
}

/// Leading-order correlation (|X|² + 2|C|²)/A.
pub fn corr_leading(e: &XStateElements) -> f64 {
    (e.x_coh.norm_sqr() + 2.0 * e.c_corr.norm_sqr()) / e.a_prob
}

/// (A+C)log(A+C) + (A-C)log(A-C) - 2A log A in bits, with |C| for C.
pub fn d3_closed_form(e: &XStateElements) -> Result<f64> {
    let a = e.a_prob;
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("A = {a} must be positive")));
    }
    let r = e.c_corr.norm() / a;
    if r > 1.0 {
        return Err(Error::InvalidParameter(format!("|C| = {} exceeds A = {a}", e.c_corr.norm())));
    }
    Ok(a * convex_gap(r) / std::f64::consts::LN_2)
}

/// (1+r)ln(1+r) + (1-r)ln(1-r) on [0, 1].
fn convex_gap(r: f64) -> f64 {
    if r < 0.1 {
        gap_series(r)
    } else if r == 1.0 {
        2.0 * std::f64::consts::LN_2
    } else {
        (1.0 + r) * r.ln_1p() + (1.0 - r) * (-r).ln_1p()
    }
}

/// Σ_k r^{2k} / (k(2k-1)), free of the cancellation at small r.
fn gap_series(r: f64) -> f64 {
    let r2 = r * r;
    let mut pow = r2;
    let mut sum = 0.0;
    for k in 1..=12 {
        let kf = k as f64;
        sum += pow / (kf * (2.0 * kf - 1.0));
        pow *= r2;
    }
    sum
}
