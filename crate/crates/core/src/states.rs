//! Named state families and seeded random generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::density::{BipartiteState, DensityMatrix, PureVector, Subsystem};
use crate::error::{mismatch, Error, Result};
use crate::matrix::{inner, tensor_product, ComplexMatrix, C64};

/// Tolerance on probability vectors passed to the factories.
const PROB_TOL: f64 = 1e-12;

fn check_probability(p: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameter(format!("{name} = {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidParameter("probabilities must be finite and non-negative".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > PROB_TOL {
        return Err(Error::InvalidParameter(format!("probabilities sum to {total}")));
    }
    Ok(())
}

/// Diagonal state Σ p_kl |k><k| ⊗ |l><l|.
pub fn classical_bipartite(p: &[Vec<f64>]) -> Result<BipartiteState> {
    let da = p.len();
    let db = p.first().map_or(0, |r| r.len());
    if da == 0 || db == 0 || p.iter().any(|r| r.len() != db) {
        return Err(Error::InvalidParameter("probability table must be a non-empty rectangle".into()));
    }
    let flat: Vec<f64> = p.iter().flatten().copied().collect();
    check_distribution(&flat)?;
    let m = ComplexMatrix::from_real_diagonal(&flat);
    BipartiteState::new(da, db, DensityMatrix::from_trusted(m))
}

/// The four Bell vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell(which: Bell) -> PureVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match which {
        Bell::PhiPlus => [h, 0.0, 0.0, h],
        Bell::PhiMinus => [h, 0.0, 0.0, -h],
        Bell::PsiPlus => [0.0, h, h, 0.0],
        Bell::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureVector::from_real(&amps).expect("normalized")
}

/// (|01> - |10>)/√2
pub fn singlet() -> PureVector {
    bell(Bell::PsiMinus)
}

/// p |ψ><ψ| + (1 - p) 1/2ⁿ on n qubits, split with ⌊n/2⌋ qubits on A.
pub fn pseudo_pure(psi: &PureVector, p: f64, n_qubits: u32) -> Result<BipartiteState> {
    check_probability(p, "p")?;
    if n_qubits < 2 {
        return Err(Error::InvalidParameter("pseudo-pure states need at least two qubits".into()));
    }
    let dim = 1usize << n_qubits;
    if psi.dim() != dim {
        return Err(mismatch(dim, psi.dim()));
    }
    let dim_a = 1usize << (n_qubits / 2);
    let noise = (1.0 - p) / dim as f64;
    let amps = psi.amplitudes();
    let m = ComplexMatrix::from_fn(dim, dim, |i, j| {
        let mut z = amps[i] * amps[j].conj() * p;
        if i == j {
            z += noise;
        }
        z
    });
    BipartiteState::new(dim_a, dim / dim_a, DensityMatrix::from_trusted(m))
}

/// Depolarized singlet p |Ψ-><Ψ-| + (1 - p) 1/4.
pub fn werner(p: f64) -> Result<BipartiteState> {
    pseudo_pure(&singlet(), p, 2)
}

/// The nine two-qutrit tiles (index 1..=9 at positions 0..9) and the stopper.
#[derive(Debug, Clone)]
pub struct TileBasis {
    pub tiles: Vec<PureVector>,
    pub stopper: PureVector,
}

impl TileBasis {
    /// Tile by its 1-based label.
    pub fn tile(&self, label: usize) -> &PureVector {
        &self.tiles[label - 1]
    }
}

pub fn tile_basis() -> TileBasis {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let ket = |v: [f64; 3]| PureVector::from_real(&v).expect("normalized");
    let k0 = ket([1.0, 0.0, 0.0]);
    let k1 = ket([0.0, 1.0, 0.0]);
    let k2 = ket([0.0, 0.0, 1.0]);
    let p01 = ket([h, h, 0.0]);
    let m01 = ket([h, -h, 0.0]);
    let p12 = ket([0.0, h, h]);
    let m12 = ket([0.0, h, -h]);
    let tiles = vec![
        k0.tensor(&p01),
        k0.tensor(&m01),
        k2.tensor(&p12),
        k2.tensor(&m12),
        k1.tensor(&k1),
        p01.tensor(&k2),
        m01.tensor(&k2),
        p12.tensor(&k0),
        m12.tensor(&k0),
    ];
    let third = 1.0 / 3.0_f64.sqrt();
    let uniform = ket([third, third, third]);
    TileBasis { tiles, stopper: uniform.tensor(&uniform) }
}

/// Labels removed from the identity to form the bound entangled state.
pub const BOUND_ENTANGLED_REMOVED: [usize; 4] = [2, 4, 7, 9];

/// (1_9 - Σ_{i ∈ {2,4,7,9,S}} |ψ_i><ψ_i|) / 4
pub fn bound_entangled_tiles() -> BipartiteState {
    let tb = tile_basis();
    let mut m = ComplexMatrix::identity(9);
    for label in BOUND_ENTANGLED_REMOVED {
        m = &m - &tb.tile(label).projector();
    }
    m = &m - &tb.stopper.projector();
    BipartiteState::new(3, 3, DensityMatrix::from_trusted(m.scale(0.25))).expect("9 = 3 x 3")
}

/// Σ_a α_a |a><a| ⊗ τ_a
pub fn cq_state(alphas: &[f64], basis_a: &[PureVector], taus: &[DensityMatrix]) -> Result<BipartiteState> {
    if alphas.is_empty() || alphas.len() != basis_a.len() || alphas.len() != taus.len() {
        return Err(mismatch(
            alphas.len(),
            format!("{} basis vectors, {} states", basis_a.len(), taus.len()),
        ));
    }
    check_distribution(alphas)?;
    let da = basis_a[0].dim();
    let db = taus[0].dim();
    if basis_a.len() > da {
        return Err(Error::InvalidParameter("more basis vectors than the dimension of A".into()));
    }
    for (i, u) in basis_a.iter().enumerate() {
        if u.dim() != da {
            return Err(mismatch(da, u.dim()));
        }
        for v in &basis_a[..i] {
            if inner(u.amplitudes(), v.amplitudes()).norm() > 1e-10 {
                return Err(Error::InvalidParameter("basis on A is not orthogonal".into()));
            }
        }
    }
    if let Some(t) = taus.iter().find(|t| t.dim() != db) {
        return Err(mismatch(db, t.dim()));
    }
    let n = da * db;
    let mut m = ComplexMatrix::zeros(n, n);
    for ((a, u), tau) in alphas.iter().zip(basis_a).zip(taus) {
        m = &m + &tensor_product(&u.projector(), tau.matrix()).scale(*a);
    }
    BipartiteState::from_matrix(da, db, m)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Ginibre-distributed density matrix G G† / tr of the given rank.
pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!("rank {rank} invalid for dimension {dim}")));
    }
    let g = ComplexMatrix::from_fn(dim, rank, |_, _| gaussian_complex(rng));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale(1.0 / tr).hermitian_part())
}

pub fn random_state(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_state_with(&mut ChaCha8Rng::seed_from_u64(seed), dim, rank)
}

/// Haar-random pure vector.
pub fn random_pure_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<PureVector> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    PureVector::normalized((0..dim).map(|_| gaussian_complex(rng)).collect())
}

pub fn random_pure(dim: usize, seed: u64) -> Result<PureVector> {
    random_pure_with(&mut ChaCha8Rng::seed_from_u64(seed), dim)
}

/// Random isometry with `rows >= cols`: orthonormalized Gaussian columns.
pub fn random_isometry_with<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    if cols == 0 || rows < cols {
        return Err(Error::InvalidParameter(format!("no {rows}x{cols} isometry")));
    }
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(cols);
    while columns.len() < cols {
        let mut v: Vec<C64> = (0..rows).map(|_| gaussian_complex(rng)).collect();
        for _ in 0..2 {
            for c in &columns {
                let ov = inner(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= ov * ci;
                }
            }
        }
        let norm = crate::matrix::vec_norm(&v);
        if norm > 1e-8 {
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| columns[j][i]))
}

pub fn random_unitary_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    random_isometry_with(rng, dim, dim)
}

/// A channel in Kraus form, Φ(ρ) = Σ_k K_k ρ K_k†.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<ComplexMatrix>,
}

impl Channel {
    /// Kraus operators must satisfy Σ K†K = 1 to 1e-10.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidParameter("no Kraus operators".into()))?;
        let din = first.cols();
        let mut sum = ComplexMatrix::zeros(din, din);
        for k in &kraus {
            if k.cols() != din || k.rows() != first.rows() {
                return Err(mismatch(
                    format!("{}x{}", first.rows(), din),
                    format!("{}x{}", k.rows(), k.cols()),
                ));
            }
            sum = &sum + &(&k.adjoint() * k);
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(din)) > 1e-10 {
            return Err(Error::InvalidParameter("Kraus operators are not trace preserving".into()));
        }
        Ok(Self { kraus })
    }

    /// Kraus operators `K_e = (1 ⊗ <e|) V` of an isometry `V: d_in -> d_out ⊗ d_env`.
    pub fn from_isometry(v: &ComplexMatrix, d_out: usize, d_env: usize) -> Result<Self> {
        if v.rows() != d_out * d_env {
            return Err(mismatch(d_out * d_env, v.rows()));
        }
        let kraus = (0..d_env)
            .map(|e| ComplexMatrix::from_fn(d_out, v.cols(), |i, j| v[(i * d_env + e, j)]))
            .collect();
        Self::from_kraus(kraus)
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn input_dim(&self) -> usize {
        self.kraus[0].cols()
    }

    pub fn output_dim(&self) -> usize {
        self.kraus[0].rows()
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.input_dim() {
            return Err(mismatch(self.input_dim(), rho.dim()));
        }
        let d = self.output_dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            out = &out + &(&(k * rho.matrix()) * &k.adjoint());
        }
        DensityMatrix::new(out.hermitian_part())
    }

    /// Φ ⊗ id on a bipartite state, acting on A.
    pub fn apply_on_a(&self, rho: &BipartiteState) -> Result<BipartiteState> {
        if rho.dim_a() != self.input_dim() {
            return Err(mismatch(self.input_dim(), rho.dim_a()));
        }
        let id = ComplexMatrix::identity(rho.dim_b());
        let lifted: Vec<ComplexMatrix> = self.kraus.iter().map(|k| tensor_product(k, &id)).collect();
        let out = Channel { kraus: lifted }.apply(rho.density())?;
        BipartiteState::new(self.output_dim(), rho.dim_b(), out)
    }
}

/// Random CPTP map on `dim`: a random isometry into `dim ⊗ env_dim`
/// followed by the trace over the environment.
pub fn random_channel_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, env_dim: usize) -> Result<Channel> {
    if dim == 0 || env_dim == 0 {
        return Err(Error::InvalidParameter("channel dimensions must be positive".into()));
    }
    let v = random_isometry_with(rng, dim * env_dim, dim)?;
    Channel::from_isometry(&v, dim, env_dim)
}

pub fn random_channel(dim: usize, env_dim: usize, seed: u64) -> Result<Channel> {
    random_channel_with(&mut ChaCha8Rng::seed_from_u64(seed), dim, env_dim)
}

/// Reduced state of subsystem A of a pure bipartite vector.
pub fn pure_marginal(psi: &PureVector, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    Ok(BipartiteState::from_pure(dim_a, dim_b, psi)?.partial_trace(Subsystem::A))
}

/// Serializable description of a state built by one of the factories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateSpec {
    Classical {
        p: Vec<Vec<f64>>,
    },
    Bell {
        which: Bell,
    },
    Werner {
        p: f64,
    },
    /// Pseudo-pure state around a Bell vector.
    PseudoPure {
        which: Bell,
        p: f64,
    },
    /// Tile with 1-based label 1..=9, or 10 for the stopper.
    TileVector {
        index: usize,
    },
    TileBoundEntangled,
    Cq {
        alphas: Vec<f64>,
        tau_diagonals: Vec<Vec<f64>>,
    },
    RandomDensity {
        dim_a: usize,
        dim_b: usize,
        rank: usize,
        seed: u64,
    },
    RandomPure {
        dim_a: usize,
        dim_b: usize,
        seed: u64,
    },
}

impl StateSpec {
    pub fn build(&self) -> Result<BipartiteState> {
        match self {
            StateSpec::Classical { p } => classical_bipartite(p),
            StateSpec::Bell { which } => BipartiteState::from_pure(2, 2, &bell(*which)),
            StateSpec::Werner { p } => werner(*p),
            StateSpec::PseudoPure { which, p } => pseudo_pure(&bell(*which), *p, 2),
            StateSpec::TileVector { index } => {
                let tb = tile_basis();
                let v = match index {
                    1..=9 => tb.tile(*index).clone(),
                    10 => tb.stopper,
                    _ => return Err(Error::InvalidParameter(format!("tile index {index} outside 1..=10"))),
                };
                BipartiteState::from_pure(3, 3, &v)
            }
            StateSpec::TileBoundEntangled => Ok(bound_entangled_tiles()),
            StateSpec::Cq { alphas, tau_diagonals } => {
                let taus = tau_diagonals
                    .iter()
                    .map(|d| DensityMatrix::from_real_diagonal(d))
                    .collect::<Result<Vec<_>>>()?;
                let da = alphas.len();
                let basis: Vec<PureVector> = (0..da).map(|a| PureVector::basis(da, a)).collect();
                cq_state(alphas, &basis, &taus)
            }
            StateSpec::RandomDensity { dim_a, dim_b, rank, seed } => {
                BipartiteState::new(*dim_a, *dim_b, random_state(dim_a * dim_b, *rank, *seed)?)
            }
            StateSpec::RandomPure { dim_a, dim_b, seed } => {
                BipartiteState::from_pure(*dim_a, *dim_b, &random_pure(dim_a * dim_b, *seed)?)
            }
        }
    }
}

/// |0> in dimension `d` as a density matrix.
pub fn ground(d: usize) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(0, 0)] = C64::new(1.0, 0.0);
    DensityMatrix::from_trusted(m)
}
