//! Seeded self-checks of the library's invariants, grouped in suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::density::{validate_density, BipartiteState, Subsystem};
use crate::detector::{
    assemble_rho, compute_elements, d3_closed_form, erf_complex, xstate_concurrence,
    xstate_entanglement_flags, DetectorParams,
};
use crate::eigen::{eig_hermitian, psd_sqrt};
use crate::matrix::{tensor_product, ComplexMatrix, C64};
use crate::measures::{
    concurrence_wootters, dephase_local, discord_d3, discord_projective_opt, entanglement_entropy, fidelity,
    local_eigenbasis, mutual_information, ppt_check, vn_entropy,
};
use crate::states::{
    bound_entangled_tiles, random_channel_with, random_pure_with, random_state_with, tile_basis, werner,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Measures,
    Detector,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Outcome of one invariant: the worst deviation seen and its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{tag} {}/{} error={:.3e} tol={:.3e}\n",
                c.suite, c.name, c.error, c.tolerance
            ));
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed (seed {})\n",
            self.passed(),
            self.failed(),
            self.seed
        ));
        out
    }
}

struct Runner {
    scale: f64,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, suite: &'static str, name: &'static str, tolerance: f64, f: impl FnOnce() -> f64) {
        let error = f();
        let passed = error.is_finite() && error <= tolerance * self.scale;
        self.checks.push(CheckResult { suite, name, error, tolerance, passed });
    }
}

/// Run a suite. `tolerance_scale` multiplies every tolerance (1 in normal use).
pub fn run(suite: Suite, seed: u64, tolerance_scale: f64) -> Report {
    let mut r = Runner { scale: tolerance_scale, checks: Vec::new() };
    if suite.includes(Suite::Core) {
        core(&mut r, seed);
    }
    if suite.includes(Suite::Measures) {
        measures(&mut r, seed);
    }
    if suite.includes(Suite::Detector) {
        detector(&mut r, seed);
    }
    Report { seed, checks: r.checks }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g =
        ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    g.hermitian_part()
}

fn random_bipartite(rng: &mut ChaCha8Rng, da: usize, db: usize) -> BipartiteState {
    let rank = rng.random_range(1..=da * db);
    BipartiteState::new(da, db, random_state_with(rng, da * db, rank).expect("valid dims")).expect("dims")
}

fn core(r: &mut Runner, seed: u64) {
    let s = "core";
    r.check(s, "tensor_product_kronecker", 0.0, || {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let k = tensor_product(&a, &b);
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.0, 1.0, 0.0, 2.0],
            &[1.0, 0.0, 2.0, 0.0],
            &[0.0, 3.0, 0.0, 4.0],
            &[3.0, 0.0, 4.0, 0.0],
        ])
        .unwrap();
        k.max_abs_diff(&expected)
    });
    let mut rng = rng_for(seed, 1);
    r.check(s, "eigen_reconstruction", 1e-12, || {
        (0..50)
            .map(|_| {
                let n = rng.random_range(1..=9);
                let h = random_hermitian(&mut rng, n);
                eig_hermitian(&h).unwrap().reconstruct().max_abs_diff(&h)
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 2);
    r.check(s, "psd_sqrt_squares_back", 1e-12, || {
        (0..30)
            .map(|_| {
                let rho = random_state_with(&mut rng, 4, 4).unwrap();
                let q = psd_sqrt(rho.matrix()).unwrap();
                (&q * &q).max_abs_diff(rho.matrix())
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 3);
    r.check(s, "partial_trace_of_product", 1e-14, || {
        (0..30)
            .map(|_| {
                let a = random_state_with(&mut rng, 2, 2).unwrap();
                let b = random_state_with(&mut rng, 3, 2).unwrap();
                let ab = BipartiteState::product(&a, &b);
                ab.partial_trace(Subsystem::A)
                    .matrix()
                    .max_abs_diff(a.matrix())
                    .max(ab.partial_trace(Subsystem::B).matrix().max_abs_diff(b.matrix()))
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 4);
    r.check(s, "random_states_valid", 0.0, || {
        let bad = (0..30)
            .filter(|_| {
                let n = rng.random_range(2..=9);
                let rank = rng.random_range(1..=n);
                let rho = random_state_with(&mut rng, n, rank).unwrap();
                !validate_density(rho.matrix(), 1e-10).passed
            })
            .count();
        bad as f64
    });
    let mut rng = rng_for(seed, 5);
    r.check(s, "partial_transpose_index_map", 0.0, || {
        (0..20)
            .map(|_| {
                let (da, db) = (2, 3);
                let rho = random_bipartite(&mut rng, da, db);
                let pt = rho.partial_transpose(Subsystem::B);
                let mut worst: f64 = 0.0;
                for (i, j, k, l) in index_quads(da, db) {
                    let lhs = pt[(i * db + j, k * db + l)];
                    worst = worst.max((lhs - rho.entry(i, l, k, j)).norm());
                }
                worst
            })
            .fold(0.0, f64::max)
    });
}

fn index_quads(da: usize, db: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..da).flat_map(move |i| {
        (0..db).flat_map(move |j| (0..da).flat_map(move |k| (0..db).map(move |l| (i, j, k, l))))
    })
}

fn measures(r: &mut Runner, seed: u64) {
    let s = "measures";
    let mut rng = rng_for(seed, 11);
    r.check(s, "entropy_bounds", 1e-12, || {
        (0..40)
            .map(|_| {
                let n = rng.random_range(2..=8);
                let v = vn_entropy(&random_state_with(&mut rng, n, n).unwrap());
                (-v).max(v - (n as f64).log2()).max(0.0)
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 12);
    r.check(s, "pure_state_mi_twice_entanglement", 1e-9, || {
        (0..40)
            .map(|_| {
                let (da, db) = (rng.random_range(2..=3), rng.random_range(2..=3));
                let psi = random_pure_with(&mut rng, da * db).unwrap();
                let rho = BipartiteState::from_pure(da, db, &psi).unwrap();
                (mutual_information(&rho) - 2.0 * entanglement_entropy(&psi, da, db).unwrap()).abs()
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 13);
    r.check(s, "fidelity_monotone_under_channels", 1e-8, || {
        (0..30)
            .map(|_| {
                let d = rng.random_range(2..=4);
                let (ra, rb, env) =
                    (rng.random_range(1..=d), rng.random_range(1..=d), rng.random_range(1..=3));
                let a = random_state_with(&mut rng, d, ra).unwrap();
                let b = random_state_with(&mut rng, d, rb).unwrap();
                let ch = random_channel_with(&mut rng, d, env).unwrap();
                let before = fidelity(&a, &b).unwrap();
                let after = fidelity(&ch.apply(&a).unwrap(), &ch.apply(&b).unwrap()).unwrap();
                (before - after).max(0.0)
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 14);
    r.check(s, "d3_equals_entropy_difference", 1e-9, || {
        (0..30)
            .map(|_| {
                let db = rng.random_range(2..=3);
                let rho = random_bipartite(&mut rng, 2, db);
                let (basis, _) = local_eigenbasis(&rho);
                let star = dephase_local(&rho, &basis).unwrap();
                let by_entropy = vn_entropy(star.density()) - vn_entropy(rho.density());
                (discord_d3(&rho).value - by_entropy).abs()
            })
            .fold(0.0, f64::max)
    });
    let mut rng = rng_for(seed, 15);
    r.check(s, "optimized_discord_below_d3", 1e-6, || {
        (0..15)
            .map(|_| {
                let rho = random_bipartite(&mut rng, 2, 2);
                (discord_projective_opt(&rho).unwrap() - discord_d3(&rho).value).max(0.0)
            })
            .fold(0.0, f64::max)
    });
    r.check(s, "werner_entanglement_threshold", 1e-8, || {
        let below = concurrence_wootters(&werner(1.0 / 3.0 - 1e-6).unwrap()).unwrap();
        let above = concurrence_wootters(&werner(1.0 / 3.0 + 1e-6).unwrap()).unwrap();
        // expected 0 and 1.5e-6
        below.max((above - 1.5e-6).abs())
    });
    r.check(s, "tile_gram_identity", 1e-12, || {
        let tb = tile_basis();
        let mut worst: f64 = 0.0;
        for (i, u) in tb.tiles.iter().enumerate() {
            for (j, v) in tb.tiles.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((u.inner(v) - C64::new(e, 0.0)).norm());
            }
        }
        worst
    });
    r.check(s, "bound_entangled_is_ppt", 1e-10, || {
        (-ppt_check(&bound_entangled_tiles()).min_eigenvalue).max(0.0)
    });
}

fn detector(r: &mut Runner, seed: u64) {
    let s = "detector";
    let mut rng = rng_for(seed, 21);
    r.check(s, "erf_symmetries", 1e-12, || {
        (0..300)
            .map(|_| {
                let z = C64::from_polar(
                    8.0 * rng.random::<f64>().sqrt(),
                    std::f64::consts::TAU * rng.random::<f64>(),
                );
                let e = erf_complex(z).unwrap();
                let odd = (erf_complex(-z).unwrap() + e).norm() / e.norm();
                let conj = (erf_complex(z.conj()).unwrap() - e.conj()).norm() / e.norm();
                odd.max(conj)
            })
            .fold(0.0, f64::max)
    });
    r.check(s, "excitation_probability_spot", 1e-12, || {
        let e = compute_elements(&DetectorParams::dimensionless(1.0, 1.0, 1.0).unwrap()).unwrap();
        (e.a_prob / 7.088_272_232_636_416e-3 - 1.0).abs()
    });

    let mut rng = rng_for(seed, 22);
    let points: Vec<(f64, f64)> =
        (0..12).map(|_| (rng.random_range(0.25..4.0), rng.random_range(0.25..8.0))).collect();
    let eps0: f64 = 1e-2;
    let slack = 10.0 * eps0.powi(4);
    let elements: Vec<_> = points
        .iter()
        .map(|&(os, ls)| compute_elements(&DetectorParams::dimensionless(eps0, os, ls).unwrap()).unwrap())
        .collect();
    r.check(s, "d3_closed_form_vs_generic", slack, || {
        elements
            .iter()
            .map(|e| {
                let rho = assemble_rho(e, slack).unwrap();
                (d3_closed_form(e).unwrap() - discord_d3(&rho.state).value).abs()
            })
            .fold(0.0, f64::max)
    });
    r.check(s, "concurrence_vs_wootters", slack, || {
        elements
            .iter()
            .map(|e| {
                let rho = assemble_rho(e, slack).unwrap();
                (xstate_concurrence(e) - concurrence_wootters(&rho.state).unwrap()).abs()
            })
            .fold(0.0, f64::max)
    });
    r.check(s, "second_ppt_alternative_never_holds", 0.0, || {
        elements.iter().filter(|e| xstate_entanglement_flags(e, slack).1).count() as f64
    });
    r.check(s, "assembled_states_valid", 0.0, || {
        elements
            .iter()
            .filter(|e| match assemble_rho(e, slack) {
                Ok(a) => !validate_density(a.state.matrix(), 1e-10).passed,
                Err(_) => true,
            })
            .count() as f64
    });
    r.check(s, "far_detectors_factorize", 1e-10 + 4.0 * eps0.powi(4), || {
        let e = compute_elements(&DetectorParams::dimensionless(eps0, 1.0, 64.0).unwrap()).unwrap();
        mutual_information(&assemble_rho(&e, slack).unwrap().state)
    });
}
