mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{close, d3_by_entropies};
use qcorr::density::{BipartiteState, DensityMatrix, Subsystem};
use qcorr::eigen::eig_hermitian;
use qcorr::matrix::ComplexMatrix;
use qcorr::measures::{
    concurrence_wootters, dephase_local, discord_d3, discord_projective_opt, entanglement_entropy, fidelity,
    local_eigenbasis, mutual_information, ppt_check, vn_entropy,
};
use qcorr::states::{
    pseudo_pure, random_channel, random_isometry_with, random_pure, random_state, random_unitary_with,
    singlet, tile_basis, werner, Channel,
};

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

fn bipartite(da: usize, db: usize, seed: u64) -> BipartiteState {
    let d = da * db;
    let rank = 1 + (seed as usize % d);
    BipartiteState::new(da, db, random_state(d, rank, seed).unwrap()).unwrap()
}

fn conjugate(u: &ComplexMatrix, rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(&(u * rho.matrix()) * &u.adjoint()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eigen_reconstruction(d in 1usize..=9, s1 in any::<u64>(), s2 in any::<u64>()) {
        let h = random_state(d, d, s1).unwrap().matrix() - random_state(d, 2.min(d), s2).unwrap().matrix();
        let spec = eig_hermitian(&h).unwrap();
        prop_assert!(spec.reconstruct().max_abs_diff(&h) <= 1e-12);
        let v = &spec.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(d)) <= 1e-12);
        prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn partial_trace_of_product((da, db) in (1usize..=4, 1usize..=4), s in any::<u64>()) {
        let a = random_state(da, da, s).unwrap();
        let b = random_state(db, db, s ^ 0x5555).unwrap();
        let rho = BipartiteState::product(&a, &b);
        prop_assert!(rho.partial_trace(Subsystem::A).matrix().max_abs_diff(a.matrix()) <= 1e-12);
        prop_assert!(rho.partial_trace(Subsystem::B).matrix().max_abs_diff(b.matrix()) <= 1e-12);
        prop_assert!((rho.partial_trace(Subsystem::A).matrix().trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution((da, db) in dims(), s in any::<u64>()) {
        let rho = bipartite(da, db, s);
        let pt = rho.partial_transpose(Subsystem::B);
        let back = BipartiteState::from_matrix(da, db, pt.clone());
        // the partial transpose of an entangled state is not a state, so go
        // through the index map directly
        let twice = match back {
            Ok(st) => st.partial_transpose(Subsystem::B),
            Err(_) => ComplexMatrix::from_fn(da * db, da * db, |r, c| {
                let (i, j, k, l) = (r / db, r % db, c / db, c % db);
                pt[(i * db + l, k * db + j)]
            }),
        };
        prop_assert_eq!(twice.max_abs_diff(rho.matrix()), 0.0);
    }

    #[test]
    fn entropy_axioms(d in 1usize..=6, s in any::<u64>()) {
        let rho = random_state(d, 1 + s as usize % d, s).unwrap();
        let sigma = random_state(3, 2, s ^ 0xabc).unwrap();
        let u = random_unitary_with(&mut ChaCha8Rng::seed_from_u64(s), d).unwrap();
        let s_rho = vn_entropy(&rho);
        prop_assert!(s_rho >= 0.0 && s_rho <= (d as f64).log2() + 1e-12);
        prop_assert!(close(vn_entropy(&conjugate(&u, &rho)), s_rho, 1e-9));
        let prod = BipartiteState::product(&rho, &sigma);
        prop_assert!(close(vn_entropy(prod.density()), s_rho + vn_entropy(&sigma), 1e-9));
    }

    #[test]
    fn subadditivity((da, db) in dims(), s in any::<u64>()) {
        let rho = bipartite(da, db, s);
        prop_assert!(mutual_information(&rho) >= -1e-12);
    }

    #[test]
    fn fidelity_product_and_unitary(d in 1usize..=3, s in any::<u64>()) {
        let r1 = random_state(d, 2.min(d), s).unwrap();
        let r2 = random_state(d, d, s ^ 1).unwrap();
        let s1 = random_state(2, 1, s ^ 2).unwrap();
        let s2 = random_state(2, 2, s ^ 3).unwrap();
        let f = fidelity(&r1, &r2).unwrap();
        let joint = fidelity(
            BipartiteState::product(&r1, &s1).density(),
            BipartiteState::product(&r2, &s2).density(),
        ).unwrap();
        prop_assert!(close(joint, f * fidelity(&s1, &s2).unwrap(), 1e-8));
        prop_assert!(close(fidelity(&r2, &r1).unwrap(), f, 1e-8));
        let u = random_unitary_with(&mut ChaCha8Rng::seed_from_u64(s), d).unwrap();
        prop_assert!(close(fidelity(&conjugate(&u, &r1), &conjugate(&u, &r2)).unwrap(), f, 1e-8));
    }

    #[test]
    fn fidelity_monotone(d in 2usize..=4, env in 1usize..=4, s in any::<u64>()) {
        let a = random_state(d, 1 + s as usize % d, s).unwrap();
        let b = random_state(d, d, s ^ 7).unwrap();
        let ch = random_channel(d, env, s ^ 11).unwrap();
        let before = fidelity(&a, &b).unwrap();
        let after = fidelity(&ch.apply(&a).unwrap(), &ch.apply(&b).unwrap()).unwrap();
        prop_assert!(after >= before - 1e-8);
    }

    #[test]
    fn pointer_branch_fidelity(d in 2usize..=3, k in 2usize..=3, s in any::<u64>()) {
        // measure with Kraus blocks M_k and write k into an orthogonal pointer
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let v = random_isometry_with(&mut rng, d * k, d).unwrap();
        let blocks: Vec<ComplexMatrix> =
            (0..k).map(|j| ComplexMatrix::from_fn(d, d, |r, c| v[(j * d + r, c)])).collect();
        let kraus = blocks
            .iter()
            .enumerate()
            .map(|(j, m)| ComplexMatrix::from_fn(d * k, d, |r, c| if r % k == j { m[(r / k, c)] } else { qcorr::C64::new(0.0, 0.0) }))
            .collect();
        let ch = Channel::from_kraus(kraus).unwrap();
        let p1 = random_pure(d, s ^ 1).unwrap();
        let p2 = random_pure(d, s ^ 2).unwrap();
        let f = fidelity(
            &ch.apply(&DensityMatrix::from_pure(&p1)).unwrap(),
            &ch.apply(&DensityMatrix::from_pure(&p2)).unwrap(),
        ).unwrap();
        let expected: f64 = blocks
            .iter()
            .map(|m| {
                let a1 = m.apply(p1.amplitudes()).unwrap();
                let a2 = m.apply(p2.amplitudes()).unwrap();
                qcorr::matrix::inner(&a1, &a2).norm()
            })
            .sum();
        prop_assert!(close(f, expected, 1e-8));
    }

    #[test]
    fn pure_state_mutual_information((da, db) in dims(), s in any::<u64>()) {
        let psi = random_pure(da * db, s).unwrap();
        let i = mutual_information(&BipartiteState::from_pure(da, db, &psi).unwrap());
        prop_assert!(close(i, 2.0 * entanglement_entropy(&psi, da, db).unwrap(), 1e-9));
    }

    #[test]
    fn d3_two_formulas((da, db) in dims(), s in any::<u64>()) {
        let rho = bipartite(da, db, s);
        let d3 = discord_d3(&rho).value;
        prop_assert!(close(d3, d3_by_entropies(&rho), 1e-9));
        let (basis, _) = local_eigenbasis(&rho);
        let dephased = dephase_local(&rho, &basis).unwrap();
        prop_assert!(mutual_information(&dephased) <= mutual_information(&rho) + 1e-9);
        prop_assert!(d3 >= -1e-12);
    }

    #[test]
    fn optimized_discord_below_d3(s in any::<u64>()) {
        let rho = bipartite(2, 2, s);
        prop_assert!(discord_projective_opt(&rho).unwrap() <= discord_d3(&rho).value + 1e-6);
    }

    #[test]
    fn two_qubit_entanglement_iff_npt(s in any::<u64>(), p in 0.0f64..1.0) {
        let mixed = random_state(4, 4, s).unwrap();
        let pure = DensityMatrix::from_pure(&random_pure(4, s ^ 9).unwrap());
        let rho = BipartiteState::new(2, 2, DensityMatrix::mixture(&[p, 1.0 - p], &[&pure, &mixed]).unwrap()).unwrap();
        let c = concurrence_wootters(&rho).unwrap();
        let ppt = ppt_check(&rho);
        // skip the measure-zero shell where both quantities round to zero
        prop_assume!(c > 1e-6 || c == 0.0 && ppt.min_eigenvalue > 1e-12);
        prop_assert_eq!(c > 1e-8, !ppt.is_ppt);
    }

    #[test]
    fn factories_are_valid(p in 0.0f64..=1.0, (da, db) in dims(), s in any::<u64>()) {
        let w = werner(p).unwrap();
        prop_assert!(w.matrix().max_abs_diff(pseudo_pure(&singlet(), p, 2).unwrap().matrix()) <= 1e-15);
        prop_assert!(DensityMatrix::new(w.matrix().clone()).is_ok());
        let rho = bipartite(da, db, s);
        prop_assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
        let out = random_channel(da * db, 2, s).unwrap().apply(rho.density()).unwrap();
        prop_assert!(DensityMatrix::new(out.into_matrix()).is_ok());
    }
}

#[test]
fn werner_threshold_sign() {
    assert_eq!(concurrence_wootters(&werner(1.0 / 3.0 - 1e-6).unwrap()).unwrap(), 0.0);
    assert!(concurrence_wootters(&werner(1.0 / 3.0 + 1e-6).unwrap()).unwrap() > 1e-8);
}

#[test]
fn tiles_are_orthonormal() {
    let tb = tile_basis();
    for (i, u) in tb.tiles.iter().enumerate() {
        for (j, v) in tb.tiles.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            assert!(close(u.inner(v).norm(), target, 1e-12));
        }
    }
}
