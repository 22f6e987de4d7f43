// D3 against the measurement-optimized discord, the CQ test, and the
// ensemble witness on a pair of Bell states.
use qcorr::density::{BipartiteState, DensityMatrix, PureVector};
use qcorr::measures::{
    discord_d3, discord_projective_opt, ensemble_classicality_witness, is_classical_quantum,
};
use qcorr::states::{bell, cq_state, random_state, werner, Bell};

fn main() {
    for seed in 0..5 {
        let rho = BipartiteState::new(2, 2, random_state(4, 3, seed).unwrap()).unwrap();
        let d3 = discord_d3(&rho);
        let opt = discord_projective_opt(&rho).unwrap();
        println!("random state {seed}: D3 = {:.6}, optimized = {opt:.6}", d3.value);
    }

    let tau0 = DensityMatrix::from_pure(&PureVector::from_real(&[1.0, 0.0]).unwrap());
    let tau1 = DensityMatrix::from_pure(&PureVector::from_real(&[0.6, 0.8]).unwrap());
    let basis = [PureVector::basis(2, 0), PureVector::basis(2, 1)];
    let cq = cq_state(&[0.7, 0.3], &basis, &[tau0, tau1]).unwrap();
    println!("CQ state: {:?}", is_classical_quantum(&cq, 1e-9).verdict);
    println!("its swap: {:?}", is_classical_quantum(&cq.swapped(), 1e-9).verdict);
    println!("Werner p = 0.5: {:?}", is_classical_quantum(&werner(0.5).unwrap(), 1e-9).verdict);

    let pair = [Bell::PsiMinus, Bell::PsiPlus].map(|b| BipartiteState::from_pure(2, 2, &bell(b)).unwrap());
    let w = ensemble_classicality_witness(&pair, 16, 1, 1e-9).unwrap();
    println!("ensemble {{Ψ-, Ψ+}}: {:?} via {:?} after {} mixtures", w.verdict, w.certificate, w.tried);
}
