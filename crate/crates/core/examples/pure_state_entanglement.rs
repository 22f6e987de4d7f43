// Schmidt decomposition of random pure states; I(A:B) = 2 E(ψ).
use qcorr::density::BipartiteState;
use qcorr::measures::{entanglement_entropy, mutual_information, schmidt_decompose};
use qcorr::states::random_pure;

fn main() {
    for (seed, (da, db)) in [(2, 2), (2, 3), (3, 3), (3, 2)].into_iter().enumerate() {
        let psi = random_pure(da * db, seed as u64).unwrap();
        let sd = schmidt_decompose(&psi, da, db).unwrap();
        let e = entanglement_entropy(&psi, da, db).unwrap();
        let i = mutual_information(&BipartiteState::from_pure(da, db, &psi).unwrap());
        println!("{da}x{db}: coefficients {:?}", sd.coefficients);
        println!("      E = {e:.12}, I = {i:.12}, |I - 2E| = {:e}", (i - 2.0 * e).abs());
    }
}
