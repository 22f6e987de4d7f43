// Werner states p|Ψ-><Ψ-| + (1-p)/4: entanglement switches on at p = 1/3,
// discord is present for every p > 0.
use qcorr::measures::{chsh_max, concurrence_wootters, discord_d3, mutual_information, ppt_check};
use qcorr::states::werner;

fn main() {
    println!("{:>6} {:>12} {:>12} {:>12} {:>10} {:>10}", "p", "concurrence", "negativity", "chsh", "D3", "I");
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let rho = werner(p).expect("p in [0, 1]");
        println!(
            "{p:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>10.6} {:>10.6}",
            concurrence_wootters(&rho).unwrap(),
            ppt_check(&rho).negativity,
            chsh_max(&rho).unwrap(),
            discord_d3(&rho).value,
            mutual_information(&rho),
        );
    }
    let below = concurrence_wootters(&werner(1.0 / 3.0 - 1e-6).unwrap()).unwrap();
    let above = concurrence_wootters(&werner(1.0 / 3.0 + 1e-6).unwrap()).unwrap();
    println!("concurrence at 1/3 -/+ 1e-6: {below:e} / {above:e}");
}
