// Fidelity never decreases under a CPTP map.
use qcorr::measures::fidelity;
use qcorr::states::{random_channel, random_state};

fn main() {
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..20u64 {
        let a = random_state(3, 2, 2 * seed).unwrap();
        let b = random_state(3, 3, 2 * seed + 1).unwrap();
        let ch = random_channel(3, 2, 100 + seed).unwrap();
        let before = fidelity(&a, &b).unwrap();
        let after = fidelity(&ch.apply(&a).unwrap(), &ch.apply(&b).unwrap()).unwrap();
        worst = worst.max(before - after);
        if seed < 5 {
            println!("seed {seed}: F = {before:.6} -> {after:.6}");
        }
    }
    println!("largest decrease over 20 channels: {worst:e}");
}
