// The complex error function on a few arguments, including the large-L/σ
// combination e^{-y²} erf(iy + s) that would overflow if formed directly.
use qcorr::detector::{erf_complex, erf_damped, erfcx};
use qcorr::C64;

fn main() {
    for z in [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, 3.0), C64::new(-4.0, 7.5)] {
        println!("erf({z}) = {:.15e}", erf_complex(z).unwrap());
    }
    println!("erf(13) -> {:?}", erf_complex(C64::new(13.0, 0.0)).err());
    println!("erfcx(1) = {:.15}", erfcx(1.0));
    for y in [5.0, 16.0, 32.0, 64.0] {
        println!("e^(-y²) erf(iy + 1), y = {y}: {:.6e}", erf_damped(C64::new(1.0, y)));
    }
}
