// Matrix elements of the two-detector state at one point, and the checks
// of the closed forms against the generic measures.
use qcorr::detector::{
    assemble_rho, compute_elements, corr_coefficient, corr_leading, d3_closed_form, xstate_concurrence,
    xstate_entanglement_flags, DetectorParams,
};
use qcorr::measures::{concurrence_wootters, discord_d3, mutual_information};

fn main() {
    let eps0 = 1e-2;
    for (os, ls) in [(1.0, 1.0), (0.5, 2.0), (2.0, 6.0), (1.0, 64.0)] {
        let p = DetectorParams::dimensionless(eps0, os, ls).unwrap();
        let e = compute_elements(&p).unwrap();
        let rho = assemble_rho(&e, p.slack()).unwrap();
        println!("Ωσ = {os}, L/σ = {ls}");
        println!(
            "  A/ε² = {:.6e}  |X|/ε² = {:.6e}  C/ε² = {:.6e}",
            e.a_prob / 1e-4,
            e.x_coh.norm() / 1e-4,
            e.c_corr.re / 1e-4
        );
        println!(
            "  concurrence {:.3e} (Wootters {:.3e}), flags {:?}",
            xstate_concurrence(&e),
            concurrence_wootters(&rho.state).unwrap(),
            xstate_entanglement_flags(&e, p.slack())
        );
        println!(
            "  D3 closed form {:.6e}, generic {:.6e}; corr {:.6e} (leading {:.6e}); I = {:.3e}",
            d3_closed_form(&e).unwrap(),
            discord_d3(&rho.state).value,
            corr_coefficient(&e).unwrap(),
            corr_leading(&e),
            mutual_information(&rho.state)
        );
    }
}
