use qcorr::detector::{
    assemble_rho, compute_elements, d3_closed_form, entanglement_boundary, refine_boundary, sweep,
    xstate_concurrence, xstate_entanglement_flags, DetectorParams, RowFlag, SweepGrid,
};
use qcorr::eigen::eig_hermitian;
use qcorr::measures::{concurrence_wootters, discord_d3, mutual_information};

fn grid_points() -> Vec<(f64, f64)> {
    SweepGrid::linspace((0.25, 4.0, 10), (0.25, 8.0, 10), 1.0).unwrap().points()
}

/// Largest |closed form - generic| over the 10x10 grid.
fn d3_discrepancy(eps0: f64) -> f64 {
    grid_points()
        .into_iter()
        .map(|(os, ls)| {
            let p = DetectorParams::dimensionless(eps0, os, ls).unwrap();
            let e = compute_elements(&p).unwrap();
            let rho = assemble_rho(&e, p.slack()).unwrap();
            (d3_closed_form(&e).unwrap() - discord_d3(&rho.state).value).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn d3_closed_form_within_slack_at_1e_2() {
    let eps0: f64 = 1e-2;
    let gap = d3_discrepancy(eps0);
    assert!(gap <= 10.0 * eps0.powi(4), "gap {gap:e}");
}

#[test]
fn d3_discrepancy_scales_like_eps0_to_the_fourth() {
    let ratio = d3_discrepancy(1e-2) / d3_discrepancy(1e-3);
    // pure ε⁴ would give 1e4; the ε⁴ log ε correction keeps it near 7e3
    assert!(ratio >= 50.0, "shrink {ratio}");
    assert!(ratio > 5e3 && ratio < 2e4, "shrink {ratio}");
}

#[test]
fn concurrence_agrees_with_wootters() {
    for eps0 in [1e-2_f64, 1e-3] {
        for (os, ls) in grid_points() {
            let p = DetectorParams::dimensionless(eps0, os, ls).unwrap();
            let e = compute_elements(&p).unwrap();
            let rho = assemble_rho(&e, p.slack()).unwrap();
            let w = concurrence_wootters(&rho.state).unwrap();
            assert!(
                (xstate_concurrence(&e) - w).abs() <= 10.0 * eps0.powi(4),
                "({os}, {ls}) {eps0}: {} vs {w}, clipped {}",
                xstate_concurrence(&e),
                rho.clipped
            );
        }
    }
}

#[test]
fn assembled_states_are_hermitian_psd() {
    for eps0 in [1e-1, 1e-2, 1e-3] {
        for (os, ls) in grid_points() {
            let p = DetectorParams::dimensionless(eps0, os, ls).unwrap();
            let e = compute_elements(&p).unwrap();
            let rho = assemble_rho(&e, p.slack()).unwrap();
            let m = rho.state.matrix();
            assert!(m.hermiticity_defect() <= 1e-15);
            assert!(eig_hermitian(m).unwrap().min_eigenvalue() >= -1e-15);
            assert!((m.trace().re - 1.0).abs() <= 1e-14);
        }
    }
}

#[test]
fn second_alternative_never_holds_and_d3_positive() {
    let grid = SweepGrid::linspace((0.1, 5.0, 20), (0.1, 12.0, 20), 1e-2).unwrap();
    for (os, ls) in grid.points() {
        let p = DetectorParams::dimensionless(grid.eps0, os, ls).unwrap();
        let e = compute_elements(&p).unwrap();
        assert!(!xstate_entanglement_flags(&e, p.slack()).1, "({os}, {ls})");
        if e.c_corr.norm() > 0.0 {
            assert!(d3_closed_form(&e).unwrap() > 0.0, "({os}, {ls})");
        }
    }
    let rows = sweep(&grid).unwrap();
    assert!(rows.iter().all(|r| r.flags != RowFlag::Invalid));
}

#[test]
fn far_apart_detectors_are_nearly_uncorrelated() {
    for eps0 in [1e-2_f64, 1e-3] {
        for os in [0.25, 1.0, 4.0] {
            let p = DetectorParams::dimensionless(eps0, os, 64.0).unwrap();
            let e = compute_elements(&p).unwrap();
            let rho = assemble_rho(&e, p.slack()).unwrap();
            assert!(mutual_information(&rho.state) <= 1e-10 + 4.0 * eps0.powi(4));
        }
    }
}

#[test]
fn boundary_bisection_brackets_the_curve() {
    let grid = SweepGrid::linspace((0.25, 4.0, 8), (0.25, 8.0, 16), 1e-2).unwrap();
    let rows = sweep(&grid).unwrap();
    let step = grid.l_over_sigma[1] - grid.l_over_sigma[0];
    let curve = entanglement_boundary(&grid, &rows);
    assert!(curve.len() >= 4);
    for (os, l) in curve {
        let exact = refine_boundary(grid.eps0, os, l - step, l + step, 1e-12).unwrap();
        assert!((exact - l).abs() < step);
        let at =
            |ls: f64| compute_elements(&DetectorParams::dimensionless(grid.eps0, os, ls).unwrap()).unwrap();
        let (below, above) = (at(exact - 1e-9), at(exact + 1e-9));
        assert!((below.x_coh.norm() > below.a_prob) != (above.x_coh.norm() > above.a_prob));
    }
}

#[test]
fn sweep_is_deterministic() {
    let grid = SweepGrid::linspace((0.25, 4.0, 7), (0.25, 8.0, 9), 1e-2).unwrap();
    assert_eq!(sweep(&grid).unwrap(), sweep(&grid).unwrap());
}
