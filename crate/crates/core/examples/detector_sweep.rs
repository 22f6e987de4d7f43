// Sweep over (Ωσ, L/σ), locate the |X| = A curve and write CSV + SVG to the
// system temp directory.
use qcorr::cli::files::write_sweep_csv;
use qcorr::cli::svg::render_heatmap;
use qcorr::detector::{entanglement_boundary, refine_boundary, sweep, SweepGrid};

fn main() {
    let grid = SweepGrid::linspace((0.25, 4.0, 20), (0.25, 8.0, 20), 1e-2).unwrap();
    let rows = sweep(&grid).unwrap();
    let separable_with_discord =
        rows.iter().filter(|r| r.concurrence == 0.0 && r.d3_over_eps0_sq > 0.0).count();
    println!("{} points, {separable_with_discord} with zero concurrence and positive D3", rows.len());

    let step = grid.l_over_sigma[1] - grid.l_over_sigma[0];
    for (os, l) in entanglement_boundary(&grid, &rows).into_iter().take(6) {
        let exact = refine_boundary(grid.eps0, os, l - step, l + step, 1e-10).unwrap_or(f64::NAN);
        println!("|X| = A at Ωσ = {os:.4}: interpolated L/σ = {l:.4}, bisection {exact:.4}");
    }

    let dir = std::env::temp_dir();
    std::fs::write(dir.join("qcorr_sweep.csv"), write_sweep_csv(&rows)).unwrap();
    std::fs::write(dir.join("qcorr_sweep.svg"), render_heatmap(&grid, &rows)).unwrap();
    println!("wrote {}", dir.join("qcorr_sweep.{csv,svg}").display());
}
