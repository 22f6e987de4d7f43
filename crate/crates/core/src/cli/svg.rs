//! Heatmap of d3/ε0² over the sweep grid with the |X| = A curve.

use std::fmt::Write as _;

use crate::detector::{entanglement_boundary, RowFlag, SweepGrid, SweepRow};

const CELL: f64 = 24.0;
const MARGIN: f64 = 60.0;

// viridis, five stops
const STOPS: [(f64, f64, f64); 5] =
    [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Fractional index of `v` along a sorted axis.
fn axis_position(axis: &[f64], v: f64) -> f64 {
    if axis.len() < 2 {
        return 0.0;
    }
    for (i, w) in axis.windows(2).enumerate() {
        if v <= w[1] {
            return i as f64 + (v - w[0]) / (w[1] - w[0]);
        }
    }
    (axis.len() - 1) as f64
}

pub fn render_heatmap(grid: &SweepGrid, rows: &[SweepRow]) -> String {
    let n = grid.omega_sigma.len();
    let m = grid.l_over_sigma.len();
    let width = 2.0 * MARGIN + CELL * n as f64;
    let height = 2.0 * MARGIN + CELL * m as f64;
    let valid = rows.iter().filter(|r| r.flags != RowFlag::Invalid).map(|r| r.d3_over_eps0_sq);
    let (lo, hi) = valid.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    // L/σ grows upwards
    for (i, _) in grid.omega_sigma.iter().enumerate() {
        for j in 0..m {
            let r = &rows[i * m + j];
            let x = MARGIN + CELL * i as f64;
            let y = MARGIN + CELL * (m - 1 - j) as f64;
            let fill = if r.flags == RowFlag::Invalid {
                "#888888".to_string()
            } else {
                color((r.d3_over_eps0_sq - lo) / span)
            };
            let _ = writeln!(s, r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>"#);
        }
    }
    let curve = entanglement_boundary(grid, rows);
    if !curve.is_empty() {
        let pts: Vec<String> = curve
            .iter()
            .map(|&(os, ls)| {
                let x = MARGIN + CELL * (axis_position(&grid.omega_sigma, os) + 0.5);
                let y = MARGIN + CELL * (m as f64 - 0.5 - axis_position(&grid.l_over_sigma, ls));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="red" stroke-width="2"/>"#,
            pts.join(" ")
        );
    }
    let bottom = height - MARGIN / 2.0;
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{bottom}" font-family="sans-serif" font-size="14" text-anchor="middle">Ωσ ∈ [{}, {}]</text>"#,
        width / 2.0,
        grid.omega_sigma[0],
        grid.omega_sigma[n - 1]
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 {} {})">L/σ ∈ [{}, {}]</text>"#,
        MARGIN / 2.0,
        height / 2.0,
        MARGIN / 2.0,
        height / 2.0,
        grid.l_over_sigma[0],
        grid.l_over_sigma[m - 1]
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">D3/ε0² from {lo:.3e} to {hi:.3e}</text>"#,
        width / 2.0,
        MARGIN / 2.0
    );
    s.push_str("</svg>\n");
    s
}
