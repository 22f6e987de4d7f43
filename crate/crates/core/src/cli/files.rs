//! State files (JSON) and sweep tables (CSV, JSON).

use std::fmt::Write as _;

use serde::Deserialize;

use crate::density::{BipartiteState, DensityMatrix};
use crate::detector::SweepRow;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Density tolerance applied when reading a state file.
pub const INGEST_TOL: f64 = 1e-8;

pub const SWEEP_HEADER: [&str; 10] = [
    "omega_sigma",
    "l_over_sigma",
    "a_prob",
    "abs_x",
    "c_corr",
    "e_joint",
    "concurrence",
    "d3_over_eps0_sq",
    "corr_coeff",
    "flags",
];

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: [usize; 2],
    matrix: Vec<Vec<[f64; 2]>>,
}

pub fn write_state(rho: &BipartiteState) -> String {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"dims\": [{da}, {db}],");
    let _ = writeln!(out, "  \"matrix\": [");
    for i in 0..m.rows() {
        let cells: Vec<String> =
            m.row(i).iter().map(|z| format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))).collect();
        let sep = if i + 1 == m.rows() { "" } else { "," };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

pub fn read_state(text: &str) -> Result<BipartiteState> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidDensity(format!("state file: {e}")))?;
    let [da, db] = file.dims;
    if da == 0 || db == 0 {
        return Err(Error::InvalidDensity("dims must be positive".into()));
    }
    let n = da * db;
    if file.matrix.len() != n || file.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidDensity(format!("matrix is not {n}x{n} for dims [{da}, {db}]")));
    }
    let data = file.matrix.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    let m = ComplexMatrix::new(n, n, data)?;
    BipartiteState::new(da, db, DensityMatrix::with_tolerance(m, INGEST_TOL)?)
}

/// CSV with LF line endings and the frozen header.
pub fn write_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = SWEEP_HEADER.join(",");
    out.push('\n');
    for r in rows {
        let nums = [
            r.omega_sigma,
            r.l_over_sigma,
            r.a_prob,
            r.abs_x,
            r.c_corr,
            r.e_joint,
            r.concurrence,
            r.d3_over_eps0_sq,
            r.corr_coeff,
        ];
        for v in nums {
            out.push_str(&fmt_f64(v));
            out.push(',');
        }
        out.push_str(r.flags.as_str());
        out.push('\n');
    }
    out
}

pub fn write_sweep_json(rows: &[SweepRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{sweep, SweepGrid};
    use crate::states::{bound_entangled_tiles, random_state, werner};

    #[test]
    fn state_round_trip_is_byte_exact() {
        let random = BipartiteState::new(2, 3, random_state(6, 3, 4).unwrap()).unwrap();
        for rho in [werner(0.5).unwrap(), bound_entangled_tiles(), random] {
            let text = write_state(&rho);
            let back = read_state(&text).unwrap();
            assert_eq!(back.matrix(), rho.matrix());
            assert_eq!(write_state(&back), text);
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(0.25), "2.5000000000000000e-1");
        assert_eq!(fmt_f64(-1.0), "-1.0000000000000000e0");
        let x = 0.1 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(read_state("not json").is_err());
        assert!(read_state(r#"{"dims":[2,2],"matrix":[[[1,0]]]}"#).is_err());
        let unnormalized = r#"{"dims":[1,2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        assert!(read_state(unnormalized).is_err());
        let ok = r#"{"dims":[1,2],"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        assert_eq!(read_state(ok).unwrap().dims(), (1, 2));
    }

    #[test]
    fn csv_layout() {
        let grid = SweepGrid::new(vec![1.0], vec![1.0, 2.0], 1e-2).unwrap();
        let csv = write_sweep_csv(&sweep(&grid).unwrap());
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(
            lines[0],
            "omega_sigma,l_over_sigma,a_prob,abs_x,c_corr,e_joint,concurrence,d3_over_eps0_sq,corr_coeff,flags"
        );
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "");
        assert!(!csv.contains('\r'));
        assert!(lines[1].ends_with(",ok"));
        assert_eq!(lines[1].split(',').count(), 10);
    }
}
