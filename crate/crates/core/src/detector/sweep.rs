use rayon::prelude::*;
use serde::Serialize;

use super::xstate::{
    assemble_rho, compute_elements, corr_coefficient, d3_closed_form, xstate_concurrence, DetectorParams,
    XStateElements,
};
use crate::error::{Error, Result};

/// Smallest admissible L/σ; the coherence carries a σ/L factor.
pub const MIN_L_OVER_SIGMA: f64 = 1e-3;

/// Rectangular grid over (Ωσ, L/σ) at fixed coupling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub omega_sigma: Vec<f64>,
    pub l_over_sigma: Vec<f64>,
    pub eps0: f64,
}

impl SweepGrid {
    pub fn new(omega_sigma: Vec<f64>, l_over_sigma: Vec<f64>, eps0: f64) -> Result<Self> {
        let g = Self { omega_sigma, l_over_sigma, eps0 };
        g.validate()?;
        Ok(g)
    }

    /// Evenly spaced axes, endpoints included.
    pub fn linspace(
        omega_sigma: (f64, f64, usize),
        l_over_sigma: (f64, f64, usize),
        eps0: f64,
    ) -> Result<Self> {
        Self::new(linspace(omega_sigma)?, linspace(l_over_sigma)?, eps0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega_sigma.is_empty() || self.l_over_sigma.is_empty() {
            return Err(Error::InvalidParameter("empty sweep axis".into()));
        }
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return Err(Error::InvalidParameter(format!("eps0 = {} must be positive", self.eps0)));
        }
        if let Some(v) = self.omega_sigma.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(format!("omega_sigma = {v} must be positive")));
        }
        if let Some(v) = self.l_over_sigma.iter().find(|v| !(**v >= MIN_L_OVER_SIGMA && v.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "l_over_sigma = {v} below the minimum {MIN_L_OVER_SIGMA}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.omega_sigma.len() * self.l_over_sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in Ωσ-major order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.omega_sigma.iter().flat_map(|&os| self.l_over_sigma.iter().map(move |&ls| (os, ls))).collect()
    }
}

fn linspace((lo, hi, n): (f64, f64, usize)) -> Result<Vec<f64>> {
    if n == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::InvalidParameter(format!("bad range [{lo}, {hi}] with {n} steps")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowFlag {
    Ok,
    Clipped,
    Invalid,
}

impl RowFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowFlag::Ok => "ok",
            RowFlag::Clipped => "clipped",
            RowFlag::Invalid => "invalid",
        }
    }
}

/// One grid point. Numeric fields of invalid rows are zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub omega_sigma: f64,
    pub l_over_sigma: f64,
    pub a_prob: f64,
    pub abs_x: f64,
    pub c_corr: f64,
    pub e_joint: f64,
    pub concurrence: f64,
    pub d3_over_eps0_sq: f64,
    pub corr_coeff: f64,
    pub flags: RowFlag,
}

impl SweepRow {
    fn invalid(omega_sigma: f64, l_over_sigma: f64) -> Self {
        Self {
            omega_sigma,
            l_over_sigma,
            a_prob: 0.0,
            abs_x: 0.0,
            c_corr: 0.0,
            e_joint: 0.0,
            concurrence: 0.0,
            d3_over_eps0_sq: 0.0,
            corr_coeff: 0.0,
            flags: RowFlag::Invalid,
        }
    }
}

/// Evaluate a single grid point.
pub fn evaluate_point(eps0: f64, omega_sigma: f64, l_over_sigma: f64) -> Result<(XStateElements, SweepRow)> {
    let p = DetectorParams::dimensionless(eps0, omega_sigma, l_over_sigma)?;
    let e = compute_elements(&p)?;
    let rho = assemble_rho(&e, p.slack())?;
    let d3 = d3_closed_form(&e)?;
    let row = SweepRow {
        omega_sigma,
        l_over_sigma,
        a_prob: e.a_prob,
        abs_x: e.x_coh.norm(),
        c_corr: e.c_corr.re,
        e_joint: e.e_joint,
        concurrence: xstate_concurrence(&e),
        d3_over_eps0_sq: d3 / (eps0 * eps0),
        corr_coeff: corr_coefficient(&e)?,
        flags: if rho.clipped { RowFlag::Clipped } else { RowFlag::Ok },
    };
    Ok((e, row))
}

/// Evaluate every grid point, in parallel, returning rows in Ωσ-major order.
/// A failing point yields an `invalid` row instead of an error.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    let rows = grid
        .points()
        .into_par_iter()
        .map(|(os, ls)| match evaluate_point(grid.eps0, os, ls) {
            Ok((_, row)) => row,
            Err(err) => {
                log::warn!("point (omega_sigma = {os}, l_over_sigma = {ls}) failed: {err}");
                SweepRow::invalid(os, ls)
            }
        })
        .collect();
    Ok(rows)
}

/// Points of the |X| = A curve: for every Ωσ column, linear interpolation
/// of |X| - A in L/σ between neighbours where it changes sign.
pub fn entanglement_boundary(grid: &SweepGrid, rows: &[SweepRow]) -> Vec<(f64, f64)> {
    let m = grid.l_over_sigma.len();
    let mut out = Vec::new();
    for (i, &os) in grid.omega_sigma.iter().enumerate() {
        let column = &rows[i * m..(i + 1) * m];
        for pair in column.windows(2) {
            let (r0, r1) = (&pair[0], &pair[1]);
            if r0.flags == RowFlag::Invalid || r1.flags == RowFlag::Invalid {
                continue;
            }
            let g0 = r0.abs_x - r0.a_prob;
            let g1 = r1.abs_x - r1.a_prob;
            if (g0 > 0.0) != (g1 > 0.0) {
                let t = g0 / (g0 - g1);
                out.push((os, r0.l_over_sigma + t * (r1.l_over_sigma - r0.l_over_sigma)));
            }
        }
    }
    out
}

/// Bisection for |X| = A in L/σ on a bracketing interval at fixed Ωσ.
pub fn refine_boundary(eps0: f64, omega_sigma: f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let gap = |ls: f64| -> Result<f64> {
        let e = compute_elements(&DetectorParams::dimensionless(eps0, omega_sigma, ls)?)?;
        Ok(e.x_coh.norm() - e.a_prob)
    };
    let mut g_lo = gap(lo)?;
    let g_hi = gap(hi)?;
    if (g_lo > 0.0) == (g_hi > 0.0) {
        return Err(Error::InvalidParameter(format!("[{lo}, {hi}] does not bracket |X| = A")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if (g > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
