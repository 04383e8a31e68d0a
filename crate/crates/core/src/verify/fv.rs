//! First-order Rusanov finite-volume scheme for the energy–velocity system,
//! used as an independent reference for exact wave fans.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::riemann::{sample_fan, WaveFan};
use crate::state::{char_speed, energy_flux, Family, TransState};

use super::quadrature::Neumaier;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FvGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_final: f64,
}

impl FvGrid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, cfl: f64, t_final: f64) -> Result<Self> {
        let grid = Self {
            x_min,
            x_max,
            n_cells,
            cfl,
            t_final,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cells < 16 {
            return Err(Error::Precondition(format!(
                "need at least 16 cells, got {}",
                self.n_cells
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.9) {
            return Err(Error::Precondition(format!(
                "CFL number must lie in (0, 0.9], got {}",
                self.cfl
            )));
        }
        if !(self.x_max > self.x_min) || !(self.t_final > 0.0) {
            return Err(Error::Precondition("empty domain or non-positive final time".into()));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn with_cells(&self, n_cells: usize) -> Self {
        Self { n_cells, ..*self }
    }

    fn cell(&self, i: usize) -> (f64, f64) {
        let dx = self.dx();
        (self.x_min + dx * i as f64, self.x_min + dx * (i + 1) as f64)
    }
}

/// Cell averages at the final time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvField {
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub q: Vec<f64>,
    pub steps: usize,
}

fn max_speed(u: f64, q: f64) -> f64 {
    char_speed(Family::One, u, q)
        .abs()
        .max(char_speed(Family::Two, u, q).abs())
}

/// Rusanov scheme on `u_t + q_x = 0`, `q_t + G_x = 0` with transmissive
/// boundaries; states are clamped onto `q >= u²/2` after every step.
pub fn fv_solve_trans(left: TransState, right: TransState, grid: &FvGrid) -> Result<FvField> {
    grid.validate()?;
    left.check_physical()?;
    right.check_physical()?;
    let n = grid.n_cells;
    let dx = grid.dx();
    let mut u = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = grid.cell(i);
        // exact average of the step at x = 0
        let wl = ((0.0f64).clamp(a, b) - a) / dx;
        u.push(wl * left.u + (1.0 - wl) * right.u);
        q.push(wl * left.q + (1.0 - wl) * right.q);
    }
    let bound = 1e3 * (1.0 + left.u.abs().max(right.u.abs()).max(left.q.abs()).max(right.q.abs()));

    let mut speed = vec![0.0; n];
    let mut fu = vec![0.0; n + 1];
    let mut fq = vec![0.0; n + 1];
    let mut t = 0.0;
    let mut steps = 0;
    while t < grid.t_final {
        let mut amax = 0.0f64;
        for i in 0..n {
            speed[i] = max_speed(u[i], q[i]);
            amax = amax.max(speed[i]);
        }
        if !amax.is_finite() || amax <= 0.0 {
            return Err(Error::CflViolation(format!("wave-speed estimate {amax} at t = {t}")));
        }
        let mut dt = grid.cfl * dx / amax;
        if t + dt > grid.t_final {
            dt = grid.t_final - t;
        }
        for k in 0..=n {
            let (l, r) = (k.saturating_sub(1), k.min(n - 1));
            let a = speed[l].max(speed[r]);
            let (gl, gr) = (energy_flux(u[l], q[l]), energy_flux(u[r], q[r]));
            fu[k] = 0.5 * (q[l] + q[r]) - 0.5 * a * (u[r] - u[l]);
            fq[k] = 0.5 * (gl + gr) - 0.5 * a * (q[r] - q[l]);
        }
        let r = dt / dx;
        for i in 0..n {
            u[i] -= r * (fu[i + 1] - fu[i]);
            q[i] -= r * (fq[i + 1] - fq[i]);
            let floor = 0.5 * u[i] * u[i];
            if q[i] < floor {
                q[i] = floor;
            }
            if !(u[i].abs() <= bound && q[i].abs() <= bound) {
                return Err(Error::BlowUp(format!(
                    "cell {i} reached (u, q) = ({}, {}) at t = {t}",
                    u[i], q[i]
                )));
            }
        }
        t += dt;
        steps += 1;
    }
    let x = (0..n).map(|i| grid.x_min + dx * (i as f64 + 0.5)).collect();
    Ok(FvField { x, u, q, steps })
}

/// Cell averages of the exact fan at `t_final`, integrated per cell with
/// Gauss–Legendre pieces split at the wave boundaries.
pub fn exact_cell_averages(fan: &WaveFan, grid: &FvGrid) -> (Vec<f64>, Vec<f64>) {
    let gl = GaussLegendre::new(NonZeroUsize::new(8).expect("nonzero"));
    let t = grid.t_final;
    let dx = grid.dx();
    let mut rays: Vec<f64> = fan
        .waves
        .iter()
        .flat_map(|w| [w.speed_lo * t, w.speed_hi * t])
        .collect();
    rays.sort_by(f64::total_cmp);
    let mut us = Vec::with_capacity(grid.n_cells);
    let mut qs = Vec::with_capacity(grid.n_cells);
    let mut breaks = Vec::new();
    for i in 0..grid.n_cells {
        let (a, b) = grid.cell(i);
        breaks.clear();
        breaks.push(a);
        breaks.extend(rays.iter().copied().filter(|&x| x > a && x < b));
        breaks.push(b);
        let mut su = Neumaier::default();
        let mut sq = Neumaier::default();
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for &(x, wt) in gl.as_node_weight_pairs() {
                let s = sample_fan(fan, (mid + half * x) / t);
                su.add(half * wt * s.u);
                sq.add(half * wt * s.q);
            }
        }
        us.push(su.value() / dx);
        qs.push(sq.value() / dx);
    }
    (us, qs)
}

/// `L¹` distance `Σ dx (|Δu| + |Δq|)` between a numerical field and the exact fan.
pub fn l1_distance(fan: &WaveFan, field: &FvField, grid: &FvGrid) -> f64 {
    let (ue, qe) = exact_cell_averages(fan, grid);
    let dx = grid.dx();
    (0..grid.n_cells)
        .map(|i| dx * ((field.u[i] - ue[i]).abs() + (field.q[i] - qe[i]).abs()))
        .collect::<Neumaier>()
        .value()
}

/// Solves the fan's Riemann problem with the Rusanov scheme and returns the
/// `L¹` distance to the exact solution.
pub fn compare_fan_fv(fan: &WaveFan, grid: &FvGrid) -> Result<f64> {
    let field = fv_solve_trans(fan.left, fan.right, grid)?;
    Ok(l1_distance(fan, &field, grid))
}

/// `(n_cells, L¹ error)` for each resolution.
pub fn refinement_table(fan: &WaveFan, grid: &FvGrid, cells: &[usize]) -> Result<Vec<(usize, f64)>> {
    cells
        .iter()
        .map(|&n| compare_fan_fv(fan, &grid.with_cells(n)).map(|e| (n, e)))
        .collect()
}
