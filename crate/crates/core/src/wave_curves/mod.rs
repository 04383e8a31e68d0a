//! Elementary wave curves of the energy–velocity system.
//!
//! Shock branches are closed-form Hugoniot loci; rarefaction branches are
//! integral curves (see [`rarefaction`]). For both families, shocks connect
//! to states with smaller `u` and rarefactions to states with larger `u`.
//! The composite curves used by the Riemann solver are
//!
//! * the forward 1-curve through a left state: SW1 for `u < u_L`, RW1 for `u > u_L`;
//! * the backward 2-curve through a right state: inverse RW2 for `u < u_R`,
//!   inverse SW2 for `u > u_R`.

pub mod rarefaction;

use std::io::Write;

use serde::{Deserialize, Serialize};

pub use rarefaction::{
    rw_integrate, BranchValue, CurveSample, Direction, IntegralCurve, OdeConfig, RarefactionBranch, TOL_CURVE,
};

use crate::error::{Error, Result};
use crate::state::{energy_flux, Family, TransState, TOL_ZERO};

/// Radicand of the forward shock curves, written in the cancellation-free
/// form `(2q_L − u_L²) + 1/4 + d/2 + d²/3` with `d = u_L − u_R`.
fn shock_radicand(base: TransState, u_r: f64) -> Result<f64> {
    if !u_r.is_finite() {
        return Err(Error::Precondition(format!("non-finite u_R = {u_r}")));
    }
    let d = base.u - u_r;
    if d < -TOL_ZERO {
        return Err(Error::Precondition(format!(
            "shock curves connect to u_R <= u_L, got u_R = {u_r} > u_L = {}",
            base.u
        )));
    }
    let d = d.max(0.0);
    let rad = base.v_squared() + 0.25 + 0.5 * d + d * d / 3.0;
    if !(rad >= 0.0) {
        return Err(Error::Domain(format!(
            "negative shock radicand {rad} at base ({}, {})",
            base.u, base.q
        )));
    }
    Ok(rad)
}

fn forward_shock(base: TransState, u_r: f64, sign: f64) -> Result<f64> {
    let rad = shock_radicand(base, u_r)?;
    let d = (base.u - u_r).max(0.0);
    Ok(base.q - 0.5 * d * (2.0 * u_r - 1.0) + sign * d * rad.sqrt())
}

/// Energy `q_R` on the first-family shock curve through `base`, for `u_R <= u_L`.
pub fn sw1_q(base: TransState, u_r: f64) -> Result<f64> {
    forward_shock(base, u_r, 1.0)
}

/// Energy `q_R` on the second-family shock curve through `base`, for `u_R <= u_L`.
pub fn sw2_q(base: TransState, u_r: f64) -> Result<f64> {
    forward_shock(base, u_r, -1.0)
}

/// Energy `q_L` of the left state that a second-family shock connects to the
/// right state `base_r`, for `u_L >= u_R`.
///
/// `q_L = q_R + (u_L − u_R)(2u_L − 1)/2 + ((u_L − u_R)/2)·√W`,
/// `W = 8q_R − 4u_R² + 1 − 2(u_L − u_R) + 4(u_L − u_R)²/3`.
pub fn sw2_inv_q(base_r: TransState, u_l: f64) -> Result<f64> {
    if !u_l.is_finite() {
        return Err(Error::Precondition(format!("non-finite u_L = {u_l}")));
    }
    let d = u_l - base_r.u;
    if d < -TOL_ZERO {
        return Err(Error::Precondition(format!(
            "inverse shock curve needs u_L >= u_R, got u_L = {u_l} < u_R = {}",
            base_r.u
        )));
    }
    let d = d.max(0.0);
    let rad = base_r.discriminant() - 2.0 * d + 4.0 * d * d / 3.0;
    if !(rad >= 0.0) {
        return Err(Error::Domain(format!(
            "negative inverse-shock radicand {rad} at base ({}, {})",
            base_r.u, base_r.q
        )));
    }
    Ok(base_r.q + 0.5 * d * (2.0 * u_l - 1.0) + 0.5 * d * rad.sqrt())
}

/// Value of a composite curve at some `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvePoint {
    Value(f64),
    /// The rarefaction branch crossed `q = u²/2` at `crossing` before `u`.
    BelowCritical {
        crossing: f64,
    },
}

/// Forward 1-curve through a left state (SW1 ∪ RW1), with a memoized RW1 branch.
#[derive(Debug)]
pub struct ForwardOneCurve {
    left: TransState,
    rw1: RarefactionBranch,
}

impl ForwardOneCurve {
    pub fn new(left: TransState, cfg: &OdeConfig) -> Result<Self> {
        left.check_physical()?;
        Ok(Self {
            left,
            rw1: RarefactionBranch::new(Family::One, left, Direction::IncreasingU, cfg),
        })
    }

    pub fn base(&self) -> TransState {
        self.left
    }

    pub fn eval(&self, u: f64) -> Result<CurvePoint> {
        if u <= self.left.u {
            return sw1_q(self.left, u).map(CurvePoint::Value);
        }
        Ok(match self.rw1.eval(u)? {
            BranchValue::Value(q) => CurvePoint::Value(q),
            BranchValue::BelowCritical { crossing } => CurvePoint::BelowCritical { crossing },
        })
    }

    /// Like [`eval`](Self::eval) but a point beyond the RW1 exit is an error.
    pub fn q(&self, u: f64) -> Result<f64> {
        match self.eval(u)? {
            CurvePoint::Value(q) => Ok(q),
            CurvePoint::BelowCritical { crossing } => Err(Error::Domain(format!(
                "the 1-curve through ({}, {}) leaves q >= u²/2 at u = {crossing}",
                self.left.u, self.left.q
            ))),
        }
    }
}

/// Backward 2-curve through a right state (inverse RW2 ∪ inverse SW2).
#[derive(Debug)]
pub struct BackwardTwoCurve {
    right: TransState,
    rw2: RarefactionBranch,
}

impl BackwardTwoCurve {
    pub fn new(right: TransState, cfg: &OdeConfig) -> Result<Self> {
        right.check_physical()?;
        Ok(Self {
            right,
            rw2: RarefactionBranch::new(Family::Two, right, Direction::DecreasingU, cfg),
        })
    }

    pub fn base(&self) -> TransState {
        self.right
    }

    pub fn q(&self, u: f64) -> Result<f64> {
        if u >= self.right.u {
            return sw2_inv_q(self.right, u);
        }
        match self.rw2.eval(u)? {
            BranchValue::Value(q) => Ok(q),
            BranchValue::BelowCritical { crossing } => Err(Error::Domain(format!(
                "inverse RW2 through ({}, {}) crossed q = u²/2 at u = {crossing}",
                self.right.u, self.right.q
            ))),
        }
    }
}

/// One-shot evaluation of the forward 1-curve through `left`.
pub fn forward_1_curve(left: TransState, u: f64) -> Result<f64> {
    ForwardOneCurve::new(left, &OdeConfig::default())?.q(u)
}

/// One-shot evaluation of the backward 2-curve through `right`.
pub fn backward_2_curve(right: TransState, u: f64) -> Result<f64> {
    BackwardTwoCurve::new(right, &OdeConfig::default())?.q(u)
}

/// The curves that can be tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Sw1,
    Sw2,
    Rw1,
    Rw2,
    Sw2Inverse,
    Rw2Inverse,
}

impl CurveKind {
    pub const FORWARD: [CurveKind; 4] = [CurveKind::Sw1, CurveKind::Sw2, CurveKind::Rw1, CurveKind::Rw2];
    pub const INVERSE: [CurveKind; 2] = [CurveKind::Sw2Inverse, CurveKind::Rw2Inverse];

    pub fn family(self) -> Family {
        match self {
            CurveKind::Sw1 | CurveKind::Rw1 => Family::One,
            _ => Family::Two,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Sw1 => "sw1",
            CurveKind::Sw2 => "sw2",
            CurveKind::Rw1 => "rw1",
            CurveKind::Rw2 => "rw2",
            CurveKind::Sw2Inverse => "sw2_inv",
            CurveKind::Rw2Inverse => "rw2_inv",
        }
    }

    /// Whether the curve extends toward larger `u` from its base.
    pub fn increasing(self) -> bool {
        matches!(self, CurveKind::Rw1 | CurveKind::Rw2 | CurveKind::Sw2Inverse)
    }
}

/// Samples `kind` through `base` at `points` equally spaced `u` values over
/// `span` on the curve's side of the base (base included).
///
/// Rarefaction tables stop where the curve leaves the physical domain.
pub fn tabulate(
    kind: CurveKind,
    base: TransState,
    span: f64,
    points: usize,
    cfg: &OdeConfig,
) -> Result<Vec<CurveSample>> {
    base.check_physical()?;
    if points < 2 || !(span > 0.0) {
        return Err(Error::Precondition(format!(
            "tabulation needs span > 0 and at least 2 points (span = {span}, points = {points})"
        )));
    }
    let sign = if kind.increasing() { 1.0 } else { -1.0 };
    let us = (0..points).map(|i| base.u + sign * span * i as f64 / (points - 1) as f64);
    let family = kind.family();
    let mut out = Vec::with_capacity(points);
    match kind {
        CurveKind::Sw1 | CurveKind::Sw2 | CurveKind::Sw2Inverse => {
            for u in us {
                let q = match kind {
                    CurveKind::Sw1 => sw1_q(base, u)?,
                    CurveKind::Sw2 => sw2_q(base, u)?,
                    _ => sw2_inv_q(base, u)?,
                };
                out.push(CurveSample::on_family(family, u, q));
            }
        }
        CurveKind::Rw1 | CurveKind::Rw2 | CurveKind::Rw2Inverse => {
            let dir = if sign > 0.0 {
                Direction::IncreasingU
            } else {
                Direction::DecreasingU
            };
            let branch = RarefactionBranch::new(family, base, dir, cfg);
            for u in us {
                match branch.eval(u)? {
                    BranchValue::Value(q) => out.push(CurveSample::on_family(family, u, q)),
                    BranchValue::BelowCritical { crossing } => {
                        let qc = 0.5 * crossing * crossing;
                        out.push(CurveSample::on_family(family, crossing, qc));
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Writes samples as CSV with header `u,q,lambda` and 17 significant digits.
pub fn write_csv<W: Write>(samples: &[CurveSample], mut w: W) -> std::io::Result<()> {
    writeln!(w, "u,q,lambda")?;
    for s in samples {
        writeln!(w, "{:.16e},{:.16e},{:.16e}", s.u, s.q, s.lambda)?;
    }
    Ok(())
}

/// Rankine–Hugoniot residuals `(c[u] − [q], c[q] − [G])` of the jump
/// `left → right` travelling at speed `c`; jumps are taken left minus right.
pub fn rh_residuals(left: TransState, right: TransState, c: f64) -> (f64, f64) {
    let du = left.u - right.u;
    let dq = left.q - right.q;
    let dg = energy_flux(left.u, left.q) - energy_flux(right.u, right.q);
    (c * du - dq, c * dq - dg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw_literal(base: TransState, u_r: f64, sign: f64) -> f64 {
        let (ul, ql) = (base.u, base.q);
        let d = ul - u_r;
        let rad = 2.0 * ql + 0.25 + 0.5 * d - (2.0 * ul * ul + 2.0 * ul * u_r - u_r * u_r) / 3.0;
        ql - 0.5 * d * (2.0 * u_r - 1.0) + sign * d.abs() * rad.sqrt()
    }

    #[test]
    fn shock_curves_at_the_base() {
        let b = TransState::new(1.0, 5.0);
        assert_eq!(sw1_q(b, 1.0).unwrap(), 5.0);
        assert_eq!(sw2_q(b, 1.0).unwrap(), 5.0);
        assert_eq!(sw2_inv_q(TransState::new(0.7, 7.0), 0.7).unwrap(), 7.0);
    }

    #[test]
    fn shock_curve_values_at_fig1_state() {
        let b = TransState::new(1.0, 5.0);
        let expected1 = 5.0 - 0.06 + 0.3 * 9.43_f64.sqrt();
        let expected2 = 5.0 - 0.06 - 0.3 * 9.43_f64.sqrt();
        assert!((sw1_q(b, 0.7).unwrap() - expected1).abs() < 1e-13);
        assert!((sw2_q(b, 0.7).unwrap() - expected2).abs() < 1e-13);
        assert!((sw1_q(b, 0.7).unwrap() - 5.861249151967046).abs() < 1e-12);
    }

    #[test]
    fn simplified_radicand_matches_literal_formula() {
        for &(ul, ql) in &[(1.0, 5.0), (-0.4, 0.3), (2.5, 3.125), (0.0, 10.0)] {
            let b = TransState::new(ul, ql);
            for k in 0..20 {
                let ur = ul - 0.17 * k as f64;
                let scale = 1.0 + ql.abs() + ur * ur;
                assert!((sw1_q(b, ur).unwrap() - sw_literal(b, ur, 1.0)).abs() < 1e-13 * scale);
                assert!((sw2_q(b, ur).unwrap() - sw_literal(b, ur, -1.0)).abs() < 1e-13 * scale);
            }
        }
    }

    #[test]
    fn shock_branch_sum() {
        let b = TransState::new(0.3, 2.0);
        for k in 1..10 {
            let ur = 0.3 - 0.3 * k as f64;
            let sum = sw1_q(b, ur).unwrap() + sw2_q(b, ur).unwrap();
            let expect = 2.0 * (b.q - 0.5 * (b.u - ur) * (2.0 * ur - 1.0));
            assert!((sum - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn shock_preconditions() {
        let b = TransState::new(1.0, 5.0);
        assert!(matches!(sw1_q(b, 1.5), Err(Error::Precondition(_))));
        assert!(matches!(sw2_inv_q(b, 0.5), Err(Error::Precondition(_))));
        let below = TransState::new(2.0, 0.0);
        assert!(matches!(sw1_q(below, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_shock_round_trip() {
        // the left state produced by the inverse curve maps forward onto the right state
        let r = TransState::new(0.7, 7.0);
        for k in 1..40 {
            let ul = 0.7 + 0.1 * k as f64;
            let ql = sw2_inv_q(r, ul).unwrap();
            let back = sw2_q(TransState::new(ul, ql), r.u).unwrap();
            assert!((back - r.q).abs() < 1e-11 * (1.0 + ql), "u_L = {ul}");
            let c = (ql - r.q) / (ul - r.u);
            let (r1, r2) = rh_residuals(TransState::new(ul, ql), r, c);
            assert!(r1.abs() < 1e-12 && r2.abs() < 1e-10 * (1.0 + ql * ql));
        }
    }

    #[test]
    fn inverse_shock_value_at_fig2_state() {
        // hand evaluation: W = 56 - 1.96 + 1 - 0.6 + 0.12 = 54.56
        let q = sw2_inv_q(TransState::new(0.7, 7.0), 1.0).unwrap();
        let expected = 7.0 + 0.15 + 0.15 * 54.56_f64.sqrt();
        assert!((q - expected).abs() < 1e-13);
    }

    #[test]
    fn inverse_shock_grows_without_bound() {
        let r = TransState::new(0.7, 7.0);
        let mut prev = sw2_inv_q(r, 0.7 + 1e3).unwrap();
        for k in 1..10 {
            let q = sw2_inv_q(r, 0.7 + 1e3 * (1.0 + k as f64)).unwrap();
            assert!(q > prev);
            prev = q;
        }
    }

    #[test]
    fn composite_curves_are_continuous_at_their_base() {
        let l = TransState::new(1.0, 5.0);
        let f = ForwardOneCurve::new(l, &OdeConfig::default()).unwrap();
        assert_eq!(f.q(1.0).unwrap(), 5.0);
        assert!((f.q(1.0 + 1e-9).unwrap() - 5.0).abs() < 1e-8);
        assert!((f.q(1.0 - 1e-9).unwrap() - 5.0).abs() < 1e-8);
        let r = TransState::new(0.7, 7.0);
        let b = BackwardTwoCurve::new(r, &OdeConfig::default()).unwrap();
        assert_eq!(b.q(0.7).unwrap(), 7.0);
        assert!((b.q(0.7 - 1e-9).unwrap() - 7.0).abs() < 1e-8);
        assert!((b.q(0.7 + 1e-9).unwrap() - 7.0).abs() < 1e-8);
    }

    #[test]
    fn forward_curve_grows_far_left_and_rw1_slope_bound() {
        let l = TransState::new(1.0, 5.0);
        let f = ForwardOneCurve::new(l, &OdeConfig::default()).unwrap();
        let mut prev = f.q(1.0 - 1e3).unwrap();
        for k in 1..10 {
            let q = f.q(1.0 - 1e3 * (1.0 + k as f64)).unwrap();
            assert!(q > prev);
            prev = q;
        }
        let c = rw_integrate(Family::One, l, 2.5, &OdeConfig::default()).unwrap();
        for s in &c.samples {
            assert!(s.lambda <= s.u - 1.0 + 1e-12);
        }
    }

    #[test]
    fn backward_rw2_stays_above_critical_curve() {
        let r = TransState::new(0.7, 7.0);
        let c = rw_integrate(Family::Two, r, -10.0, &OdeConfig::default()).unwrap();
        for s in &c.samples {
            assert!(s.q > 0.5 * s.u * s.u);
            assert!(s.lambda - s.u >= -1e-12);
        }
        let b = BackwardTwoCurve::new(r, &OdeConfig::default()).unwrap();
        for k in 0..=107 {
            let u = 0.7 - 0.1 * k as f64;
            assert!(b.q(u).unwrap() > 0.5 * u * u);
        }
    }

    #[test]
    fn tabulation_and_csv() {
        let b = TransState::new(1.0, 5.0);
        let t = tabulate(CurveKind::Sw1, b, 2.0, 5, &OdeConfig::default()).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t[0].u, 1.0);
        assert_eq!(t[4].u, -1.0);
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("u,q,lambda\n1.0000000000000000e0,5.0000000000000000e0,"));
        // RW1 from (1,5) leaves the domain near u = 2.91 and the table stops there
        let t = tabulate(CurveKind::Rw1, b, 3.0, 31, &OdeConfig::default()).unwrap();
        let last = t.last().unwrap();
        assert!(t.len() < 31);
        assert!((last.q - 0.5 * last.u * last.u).abs() < 1e-12);
    }
}
