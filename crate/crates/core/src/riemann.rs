//! Riemann solver for the energy–velocity system.
//!
//! The middle state is the intersection of the forward 1-curve through the
//! left state with the backward 2-curve through the right state. It is found
//! by a sign scan of the gap `φ(u) = q₁(u) − q₂(u)` over expanding windows
//! followed by Brent's method. The resulting fan is one of
//!
//! | region | waves     |
//! |--------|-----------|
//! | I      | RW1 + RW2 |
//! | II     | SW1 + RW2 |
//! | III    | RW1 + SW2 |
//! | IV     | SW1 + SW2 |
//!
//! or `Degenerate` when one of the waves has zero strength.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::brent;
use crate::state::{char_speed, eigen_trans, Family, TransState};
use crate::wave_curves::{
    rw_integrate, sw1_q, sw2_q, BackwardTwoCurve, CurvePoint, ForwardOneCurve, IntegralCurve, OdeConfig,
};

/// `|u_M − u_L|` (or `|u_R − u_M|`) below which a wave is treated as absent.
pub const TIE_TOL: f64 = 1e-10;

/// Slack allowed in the Lax inequalities, relative to `1 + |c|`.
pub const TOL_LAX: f64 = 1e-10;

const MAX_WINDOW_EXPONENT: i32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub ode: OdeConfig,
    /// Bracket width at which Brent's method stops.
    pub tol_root: f64,
    /// Base half-width of the first scan window; window `k` pads by `2^k` times this.
    pub scan_scale: f64,
    /// Number of scan intervals per window.
    pub scan_intervals: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            ode: OdeConfig::default(),
            tol_root: 1e-12,
            scan_scale: 1.0,
            scan_intervals: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

/// One elementary wave of the fan.
#[derive(Debug, Clone, PartialEq)]
pub struct Wave {
    pub kind: WaveKind,
    pub family: Family,
    pub left: TransState,
    pub right: TransState,
    /// Shock: both ends equal the shock speed. Rarefaction: `λ(left)`, `λ(right)`.
    pub speed_lo: f64,
    pub speed_hi: f64,
    pub curve: Option<IntegralCurve>,
}

impl Wave {
    /// Shock with Rankine–Hugoniot speed `[q]/[u]`; a zero jump travels at the
    /// characteristic speed.
    pub fn shock(family: Family, left: TransState, right: TransState) -> Self {
        let du = left.u - right.u;
        let c = if du == 0.0 {
            char_speed(family, left.u, left.q)
        } else {
            (left.q - right.q) / du
        };
        Self {
            kind: WaveKind::Shock,
            family,
            left,
            right,
            speed_lo: c,
            speed_hi: c,
            curve: None,
        }
    }

    /// Rarefaction whose states follow `curve` (integrated from either end).
    pub fn rarefaction(family: Family, left: TransState, right: TransState, curve: IntegralCurve) -> Self {
        let first = curve.samples[0];
        let last = curve.samples[curve.samples.len() - 1];
        let (lo, hi) = if first.u <= last.u {
            (first.lambda, last.lambda)
        } else {
            (last.lambda, first.lambda)
        };
        Self {
            kind: WaveKind::Rarefaction,
            family,
            left,
            right,
            speed_lo: lo,
            speed_hi: hi,
            curve: Some(curve),
        }
    }

    pub fn is_shock(&self) -> bool {
        self.kind == WaveKind::Shock
    }

    /// Shock speed (or lower speed bound for rarefactions).
    pub fn speed(&self) -> f64 {
        self.speed_lo
    }

    /// State inside a rarefaction fan at `ξ = x/t`, clamped to the fan.
    pub fn state_in_fan(&self, xi: f64) -> TransState {
        match &self.curve {
            Some(curve) if xi > self.speed_lo && xi < self.speed_hi => curve.state_at_speed(xi),
            _ if xi <= self.speed_lo => self.left,
            _ => self.right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    I,
    II,
    III,
    IV,
    Degenerate,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
            Region::Degenerate => "Degenerate",
        };
        f.write_str(s)
    }
}

/// Lax-admissible solution of a Riemann problem of the energy–velocity system.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFan {
    pub left: TransState,
    pub middle: TransState,
    pub right: TransState,
    /// Family-1 wave first; absent waves are omitted.
    pub waves: Vec<Wave>,
    pub region: Region,
    /// `|q₁(u_M) − q₂(u_M)|` at the computed intersection.
    pub residual: f64,
}

/// Intersection of the two composite curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiddleState {
    pub state: TransState,
    pub residual: f64,
    /// Scan bracket that contained the sign change.
    pub bracket: (f64, f64),
}

struct CurveGap {
    one: ForwardOneCurve,
    two: BackwardTwoCurve,
}

impl CurveGap {
    fn new(left: TransState, right: TransState, cfg: &SolverConfig) -> Result<Self> {
        Ok(Self {
            one: ForwardOneCurve::new(left, &cfg.ode)?,
            two: BackwardTwoCurve::new(right, &cfg.ode)?,
        })
    }

    /// `q₁(u) − q₂(u)`. Beyond the point `u_c` where RW1 leaves the domain the
    /// 1-curve is continued by `u²/2 − (u − u_c)`, which keeps the gap
    /// negative there since the 2-curve never drops below `u²/2`.
    fn phi(&self, u: f64) -> Result<f64> {
        let two = self.two.q(u)?;
        Ok(match self.one.eval(u)? {
            CurvePoint::Value(q) => q - two,
            CurvePoint::BelowCritical { crossing } => 0.5 * u * u - (u - crossing) - two,
        })
    }

    fn q_one(&self, u: f64) -> Result<f64> {
        Ok(match self.one.eval(u)? {
            CurvePoint::Value(q) => q,
            CurvePoint::BelowCritical { .. } => 0.5 * u * u,
        })
    }
}

/// Middle state connecting `left` to `right` (default configuration).
pub fn solve_middle(left: TransState, right: TransState) -> Result<TransState> {
    solve_middle_with(left, right, &SolverConfig::default()).map(|m| m.state)
}

pub fn solve_middle_with(left: TransState, right: TransState, cfg: &SolverConfig) -> Result<MiddleState> {
    let gap = CurveGap::new(left, right, cfg)?;
    solve_gap(&gap, left, right, cfg)
}

fn solve_gap(gap: &CurveGap, left: TransState, right: TransState, cfg: &SolverConfig) -> Result<MiddleState> {
    if left == right {
        return Ok(MiddleState {
            state: left,
            residual: 0.0,
            bracket: (left.u, left.u),
        });
    }
    let lo0 = left.u.min(right.u);
    let hi0 = left.u.max(right.u);
    let n = cfg.scan_intervals.max(2);
    let mut last_window = (lo0, hi0);
    for k in 0..=MAX_WINDOW_EXPONENT {
        let pad = cfg.scan_scale * 2f64.powi(k);
        let (lo, hi) = (lo0 - pad, hi0 + pad);
        last_window = (lo, hi);
        let mut prev_u = lo;
        let mut prev = gap.phi(lo)?;
        for i in 1..=n {
            let u = if i == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / n as f64
            };
            let cur = gap.phi(u)?;
            let bracket = if prev == 0.0 {
                Some((prev_u, prev_u))
            } else if cur == 0.0 || prev.signum() != cur.signum() {
                Some((prev_u, u))
            } else {
                None
            };
            if let Some((a, b)) = bracket {
                let um = if a == b {
                    a
                } else {
                    brent(|x| gap.phi(x), a, b, cfg.tol_root, 200)?
                };
                let q1 = gap.q_one(um)?;
                let q2 = gap.two.q(um)?;
                return Ok(MiddleState {
                    state: TransState::new(um, q1),
                    residual: (q1 - q2).abs(),
                    bracket: (a, b),
                });
            }
            prev_u = u;
            prev = cur;
        }
    }
    Err(Error::BracketFailure {
        lo: last_window.0,
        hi: last_window.1,
    })
}

fn first_wave_kind(left: TransState, middle: TransState) -> Option<WaveKind> {
    if middle.u < left.u - TIE_TOL {
        Some(WaveKind::Shock)
    } else if middle.u > left.u + TIE_TOL {
        Some(WaveKind::Rarefaction)
    } else {
        None
    }
}

fn second_wave_kind(middle: TransState, right: TransState) -> Option<WaveKind> {
    if right.u < middle.u - TIE_TOL {
        Some(WaveKind::Shock)
    } else if right.u > middle.u + TIE_TOL {
        Some(WaveKind::Rarefaction)
    } else {
        None
    }
}

/// Region of the fan `left → middle → right`.
pub fn classify(left: TransState, right: TransState, middle: TransState) -> Region {
    use WaveKind::{Rarefaction as R, Shock as S};
    match (first_wave_kind(left, middle), second_wave_kind(middle, right)) {
        (Some(R), Some(R)) => Region::I,
        (Some(S), Some(R)) => Region::II,
        (Some(R), Some(S)) => Region::III,
        (Some(S), Some(S)) => Region::IV,
        _ => Region::Degenerate,
    }
}

/// Lax-admissible wave fan connecting `left` to `right` (default configuration).
pub fn build_fan(left: TransState, right: TransState) -> Result<WaveFan> {
    build_fan_with(left, right, &SolverConfig::default())
}

pub fn build_fan_with(left: TransState, right: TransState, cfg: &SolverConfig) -> Result<WaveFan> {
    left.check_physical()?;
    right.check_physical()?;
    let gap = CurveGap::new(left, right, cfg)?;
    let found = solve_gap(&gap, left, right, cfg)?;
    let mut middle = found.state;
    let first = first_wave_kind(left, middle);
    if first.is_none() {
        middle = left;
    }
    let second = second_wave_kind(middle, right);
    if second.is_none() {
        middle = right;
    }
    let region = classify(left, right, middle);

    let mut waves = Vec::with_capacity(2);
    match first {
        Some(WaveKind::Shock) => waves.push(Wave::shock(Family::One, left, middle)),
        Some(WaveKind::Rarefaction) => {
            let curve = rw_integrate(Family::One, left, middle.u, &cfg.ode)?;
            waves.push(Wave::rarefaction(Family::One, left, middle, curve));
        }
        None => {}
    }
    match second {
        Some(WaveKind::Shock) => waves.push(Wave::shock(Family::Two, middle, right)),
        Some(WaveKind::Rarefaction) => {
            // integrated backward from the right state, as the 2-curve was
            let curve = rw_integrate(Family::Two, right, middle.u, &cfg.ode)?;
            waves.push(Wave::rarefaction(Family::Two, middle, right, curve));
        }
        None => {}
    }
    Ok(WaveFan {
        left,
        middle,
        right,
        waves,
        region,
        residual: found.residual,
    })
}

/// Lax entropy condition for a shock, including the transversality counts:
/// a 1-shock has `λ−(L) >= c >= λ−(R)` and `λ+(R) >= c`; a 2-shock has
/// `λ+(L) >= c >= λ+(R)` and `λ−(L) <= c`.
pub fn lax_check(w: &Wave) -> bool {
    if w.left == w.right {
        return true;
    }
    let (Ok(el), Ok(er)) = (eigen_trans(w.left), eigen_trans(w.right)) else {
        return false;
    };
    let c = w.speed_lo;
    let tol = TOL_LAX * (1.0 + c.abs());
    match w.family {
        Family::One => el.lambda_minus >= c - tol && c >= er.lambda_minus - tol && er.lambda_plus >= c - tol,
        Family::Two => el.lambda_plus >= c - tol && c >= er.lambda_plus - tol && el.lambda_minus <= c + tol,
    }
}

/// State of the self-similar solution at `ξ = x/t`. At a shock position the
/// right limit is returned.
pub fn sample_fan(fan: &WaveFan, xi: f64) -> TransState {
    let mut state = fan.left;
    for w in &fan.waves {
        if xi < w.speed_lo {
            return state;
        }
        if w.kind == WaveKind::Rarefaction && xi < w.speed_hi {
            return w.state_in_fan(xi);
        }
        state = w.right;
    }
    state
}

/// Builds data of a chosen region by walking the forward curves: a 1-wave
/// from `left` to `u_mid`, then a 2-wave to `u_right`. Returns `(middle, right)`.
pub fn forward_construct(
    left: TransState,
    u_mid: f64,
    u_right: f64,
    cfg: &OdeConfig,
) -> Result<(TransState, TransState)> {
    let middle = if u_mid <= left.u {
        TransState::new(u_mid, sw1_q(left, u_mid)?)
    } else {
        rw_integrate(Family::One, left, u_mid, cfg)?.last()
    };
    let right = if u_right <= u_mid {
        TransState::new(u_right, sw2_q(middle, u_right)?)
    } else {
        rw_integrate(Family::Two, middle, u_right, cfg)?.last()
    };
    right.check_physical()?;
    Ok((middle, right))
}

#[derive(Serialize)]
struct StateJson {
    u: f64,
    q: f64,
}

impl From<TransState> for StateJson {
    fn from(s: TransState) -> Self {
        Self { u: s.u, q: s.q }
    }
}

#[derive(Serialize)]
struct WaveJson {
    kind: WaveKind,
    family: Family,
    left: StateJson,
    right: StateJson,
    speed_lo: f64,
    speed_hi: f64,
}

#[derive(Serialize)]
struct FanJson {
    left: StateJson,
    middle: StateJson,
    right: StateJson,
    region: Region,
    waves: Vec<WaveJson>,
}

impl WaveFan {
    /// Wave speeds are non-decreasing along the fan.
    pub fn is_ordered(&self) -> bool {
        self.waves.windows(2).all(|w| w[0].speed_hi <= w[1].speed_lo)
            && self.waves.iter().all(|w| w.speed_lo <= w.speed_hi)
    }

    pub fn shocks(&self) -> impl Iterator<Item = &Wave> {
        self.waves.iter().filter(|w| w.is_shock())
    }

    /// Wave-fan export:
    /// `{left, middle, right, region, waves: [{kind, family, left, right, speed_lo, speed_hi}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let fan = FanJson {
            left: self.left.into(),
            middle: self.middle.into(),
            right: self.right.into(),
            region: self.region,
            waves: self
                .waves
                .iter()
                .map(|w| WaveJson {
                    kind: w.kind,
                    family: w.family,
                    left: w.left.into(),
                    right: w.right.into(),
                    speed_lo: w.speed_lo,
                    speed_hi: w.speed_hi,
                })
                .collect(),
        };
        serde_json::to_value(fan).expect("fan serializes")
    }
}
