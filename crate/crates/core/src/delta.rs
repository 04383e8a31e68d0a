//! Singular δ-type solutions in the original `(u, v)` variables.
//!
//! A [`DeltaSolution`] is a self-similar regular part (piecewise constant
//! states and rarefaction segments between ordered rays `ξ = x/t`) plus a
//! finite list of δ-singularities carried by rays `x = c·t`. A singularity on
//! the `v`-equation with strength `β(t) = b·t` repairs a jump that satisfies
//! the first Rankine–Hugoniot condition but not the second: the weak form
//! balances exactly when `b = c[v] − [g]` with jumps taken right minus left.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::riemann::{build_fan_with, SolverConfig, WaveFan, WaveKind};
use crate::state::{brio_flux, lift, project, BrioFlux, BrioState, Family, FluxPair, RiemannData, TOL_ZERO};
use crate::wave_curves::IntegralCurve;

/// Absolute tolerance on the speed ordering around the `v`-flip shock.
pub const TOL_ORDER: f64 = 1e-10;

/// Equation carrying a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// First equation (`α`).
    U,
    /// Second equation (`β`).
    V,
}

/// δ-measure of strength `rate·t + constant` on the ray `x = speed·t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSingularity {
    pub speed: f64,
    pub strength_rate: f64,
    /// Nonzero only for the constant-strength fixture of [`nonuniqueness_example`].
    pub strength_constant: f64,
    pub component: Component,
}

impl DeltaSingularity {
    pub fn linear(speed: f64, rate: f64, component: Component) -> Self {
        Self {
            speed,
            strength_rate: rate,
            strength_constant: 0.0,
            component,
        }
    }

    pub fn strength(&self, t: f64) -> f64 {
        self.strength_rate * t + self.strength_constant
    }

    pub fn is_nonzero(&self) -> bool {
        self.strength_rate.abs() > TOL_ZERO || self.strength_constant.abs() > TOL_ZERO
    }
}

/// One piece of the regular part between two consecutive rays.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    Constant(BrioState),
    /// Rarefaction of the energy–velocity system mapped back with
    /// `v = sign·√(2q − u²)`.
    Rarefaction {
        family: Family,
        curve: Arc<IntegralCurve>,
        sign: f64,
    },
}

impl Segment {
    fn at(&self, xi: f64) -> BrioState {
        match self {
            Segment::Constant(s) => *s,
            Segment::Rarefaction { curve, sign, .. } => {
                let t = curve.state_at_speed(xi);
                let v = t.v_squared().max(0.0).sqrt();
                BrioState::new(t.u, if *sign < 0.0 { -v } else { v })
            }
        }
    }

    fn flipped(&self) -> Self {
        match self {
            Segment::Constant(s) => Segment::Constant(BrioState::new(s.u, -s.v)),
            Segment::Rarefaction { family, curve, sign } => Segment::Rarefaction {
                family: *family,
                curve: Arc::clone(curve),
                sign: -sign,
            },
        }
    }
}

/// Self-similar piecewise description: `segments[i]` occupies
/// `edges[i-1] <= ξ < edges[i]` (with `edges[-1] = −∞`, `edges[n] = +∞`).
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPart {
    pub edges: Vec<f64>,
    pub segments: Vec<Segment>,
}

impl RegularPart {
    pub fn constant(s: BrioState) -> Self {
        Self {
            edges: Vec::new(),
            segments: vec![Segment::Constant(s)],
        }
    }

    fn push(&mut self, edge: f64, segment: Segment) {
        self.edges.push(edge);
        self.segments.push(segment);
    }

    fn segment_index(&self, xi: f64) -> usize {
        self.edges.partition_point(|&e| e <= xi)
    }

    /// Value at `ξ`; on an edge the right limit.
    pub fn sample(&self, xi: f64) -> BrioState {
        self.segments[self.segment_index(xi)].at(xi)
    }

    /// `(left limit, right limit)` across edge `k`.
    pub fn limits(&self, k: usize) -> (BrioState, BrioState) {
        let e = self.edges[k];
        (self.segments[k].at(e), self.segments[k + 1].at(e))
    }

    /// Bounds `(ξ_lo, ξ_hi)` of segment `i`, infinite at the ends.
    pub fn bounds(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 { f64::NEG_INFINITY } else { self.edges[i - 1] };
        let hi = self.edges.get(i).copied().unwrap_or(f64::INFINITY);
        (lo, hi)
    }
}

/// How the speed of the `v`-flip shock at constant `u = U_M` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipSpeed {
    /// `U_M − 1`, the Rankine–Hugoniot speed `[g]/[v]`: no deficit.
    Rh,
    /// `U_M`, the literal value quoted with the sign-change construction.
    Paper,
    /// `U_M + shift`; used to check that wrong constructions are detected.
    Shifted(f64),
}

impl FlipSpeed {
    pub fn speed(self, u_m: f64) -> f64 {
        match self {
            FlipSpeed::Rh => u_m - 1.0,
            FlipSpeed::Paper => u_m,
            FlipSpeed::Shifted(s) => u_m + s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrioOptions {
    pub solver: SolverConfig,
    pub flip_speed: FlipSpeed,
}

impl Default for BrioOptions {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            flip_speed: FlipSpeed::Rh,
        }
    }
}

/// Regular part plus δ-singularities solving a Riemann problem in the weak sense.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSolution {
    pub initial: RiemannData,
    pub regular: RegularPart,
    pub singular: Vec<DeltaSingularity>,
    /// Transformed fan underlying a Brio solution.
    pub fan: Option<WaveFan>,
    /// Speed of the `v`-flip shock, if the data change sign.
    pub flip: Option<f64>,
    pub flip_speed: Option<FlipSpeed>,
}

/// Which equation takes the deficit in [`generic_delta_shock`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `c = [f]/[u]`, singularity on the `v`-equation.
    A,
    /// `c = [g]/[v]`, singularity on the `u`-equation.
    B,
}

/// Single-jump δ-shock for an arbitrary flux pair: the step translates with
/// the speed fixed by one equation and the other equation's deficit becomes
/// a linearly growing δ.
pub fn generic_delta_shock<F: FluxPair + ?Sized>(flux: &F, data: RiemannData, branch: Branch) -> Result<DeltaSolution> {
    let (l, r) = (data.left, data.right);
    let (df, dg) = (flux.f(r) - flux.f(l), flux.g(r) - flux.g(l));
    let (du, dv) = (r.u - l.u, r.v - l.v);
    let singular = match branch {
        Branch::A => {
            if du.abs() < TOL_ZERO {
                return Err(Error::DegenerateJump(format!(
                    "u₁ = u₂ = {}; the speed [f]/[u] is undefined",
                    l.u
                )));
            }
            let c = df / du;
            DeltaSingularity::linear(c, c * dv - dg, Component::V)
        }
        Branch::B => {
            if dv.abs() < TOL_ZERO {
                return Err(Error::DegenerateJump(format!(
                    "v₁ = v₂ = {}; the speed [g]/[v] is undefined",
                    l.v
                )));
            }
            let c = dg / dv;
            DeltaSingularity::linear(c, c * du - df, Component::U)
        }
    };
    let mut regular = RegularPart::constant(l);
    regular.push(singular.speed, Segment::Constant(r));
    Ok(DeltaSolution {
        initial: data,
        regular,
        singular: vec![singular],
        fan: None,
        flip: None,
        flip_speed: None,
    })
}

/// Deficit `c(V_L − V_R) − (V_L(U_L − 1) − V_R(U_R − 1))` of the second Brio
/// equation, jumps taken left minus right. The δ-strength rate of a Brio
/// solution is the negative of this value, `c[v] − [g]` with right-minus-left jumps.
pub fn rh_deficit_v(l: BrioState, r: BrioState, c: f64) -> f64 {
    c * (l.v - r.v) - (l.v * (l.u - 1.0) - r.v * (r.u - 1.0))
}

/// δ-strength rate `c[v] − [g]` (right minus left) for the Brio flux.
pub fn strength_rate(l: BrioState, r: BrioState, c: f64) -> f64 {
    -rh_deficit_v(l, r, c)
}

/// Sign of `v` for one side of the data; zero defers to the other side.
fn data_signs(data: RiemannData) -> (f64, f64) {
    let (vl, vr) = (data.left.v, data.right.v);
    let pick = |a: f64, b: f64| {
        if a != 0.0 {
            a.signum()
        } else if b != 0.0 {
            b.signum()
        } else {
            1.0
        }
    };
    (pick(vl, vr), pick(vr, vl))
}

/// Admissible δ-type solution of the Brio Riemann problem (default options).
pub fn solve_brio(data: RiemannData, opts: &BrioOptions) -> Result<DeltaSolution> {
    if !data.is_finite() {
        return Err(Error::Domain("Riemann data must be finite".into()));
    }
    let fan = build_fan_with(lift(data.left), lift(data.right), &opts.solver)?;
    let (s_left, s_right) = data_signs(data);
    let sign_change = s_left != s_right;

    let mut regular = RegularPart::constant(data.left);
    let mut singular = Vec::new();
    let mut flip = None;
    let mut prev = data.left;
    let n_waves = fan.waves.len();
    let emit_flip = |regular: &mut RegularPart, flip: &mut Option<f64>, lo: f64, hi: f64| -> Result<BrioState> {
        let c = opts.flip_speed.speed(fan.middle.u);
        let tol = TOL_ORDER * (1.0 + c.abs());
        if !(c >= lo - tol && c <= hi + tol) {
            return Err(Error::OrderingViolation(format!(
                "v-flip speed {c} outside [{lo}, {hi}] at U_M = {}",
                fan.middle.u
            )));
        }
        let after = project(fan.middle, s_right)?;
        regular.push(c, Segment::Constant(after));
        *flip = Some(c);
        Ok(after)
    };

    for (i, w) in fan.waves.iter().enumerate() {
        let is_last = i + 1 == n_waves;
        if sign_change && w.family == Family::Two {
            let lo = if i == 0 {
                f64::NEG_INFINITY
            } else {
                fan.waves[i - 1].speed_hi
            };
            prev = emit_flip(&mut regular, &mut flip, lo, w.speed_lo)?;
        }
        let sign = if sign_change && w.family == Family::Two {
            s_right
        } else {
            s_left
        };
        // before a trailing flip the last wave still ends on the left sign
        let exact_right = is_last && !(sign_change && w.family == Family::One);
        let right = if exact_right {
            data.right
        } else {
            project(w.right, sign)?
        };
        match w.kind {
            WaveKind::Shock => {
                let c = w.speed_lo;
                singular.push(DeltaSingularity::linear(c, strength_rate(prev, right, c), Component::V));
                regular.push(c, Segment::Constant(right));
            }
            WaveKind::Rarefaction => {
                let curve = Arc::new(w.curve.clone().expect("rarefaction carries its curve"));
                regular.push(
                    w.speed_lo,
                    Segment::Rarefaction {
                        family: w.family,
                        curve,
                        sign,
                    },
                );
                regular.push(w.speed_hi, Segment::Constant(right));
            }
        }
        prev = right;
    }
    if sign_change && flip.is_none() {
        // no family-2 wave: the flip follows the family-1 wave (or stands alone)
        let lo = fan.waves.last().map_or(f64::NEG_INFINITY, |w| w.speed_hi);
        emit_flip(&mut regular, &mut flip, lo, f64::INFINITY)?;
        // keep the given right datum bit-exact
        let n = regular.segments.len();
        regular.segments[n - 1] = Segment::Constant(data.right);
    }
    Ok(DeltaSolution {
        initial: data,
        regular,
        singular,
        fan: Some(fan),
        flip,
        flip_speed: Some(opts.flip_speed),
    })
}

/// A regular sample with the singular parts at the same time.
#[derive(Debug, Clone, PartialEq)]
pub struct BrioSample {
    pub state: BrioState,
    /// `(position c·t, strength β(t), component)` for each singularity.
    pub singular: Vec<(f64, f64, Component)>,
}

/// Regular state at `(x, t)` and the singular parts at time `t > 0`.
pub fn sample_brio(sol: &DeltaSolution, x: f64, t: f64) -> BrioSample {
    BrioSample {
        state: sol.regular.sample(x / t),
        singular: sol
            .singular
            .iter()
            .map(|s| (s.speed * t, s.strength(t), s.component))
            .collect(),
    }
}

/// Number of singularities with nonzero strength.
pub fn cardinality(sol: &DeltaSolution) -> usize {
    sol.singular.iter().filter(|s| s.is_nonzero()).count()
}

/// Zero data with two constant-strength δs `±beta` at speeds `c1`, `c2`.
/// Coinciding carriers are merged; zero strengths are dropped.
pub fn nonuniqueness_example(beta: f64, c1: f64, c2: f64) -> DeltaSolution {
    let zero = BrioState::new(0.0, 0.0);
    let mut singular = Vec::new();
    if c1 == c2 {
        // strengths cancel on a shared carrier
    } else if beta != 0.0 {
        for (c, b) in [(c1, beta), (c2, -beta)] {
            singular.push(DeltaSingularity {
                speed: c,
                strength_rate: 0.0,
                strength_constant: b,
                component: Component::V,
            });
        }
    }
    DeltaSolution {
        initial: RiemannData::new(zero, zero),
        regular: RegularPart::constant(zero),
        singular,
        fan: None,
        flip: None,
        flip_speed: None,
    }
}

/// The solution with `v` negated on each open interval `(a, b)` of `ξ`,
/// with δs recomputed from the new jumps at every discontinuity. Flipping `v`
/// maps smooth solutions to smooth solutions, so each result is again a weak
/// solution of the same Riemann problem; intervals must be finite and disjoint.
pub fn with_flipped_intervals(sol: &DeltaSolution, intervals: &[(f64, f64)]) -> DeltaSolution {
    let mut cuts: Vec<f64> = intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
    cuts.sort_by(f64::total_cmp);
    let flipped_at = |xi: f64| intervals.iter().any(|&(a, b)| xi > a && xi < b);

    let old = &sol.regular;
    let mut edges: Vec<f64> = old.edges.iter().copied().chain(cuts).collect();
    edges.sort_by(f64::total_cmp);
    let mut segments = Vec::with_capacity(edges.len() + 1);
    for i in 0..=edges.len() {
        let lo = if i == 0 { f64::NEG_INFINITY } else { edges[i - 1] };
        let hi = edges.get(i).copied().unwrap_or(f64::INFINITY);
        let probe = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo + 1.0,
            (false, true) => hi - 1.0,
            (false, false) => 0.0,
        };
        let base = old.segments[old.segment_index(probe)].clone();
        segments.push(if flipped_at(probe) { base.flipped() } else { base });
    }
    let regular = RegularPart { edges, segments };

    let mut singular: Vec<DeltaSingularity> = Vec::new();
    for k in 0..regular.edges.len() {
        let (l, r) = regular.limits(k);
        let jump = (r.u - l.u).abs() + (r.v - l.v).abs();
        if jump <= 1e-9 * (1.0 + l.v.abs() + l.u.abs()) {
            continue;
        }
        let c = regular.edges[k];
        if singular.last().is_some_and(|s| s.speed == c) {
            continue;
        }
        singular.push(DeltaSingularity::linear(c, strength_rate(l, r, c), Component::V));
    }
    DeltaSolution {
        initial: sol.initial,
        regular,
        singular,
        fan: sol.fan.clone(),
        flip: None,
        flip_speed: sol.flip_speed,
    }
}

#[derive(Serialize)]
struct StateJson {
    u: f64,
    v: f64,
}

impl From<BrioState> for StateJson {
    fn from(s: BrioState) -> Self {
        Self { u: s.u, v: s.v }
    }
}

#[derive(Serialize)]
struct InitialJson {
    left: StateJson,
    right: StateJson,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SegmentJson {
    Constant {
        xi_lo: Option<f64>,
        xi_hi: Option<f64>,
        state: StateJson,
    },
    Rarefaction {
        xi_lo: Option<f64>,
        xi_hi: Option<f64>,
        family: Family,
        sign: f64,
        left: StateJson,
        right: StateJson,
    },
}

#[derive(Serialize)]
struct SingularJson {
    speed: f64,
    rate: f64,
    constant: f64,
    component: Component,
}

#[derive(Serialize)]
struct OptionsJson {
    flip_speed: Option<FlipSpeed>,
}

#[derive(Serialize)]
struct SolutionJson {
    initial: InitialJson,
    regular: Vec<SegmentJson>,
    singular: Vec<SingularJson>,
    flip: Option<f64>,
    fan: Option<serde_json::Value>,
    options: OptionsJson,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl DeltaSolution {
    /// Speeds of all rays of the solution: regular edges and singular carriers.
    pub fn rays(&self) -> Vec<f64> {
        let mut rays: Vec<f64> = self
            .regular
            .edges
            .iter()
            .copied()
            .chain(self.singular.iter().map(|s| s.speed))
            .collect();
        rays.sort_by(f64::total_cmp);
        rays.dedup();
        rays
    }

    /// δ-solution export: `{initial, regular, singular, options}` plus the
    /// flip speed and the transformed fan when present. Unbounded segment
    /// ends are written as `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let regular = self
            .regular
            .segments
            .iter()
            .enumerate()
            .map(|(i, seg)| {
                let (lo, hi) = self.regular.bounds(i);
                match seg {
                    Segment::Constant(s) => SegmentJson::Constant {
                        xi_lo: finite(lo),
                        xi_hi: finite(hi),
                        state: (*s).into(),
                    },
                    Segment::Rarefaction { family, sign, .. } => SegmentJson::Rarefaction {
                        xi_lo: finite(lo),
                        xi_hi: finite(hi),
                        family: *family,
                        sign: *sign,
                        left: seg.at(lo).into(),
                        right: seg.at(hi).into(),
                    },
                }
            })
            .collect();
        let out = SolutionJson {
            initial: InitialJson {
                left: self.initial.left.into(),
                right: self.initial.right.into(),
            },
            regular,
            singular: self
                .singular
                .iter()
                .map(|s| SingularJson {
                    speed: s.speed,
                    rate: s.strength_rate,
                    constant: s.strength_constant,
                    component: s.component,
                })
                .collect(),
            flip: self.flip,
            fan: self.fan.as_ref().map(WaveFan::to_json),
            options: OptionsJson {
                flip_speed: self.flip_speed,
            },
        };
        serde_json::to_value(out).expect("solution serializes")
    }
}

/// `c[u] − [f]` across a carrier for the Brio flux (right minus left); zero
/// when the δ lives on the `v`-equation only.
pub fn u_equation_defect(l: BrioState, r: BrioState, c: f64) -> f64 {
    c * (r.u - l.u) - (BrioFlux.f(r) - BrioFlux.f(l))
}

/// `c[v] − [g]` minus the stored rate; zero for a consistent singularity.
pub fn deficit_identity_error(l: BrioState, r: BrioState, s: &DeltaSingularity) -> f64 {
    let (_, gl) = brio_flux(l);
    let (_, gr) = brio_flux(r);
    s.speed * (r.v - l.v) - (gr - gl) - s.strength_rate
}
