//! Rarefaction curves: integral curves `dq/du = λ∓(u, q)` of the
//! energy–velocity system, integrated with an embedded Dormand–Prince 5(4)
//! pair and queried through cubic Hermite interpolation between accepted
//! steps.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{char_speed, Family, TransState};

/// Band below the critical curve that is clamped back onto it.
pub const TOL_CURVE: f64 = 1e-8;

const MAX_STEPS: usize = 5_000_000;

/// Integrator settings for rarefaction curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeConfig {
    /// Relative and absolute local error tolerance.
    pub tol: f64,
    /// Upper bound on the step length in `u`; keeps the Hermite dense output
    /// at the accuracy of the integrator itself.
    pub max_step: f64,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_step: 1.0 / 64.0,
        }
    }
}

/// One point of a wave curve together with the characteristic speed of the
/// curve's family there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub u: f64,
    pub q: f64,
    pub lambda: f64,
}

impl CurveSample {
    pub fn on_family(family: Family, u: f64, q: f64) -> Self {
        Self {
            u,
            q,
            lambda: char_speed(family, u, q),
        }
    }

    pub fn state(&self) -> TransState {
        TransState::new(self.u, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    IncreasingU,
    DecreasingU,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::IncreasingU => 1.0,
            Direction::DecreasingU => -1.0,
        }
    }
}

/// Integrated rarefaction curve. Samples are the accepted integrator steps in
/// integration order; the first sample is the base state. Along the curve the
/// sample `lambda` values are also the slopes `dq/du`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralCurve {
    pub family: Family,
    pub base: TransState,
    pub direction: Direction,
    pub samples: Vec<CurveSample>,
}

fn hermite(a: &CurveSample, b: &CurveSample, u: f64) -> f64 {
    let h = b.u - a.u;
    if h == 0.0 {
        return a.q;
    }
    let s = (u - a.u) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * a.q + h10 * h * a.lambda + h01 * b.q + h11 * h * b.lambda
}

fn hermite_slope(a: &CurveSample, b: &CurveSample, u: f64) -> f64 {
    let h = b.u - a.u;
    if h == 0.0 {
        return a.lambda;
    }
    let s = (u - a.u) / h;
    let s2 = s * s;
    let d00 = (6.0 * s2 - 6.0 * s) / h;
    let d10 = 3.0 * s2 - 4.0 * s + 1.0;
    let d01 = (-6.0 * s2 + 6.0 * s) / h;
    let d11 = 3.0 * s2 - 2.0 * s;
    d00 * a.q + d10 * a.lambda + d01 * b.q + d11 * b.lambda
}

/// Index `i` with `u` between `samples[i].u` and `samples[i + 1].u`, for
/// samples ordered monotonically in `u` in direction `dir`.
fn segment_index(samples: &[CurveSample], dir: f64, u: f64) -> Option<usize> {
    let n = samples.len();
    if n < 2 {
        return None;
    }
    let first = samples[0].u;
    let last = samples[n - 1].u;
    if dir * (u - first) < 0.0 || dir * (u - last) > 0.0 {
        return None;
    }
    let k = samples.partition_point(|s| dir * (s.u - u) <= 0.0);
    Some(k.clamp(1, n - 1) - 1)
}

fn interpolate(samples: &[CurveSample], dir: f64, u: f64) -> Option<f64> {
    if samples.len() == 1 {
        return (u == samples[0].u).then_some(samples[0].q);
    }
    segment_index(samples, dir, u).map(|i| hermite(&samples[i], &samples[i + 1], u))
}

impl IntegralCurve {
    fn dir(&self) -> f64 {
        self.direction.sign()
    }

    pub fn first(&self) -> TransState {
        self.samples[0].state()
    }

    pub fn last(&self) -> TransState {
        self.samples[self.samples.len() - 1].state()
    }

    /// `(min u, max u)` covered by the samples.
    pub fn u_range(&self) -> (f64, f64) {
        let a = self.samples[0].u;
        let b = self.samples[self.samples.len() - 1].u;
        (a.min(b), a.max(b))
    }

    /// Dense-output value `q(u)`; `None` outside the integrated range.
    pub fn q_at(&self, u: f64) -> Option<f64> {
        interpolate(&self.samples, self.dir(), u)
    }

    /// The state on the curve whose characteristic speed equals `xi`.
    ///
    /// Speeds are monotone along the curve (genuine nonlinearity), so the
    /// root is bracketed by a binary search over samples and then refined by
    /// bisection-safeguarded Newton iteration on the Hermite interpolant.
    /// Speeds outside the covered range clamp to the nearest endpoint.
    pub fn state_at_speed(&self, xi: f64) -> TransState {
        let n = self.samples.len();
        if n == 1 {
            return self.samples[0].state();
        }
        // lambda increases with u; in integration order it increases iff dir > 0
        let dir = self.dir();
        let first = &self.samples[0];
        let last = &self.samples[n - 1];
        if dir * (xi - first.lambda) <= 0.0 {
            return first.state();
        }
        if dir * (xi - last.lambda) >= 0.0 {
            return last.state();
        }
        let k = self.samples.partition_point(|s| dir * (s.lambda - xi) <= 0.0);
        let i = k.clamp(1, n - 1) - 1;
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let (mut lo, mut hi) = if a.u < b.u { (a.u, b.u) } else { (b.u, a.u) };
        let family = self.family;
        let residual = |u: f64| {
            let q = hermite(a, b, u);
            (q, char_speed(family, u, q) - xi)
        };
        // secant start from the sample speeds
        let mut u = a.u + (xi - a.lambda) * (b.u - a.u) / (b.lambda - a.lambda);
        if !(u > lo && u < hi) {
            u = 0.5 * (lo + hi);
        }
        let scale = 1e-15 * (1.0 + xi.abs());
        for _ in 0..100 {
            let (q, r) = residual(u);
            if r.abs() <= scale {
                return TransState::new(u, q);
            }
            if r > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let root = (8.0 * q - 4.0 * u * u + 1.0).max(1e-300).sqrt();
            let slope = hermite_slope(a, b, u);
            let dlam = match family {
                Family::One => 1.0 + 2.0 * u / root - 2.0 / root * slope,
                Family::Two => 1.0 - 2.0 * u / root + 2.0 / root * slope,
            };
            let mut next = u - r / dlam;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (hi - lo) <= 4.0 * f64::EPSILON * (1.0 + u.abs()) {
                break;
            }
            u = next;
        }
        TransState::new(u, hermite(a, b, u))
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// What happened during one accepted step.
#[derive(Debug, Clone, Copy)]
enum StepEvent {
    Accepted(CurveSample),
    /// The curve left the physical domain; the sample lies on `q = u²/2`.
    Crossed(CurveSample),
}

/// Slope of the gap `g = q − u²/2` along a rarefaction curve: `λ − u`,
/// which depends on `g` alone since `8q − 4u² + 1 = 8g + 1`.
#[inline]
fn gap_slope(family: Family, g: f64) -> f64 {
    let root = (8.0 * g + 1.0).max(0.0).sqrt();
    match family {
        Family::One => -0.5 - 0.5 * root,
        // (√(8g+1) − 1)/2 without cancellation near the critical curve
        Family::Two => 4.0 * g / (root + 1.0),
    }
}

/// Dormand–Prince 5(4) integrator for the gap `g = q − u²/2`. The second
/// family has `g = 0` as an exact fixed point, so the critical curve is
/// reproduced without roundoff drift.
#[derive(Debug, Clone)]
struct Stepper {
    family: Family,
    dir: f64,
    u: f64,
    g: f64,
    slope: f64,
    h: f64,
    cfg: OdeConfig,
    steps: usize,
}

impl Stepper {
    fn new(family: Family, base: TransState, dir: f64, cfg: OdeConfig) -> Self {
        let g = base.q - 0.5 * base.u * base.u;
        let g = if family == Family::Two { g.max(0.0) } else { g };
        Self {
            family,
            dir,
            u: base.u,
            g,
            slope: gap_slope(family, g),
            h: cfg.max_step.min(1e-2),
            cfg,
            steps: 0,
        }
    }

    fn rhs(&self, g: f64) -> f64 {
        gap_slope(self.family, g)
    }

    fn sample(&self, u: f64, g: f64, slope: f64) -> CurveSample {
        CurveSample {
            u,
            q: 0.5 * u * u + g,
            lambda: u + slope,
        }
    }

    /// Advances by one accepted step, never past `limit` when given.
    fn step(&mut self, limit: Option<f64>) -> Result<StepEvent> {
        let tol = self.cfg.tol;
        loop {
            self.steps += 1;
            if self.steps > MAX_STEPS {
                return Err(Error::StepFailure {
                    u: self.u,
                    reason: "step budget exhausted".into(),
                });
            }
            let mut h = self.h.min(self.cfg.max_step);
            let mut clipped = false;
            if let Some(target) = limit {
                let remaining = self.dir * (target - self.u);
                if remaining <= h {
                    h = remaining;
                    clipped = true;
                }
            }
            if !(h > 16.0 * f64::EPSILON * (1.0 + self.u.abs())) && !clipped {
                return Err(Error::StepFailure {
                    u: self.u,
                    reason: format!("step size underflow (h = {h:e})"),
                });
            }
            let hs = self.dir * h;
            let (u, g) = (self.u, self.g);
            let k1 = self.slope;
            let k2 = self.rhs(g + hs * A21 * k1);
            let k3 = self.rhs(g + hs * (A31 * k1 + A32 * k2));
            let k4 = self.rhs(g + hs * (A41 * k1 + A42 * k2 + A43 * k3));
            let k5 = self.rhs(g + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            let k6 = self.rhs(g + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
            let g_new = g + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            let u_new = if clipped { limit.unwrap() } else { u + hs };
            let k7 = self.rhs(g_new);
            let err = hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let q = 0.5 * u * u + g;
            let q_new = 0.5 * u_new * u_new + g_new;
            let scale = tol * (1.0 + q.abs().max(q_new.abs()));
            let ratio = err.abs() / scale;
            if !ratio.is_finite() {
                self.h = 0.25 * h;
                continue;
            }
            if ratio > 1.0 {
                self.h = h * (0.9 * ratio.powf(-0.2)).max(0.2);
                continue;
            }
            if !clipped {
                let grow = if ratio == 0.0 {
                    5.0
                } else {
                    (0.9 * ratio.powf(-0.2)).min(5.0)
                };
                self.h = h * grow;
            }
            let prev = self.sample(u, g, k1);
            return Ok(self.accept(prev, u_new, g_new, k7));
        }
    }

    fn accept(&mut self, prev: CurveSample, u: f64, g: f64, slope: f64) -> StepEvent {
        if g >= 0.0 {
            self.set(u, g, slope);
            return StepEvent::Accepted(self.sample(u, g, slope));
        }
        match self.family {
            Family::Two if g >= -TOL_CURVE * (1.0 + u * u) => {
                // critical curve is invariant for the second family; clamp roundoff
                let slope = self.rhs(0.0);
                self.set(u, 0.0, slope);
                StepEvent::Accepted(self.sample(u, 0.0, slope))
            }
            _ => {
                let next = self.sample(u, g, slope);
                let uc = crossing(&prev, &next);
                let sample = CurveSample::on_family(self.family, uc, 0.5 * uc * uc);
                self.set(uc, 0.0, sample.lambda - uc);
                StepEvent::Crossed(sample)
            }
        }
    }

    fn set(&mut self, u: f64, g: f64, slope: f64) {
        self.u = u;
        self.g = g;
        self.slope = slope;
    }
}

/// Location of `q = u²/2` on the Hermite segment `a → b`, given that `a` is
/// on or above the critical curve and `b` below it.
fn crossing(a: &CurveSample, b: &CurveSample) -> f64 {
    let gap = |u: f64| hermite(a, b, u) - 0.5 * u * u;
    let (mut inside, mut outside) = (a.u, b.u);
    if gap(inside) <= 0.0 {
        return inside;
    }
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if gap(mid) >= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

/// Integrates the rarefaction curve of `family` from `base` to `u_target`.
///
/// Integration toward decreasing `u` is allowed; it produces inverse curves.
/// Fails with [`Error::Domain`] if the curve leaves `q >= u²/2` before
/// reaching `u_target` (which the first family eventually does).
pub fn rw_integrate(family: Family, base: TransState, u_target: f64, cfg: &OdeConfig) -> Result<IntegralCurve> {
    base.check_physical()?;
    if !u_target.is_finite() {
        return Err(Error::Precondition(format!("non-finite target u = {u_target}")));
    }
    let direction = if u_target >= base.u {
        Direction::IncreasingU
    } else {
        Direction::DecreasingU
    };
    let mut samples = vec![CurveSample::on_family(family, base.u, base.q)];
    let mut stepper = Stepper::new(family, base, direction.sign(), *cfg);
    while samples[samples.len() - 1].u != u_target {
        match stepper.step(Some(u_target))? {
            StepEvent::Accepted(s) => samples.push(s),
            StepEvent::Crossed(s) => {
                return Err(Error::Domain(format!(
                    "rarefaction curve of family {} from ({}, {}) reaches q = u²/2 at u = {} before u = {}",
                    family.index(),
                    base.u,
                    base.q,
                    s.u,
                    u_target
                )));
            }
        }
    }
    Ok(IntegralCurve {
        family,
        base,
        direction,
        samples,
    })
}

/// Value of a lazily integrated branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchValue {
    Value(f64),
    /// The branch left the physical domain at `crossing` before reaching `u`.
    BelowCritical {
        crossing: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum BranchEnd {
    Open,
    Critical(f64),
    /// Numerically merged with `q = u²/2`, which is invariant beyond this `u`.
    Merged(f64),
    Failed(Error),
}

#[derive(Debug)]
struct BranchInner {
    samples: Vec<CurveSample>,
    stepper: Stepper,
    end: BranchEnd,
}

/// Rarefaction curve that is integrated on demand and memoized.
///
/// Steps are never clipped to query points, so the step sequence (and hence
/// every returned value) does not depend on the order of queries.
#[derive(Debug)]
pub struct RarefactionBranch {
    family: Family,
    base: TransState,
    dir: f64,
    inner: Mutex<BranchInner>,
}

impl RarefactionBranch {
    pub fn new(family: Family, base: TransState, direction: Direction, cfg: &OdeConfig) -> Self {
        let dir = direction.sign();
        Self {
            family,
            base,
            dir,
            inner: Mutex::new(BranchInner {
                samples: vec![CurveSample::on_family(family, base.u, base.q)],
                stepper: Stepper::new(family, base, dir, *cfg),
                end: BranchEnd::Open,
            }),
        }
    }

    pub fn base(&self) -> TransState {
        self.base
    }

    pub fn eval(&self, u: f64) -> Result<BranchValue> {
        if !u.is_finite() || self.dir * (u - self.base.u) < 0.0 {
            return Err(Error::Precondition(format!(
                "u = {u} is on the wrong side of the branch base u = {}",
                self.base.u
            )));
        }
        let mut inner = self.inner.lock().unwrap_or_else(|e| e.into_inner());
        loop {
            let last = inner.samples[inner.samples.len() - 1];
            if self.dir * (last.u - u) >= 0.0 {
                break;
            }
            match inner.end.clone() {
                BranchEnd::Open => {}
                BranchEnd::Critical(uc) => return Ok(BranchValue::BelowCritical { crossing: uc }),
                BranchEnd::Merged(_) => return Ok(BranchValue::Value(0.5 * u * u)),
                BranchEnd::Failed(e) => return Err(e),
            }
            let gap = last.q - 0.5 * last.u * last.u;
            // backward second-family curves converge onto q = u²/2; forward
            // ones diverge from it unless they start exactly on it
            if self.family == Family::Two
                && ((self.dir < 0.0 && gap <= 4.0 * f64::EPSILON * (1.0 + last.q.abs())) || gap == 0.0)
            {
                inner.end = BranchEnd::Merged(last.u);
                continue;
            }
            match inner.stepper.step(None) {
                Ok(StepEvent::Accepted(s)) => inner.samples.push(s),
                Ok(StepEvent::Crossed(s)) => {
                    inner.samples.push(s);
                    inner.end = BranchEnd::Critical(s.u);
                }
                Err(e) => {
                    inner.end = BranchEnd::Failed(e.clone());
                    return Err(e);
                }
            }
        }
        let q = interpolate(&inner.samples, self.dir, u).expect("u is inside the integrated range");
        Ok(BranchValue::Value(q))
    }

    /// Copy of the samples integrated so far.
    pub fn samples(&self) -> Vec<CurveSample> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner()).samples.clone()
    }

    pub fn family(&self) -> Family {
        self.family
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `s - ln(1 + s) + 2u` is constant along first-family curves, with
    /// `s = √(8q - 4u² + 1)`.
    fn rw1_invariant(u: f64, q: f64) -> f64 {
        let s = (8.0 * q - 4.0 * u * u + 1.0).sqrt();
        s - (1.0 + s).ln() + 2.0 * u
    }

    /// `s + ln(s - 1) - 2u` is constant along second-family curves off the
    /// critical curve.
    fn rw2_invariant(u: f64, q: f64) -> f64 {
        let s = (8.0 * q - 4.0 * u * u + 1.0).sqrt();
        s + (s - 1.0).ln() - 2.0 * u
    }

    #[test]
    fn zero_length_curve_is_the_base() {
        let base = TransState::new(1.0, 5.0);
        let c = rw_integrate(Family::One, base, 1.0, &OdeConfig::default()).unwrap();
        assert_eq!(c.samples.len(), 1);
        assert_eq!(c.first(), base);
        assert_eq!(c.q_at(1.0), Some(5.0));
        assert_eq!(c.state_at_speed(-10.0), base);
    }

    #[test]
    fn first_family_matches_implicit_solution() {
        let base = TransState::new(1.0, 5.0);
        let c = rw_integrate(Family::One, base, 2.0, &OdeConfig::default()).unwrap();
        let k = rw1_invariant(base.u, base.q);
        for s in &c.samples {
            assert!((rw1_invariant(s.u, s.q) - k).abs() < 1e-9, "{s:?}");
        }
        // dense output between the knots
        for i in 0..=100 {
            let u = 1.0 + i as f64 / 100.0;
            let q = c.q_at(u).unwrap();
            assert!((rw1_invariant(u, q) - k).abs() < 1e-9, "u = {u}");
        }
        assert_eq!(c.last().u, 2.0);
    }

    #[test]
    fn second_family_backward_matches_implicit_solution() {
        let base = TransState::new(0.7, 7.0);
        let c = rw_integrate(Family::Two, base, -3.0, &OdeConfig::default()).unwrap();
        assert_eq!(c.direction, Direction::DecreasingU);
        let k = rw2_invariant(base.u, base.q);
        for i in 0..=370 {
            let u = 0.7 - i as f64 / 100.0;
            let q = c.q_at(u).unwrap();
            assert!(q > 0.5 * u * u);
            assert!((rw2_invariant(u, q) - k).abs() < 1e-8, "u = {u}");
        }
    }

    #[test]
    fn first_family_leaves_domain() {
        // crossing predicted by the implicit solution: s = 1 there
        let base = TransState::new(1.0, 5.0);
        let uc = base.u + (rw1_invariant(base.u, base.q) - (1.0 - 2f64.ln()) - 2.0 * base.u) / 2.0;
        let err = rw_integrate(Family::One, base, 4.0, &OdeConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let branch = RarefactionBranch::new(Family::One, base, Direction::IncreasingU, &OdeConfig::default());
        match branch.eval(4.0).unwrap() {
            BranchValue::BelowCritical { crossing } => assert!((crossing - uc).abs() < 1e-8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn branch_results_do_not_depend_on_query_order() {
        let base = TransState::new(0.7, 7.0);
        let cfg = OdeConfig::default();
        let a = RarefactionBranch::new(Family::Two, base, Direction::DecreasingU, &cfg);
        let b = RarefactionBranch::new(Family::Two, base, Direction::DecreasingU, &cfg);
        let qa1 = a.eval(0.2).unwrap();
        let qa2 = a.eval(-2.0).unwrap();
        let qb2 = b.eval(-2.0).unwrap();
        let qb1 = b.eval(0.2).unwrap();
        assert_eq!(qa1, qb1);
        assert_eq!(qa2, qb2);
    }

    #[test]
    fn backward_second_family_merges_with_critical_curve() {
        let base = TransState::new(0.0, 1.0);
        let branch = RarefactionBranch::new(Family::Two, base, Direction::DecreasingU, &OdeConfig::default());
        match branch.eval(-60.0).unwrap() {
            BranchValue::Value(q) => assert!((q - 1800.0).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn speed_inversion() {
        let base = TransState::new(-0.5, 2.0);
        let c = rw_integrate(Family::Two, base, 1.5, &OdeConfig::default()).unwrap();
        let (lo, hi) = (c.samples[0].lambda, c.samples[c.samples.len() - 1].lambda);
        for i in 1..50 {
            let xi = lo + (hi - lo) * i as f64 / 50.0;
            let s = c.state_at_speed(xi);
            assert!((char_speed(Family::Two, s.u, s.q) - xi).abs() < 1e-12);
            assert!((c.q_at(s.u).unwrap() - s.q).abs() < 1e-14);
        }
    }
}
