//! Weak-form residuals of δ-type solutions by Gauss–Legendre quadrature.
//!
//! For a test function `φ` the two identities
//!
//! ```text
//! ∫∫_{t>0} (U φ_t + f φ_x) + ∫ U₀ φ(x,0) + Σ ∫ α_i(t) (φ_t + c_i φ_x)(c_i t, t) dt = 0
//! ∫∫_{t>0} (V φ_t + g φ_x) + ∫ V₀ φ(x,0) + Σ ∫ β_i(t) (φ_t + c_i φ_x)(c_i t, t) dt = 0
//! ```
//!
//! hold for every weak δ-solution. The regular part is piecewise smooth in
//! `ξ = x/t`, so the `x`-integration is split at every ray `x = ξ_i t` and the
//! `t`-integration at the times rays enter or leave the support of `φ`. Each
//! `x`-piece is bisected until halving stops changing the result, which
//! resolves the square-root behaviour of `v` in rarefactions ending close to
//! the critical curve.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::delta::{Component, DeltaSolution};
use crate::error::{Error, Result};
use crate::state::FluxPair;

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Tensor bump `B(s_x)·B(s_t)` with `B(s) = (1 − s²)^p` on `|s| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub x0: f64,
    pub t0: f64,
    pub wx: f64,
    pub wt: f64,
    pub p: u32,
}

fn bump(s: f64, p: u32) -> (f64, f64) {
    if s.abs() >= 1.0 {
        return (0.0, 0.0);
    }
    let base = 1.0 - s * s;
    let lower = base.powi(p as i32 - 1);
    (lower * base, -2.0 * p as f64 * s * lower)
}

impl TestFunction {
    pub fn new(x0: f64, t0: f64, wx: f64, wt: f64, p: u32) -> Result<Self> {
        if p < 3 || !(wx > 0.0) || !(wt > 0.0) || !x0.is_finite() || !t0.is_finite() {
            return Err(Error::Precondition(format!(
                "test function needs p >= 3 and positive finite widths, got p = {p}, wx = {wx}, wt = {wt}"
            )));
        }
        Ok(Self { x0, t0, wx, wt, p })
    }

    /// `(φ, φ_x, φ_t)` at `(x, t)`.
    pub fn eval(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let (bx, dbx) = bump((x - self.x0) / self.wx, self.p);
        let (bt, dbt) = bump((t - self.t0) / self.wt, self.p);
        (bx * bt, dbx * bt / self.wx, bx * dbt / self.wt)
    }

    pub fn x_support(&self) -> (f64, f64) {
        (self.x0 - self.wx, self.x0 + self.wx)
    }

    pub fn t_support(&self) -> (f64, f64) {
        (self.t0 - self.wt, self.t0 + self.wt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per piece and axis.
    pub nodes: usize,
    /// Equal sub-panels per piece.
    pub panels: usize,
    /// Weight line terms by `√(1 + c²)` (arclength measure along the carrier).
    pub arclength: bool,
    /// Bisect `x`-pieces until halving no longer changes the integral.
    pub adaptive: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes: 32,
            panels: 1,
            arclength: false,
            adaptive: true,
        }
    }
}

/// Deepest bisection level of the adaptive `x`-integration.
const MAX_DEPTH: u32 = 60;

/// Integral of a pair of integrands on one interval, with the `L¹` mass used
/// to judge roundoff.
#[derive(Debug, Clone, Copy, Default)]
struct Pair {
    u: f64,
    v: f64,
    mass: f64,
}

impl std::ops::Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair {
            u: self.u + o.u,
            v: self.v + o.v,
            mass: self.mass + o.mass,
        }
    }
}

/// Composite Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pairs: Vec<(f64, f64)>,
    panels: usize,
    arclength: bool,
    adaptive: bool,
}

impl Quadrature {
    pub fn new(cfg: &QuadratureConfig) -> Result<Self> {
        let nodes = NonZeroUsize::new(cfg.nodes)
            .ok_or_else(|| Error::Precondition("quadrature needs at least one node".into()))?;
        if cfg.panels == 0 {
            return Err(Error::Precondition("quadrature needs at least one panel".into()));
        }
        Ok(Self {
            pairs: GaussLegendre::new(nodes).as_node_weight_pairs().to_vec(),
            panels: cfg.panels,
            arclength: cfg.arclength,
            adaptive: cfg.adaptive,
        })
    }

    fn pair_rule(&self, a: f64, b: f64, f: &mut impl FnMut(f64) -> (f64, f64)) -> Pair {
        let mut out = Pair::default();
        self.for_each_node(a, b, |x, w| {
            let (fu, fv) = f(x);
            out.u += w * fu;
            out.v += w * fv;
            out.mass += w * (fu.abs() + fv.abs());
        });
        out
    }

    /// Integral of `f` on `[a, b]`, bisecting until the two halves agree with
    /// the whole to roundoff level.
    fn integrate_pair(&self, a: f64, b: f64, f: &mut impl FnMut(f64) -> (f64, f64)) -> Result<Pair> {
        let whole = self.pair_rule(a, b, f);
        if !self.adaptive {
            return Ok(whole);
        }
        self.refine(a, b, whole, f, 0)
    }

    fn refine(&self, a: f64, b: f64, whole: Pair, f: &mut impl FnMut(f64) -> (f64, f64), depth: u32) -> Result<Pair> {
        let m = 0.5 * (a + b);
        let left = self.pair_rule(a, m, f);
        let right = self.pair_rule(m, b, f);
        let two = left + right;
        let diff = (two.u - whole.u).abs().max((two.v - whole.v).abs());
        if diff <= 1e-15 + 1e-13 * two.mass {
            return Ok(two);
        }
        if depth >= MAX_DEPTH || !(m > a && m < b) {
            return Err(Error::QuadratureFailure(format!(
                "x-integration on [{a}, {b}] did not settle (difference {diff:e})"
            )));
        }
        Ok(self.refine(a, m, left, f, depth + 1)? + self.refine(m, b, right, f, depth + 1)?)
    }

    /// Calls `f(x, w)` for every node `x` in `[a, b]` with its weight `w`.
    fn for_each_node(&self, a: f64, b: f64, mut f: impl FnMut(f64, f64)) {
        if !(b > a) {
            return;
        }
        let h = (b - a) / self.panels as f64;
        for k in 0..self.panels {
            let lo = a + h * k as f64;
            let half = 0.5 * h;
            let mid = lo + half;
            for &(x, w) in &self.pairs {
                f(mid + half * x, half * w);
            }
        }
    }

    /// `for_each_node` over consecutive pieces of a sorted break list.
    fn for_each_piecewise(&self, breaks: &[f64], mut f: impl FnMut(f64, f64)) {
        for win in breaks.windows(2) {
            self.for_each_node(win[0], win[1], &mut f);
        }
    }
}

/// Absolute residuals of the two weak identities for one test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakResidual {
    pub u: f64,
    pub v: f64,
}

impl WeakResidual {
    pub fn max(&self) -> f64 {
        self.u.max(self.v)
    }
}

fn sorted_breaks(lo: f64, hi: f64, inner: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut b = vec![lo, hi];
    b.extend(inner.filter(|&x| x > lo && x < hi));
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Residuals of both weak identities of `sol` against `phi`.
pub fn weak_residual<F: FluxPair + ?Sized>(
    sol: &DeltaSolution,
    flux: &F,
    phi: &TestFunction,
    quad: &Quadrature,
) -> Result<WeakResidual> {
    let (xa, xb) = phi.x_support();
    let (t_lo, tb) = phi.t_support();
    let ta = t_lo.max(0.0);
    let rays = sol.rays();
    let mut ru = Neumaier::default();
    let mut rv = Neumaier::default();

    // area term
    if tb > ta {
        let t_breaks = sorted_breaks(
            ta,
            tb,
            rays.iter().filter(|&&c| c != 0.0).flat_map(|&c| [xa / c, xb / c]),
        );
        let mut x_breaks = Vec::with_capacity(rays.len() + 2);
        let mut failure = None;
        quad.for_each_piecewise(&t_breaks, |t, wt| {
            if failure.is_some() {
                return;
            }
            x_breaks.clear();
            x_breaks.push(xa);
            x_breaks.extend(rays.iter().map(|&c| c * t).filter(|&x| x > xa && x < xb));
            x_breaks.push(xb);
            let mut integrand = |x: f64| {
                let s = sol.regular.sample(x / t);
                let (_, px, pt) = phi.eval(x, t);
                (s.u * pt + flux.f(s) * px, s.v * pt + flux.g(s) * px)
            };
            for w in x_breaks.windows(2) {
                match quad.integrate_pair(w[0], w[1], &mut integrand) {
                    Ok(p) => {
                        ru.add(wt * p.u);
                        rv.add(wt * p.v);
                    }
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }

    // initial data
    if t_lo < 0.0 {
        let init = sol.initial;
        quad.for_each_piecewise(&sorted_breaks(xa, xb, std::iter::once(0.0)), |x, w| {
            let s = if x < 0.0 { init.left } else { init.right };
            let (p, _, _) = phi.eval(x, 0.0);
            ru.add(w * s.u * p);
            rv.add(w * s.v * p);
        });
    }

    // singular carriers
    for d in &sol.singular {
        let c = d.speed;
        let scale = if quad.arclength { (1.0 + c * c).sqrt() } else { 1.0 };
        let breaks = if c == 0.0 {
            vec![ta, tb]
        } else {
            sorted_breaks(ta, tb, [xa / c, xb / c].into_iter())
        };
        let acc = match d.component {
            Component::U => &mut ru,
            Component::V => &mut rv,
        };
        quad.for_each_piecewise(&breaks, |t, w| {
            let (_, px, pt) = phi.eval(c * t, t);
            acc.add(w * scale * d.strength(t) * (pt + c * px));
        });
    }

    let out = WeakResidual {
        u: ru.value().abs(),
        v: rv.value().abs(),
    };
    if !out.u.is_finite() || !out.v.is_finite() {
        return Err(Error::QuadratureFailure(format!(
            "non-finite weak residual for test function centred at ({}, {})",
            phi.x0, phi.t0
        )));
    }
    Ok(out)
}

/// Residuals for every test function in `phis`.
pub fn weak_residuals<F: FluxPair + ?Sized>(
    sol: &DeltaSolution,
    flux: &F,
    phis: &[TestFunction],
    cfg: &QuadratureConfig,
) -> Result<Vec<WeakResidual>> {
    let quad = Quadrature::new(cfg)?;
    phis.iter().map(|phi| weak_residual(sol, flux, phi, &quad)).collect()
}

/// 25 test functions with centres on a 5×5 grid: `t₀ ∈ {0.2, …, 1.0}` and
/// `x₀` spanning the fan at `t = 1` with a margin. The earliest row reaches
/// below `t = 0` and so also tests the initial data.
pub fn battery(sol: &DeltaSolution) -> Vec<TestFunction> {
    let rays = sol.rays();
    let lo = rays.iter().copied().fold(0.0f64, f64::min) - 0.25;
    let hi = rays.iter().copied().fold(0.0f64, f64::max) + 0.25;
    let dx = (hi - lo) / 4.0;
    let wx = dx.max(0.3);
    let mut out = Vec::with_capacity(25);
    for i in 0..5 {
        let t0 = 0.2 + 0.2 * i as f64;
        for j in 0..5 {
            let x0 = lo + dx * j as f64;
            out.push(TestFunction {
                x0,
                t0,
                wx,
                wt: 0.4,
                p: 4,
            });
        }
    }
    out
}

/// Largest residual of either identity over [`battery`].
pub fn max_weak_residual<F: FluxPair + ?Sized>(sol: &DeltaSolution, flux: &F, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(weak_residuals(sol, flux, &battery(sol), cfg)?
        .iter()
        .map(WeakResidual::max)
        .fold(0.0, f64::max))
}

/// Default weak tolerance `1e-7·(1 + |data|∞)`.
pub fn tol_weak(sol: &DeltaSolution) -> f64 {
    1e-7 * (1.0 + sol.initial.sup_norm())
}
