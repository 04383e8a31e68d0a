//! State types, fluxes and eigenstructure of the Brio system and of its
//! energy–velocity form.
//!
//! The Brio system conserves the two velocity components `(u, v)`:
//!
//! ```text
//! u_t + ((u² + v²)/2)_x = 0
//! v_t + (v (u - 1))_x   = 0
//! ```
//!
//! Replacing `v` by the energy `q = (u² + v²)/2` gives a system in `(u, q)`
//! that is strictly hyperbolic and genuinely nonlinear on the whole physical
//! domain `q >= u²/2`:
//!
//! ```text
//! u_t + q_x = 0
//! q_t + ((2u - 1) q + u²/2 - 2u³/3)_x = 0
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for "on or above the critical curve" checks, relative to `1 + u²`.
pub const TOL_DOMAIN: f64 = 1e-12;

/// Tolerance for jump degeneracy in speed formulas.
pub const TOL_ZERO: f64 = 1e-14;

/// Physical state of the Brio system: the two velocity components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrioState {
    pub u: f64,
    pub v: f64,
}

/// State of the energy–velocity system: velocity `u` and energy `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransState {
    pub u: f64,
    pub q: f64,
}

/// Piecewise-constant initial data with a single jump at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannData {
    pub left: BrioState,
    pub right: BrioState,
}

impl BrioState {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    pub fn energy(&self) -> f64 {
        energy(*self)
    }

    pub fn lift(&self) -> TransState {
        lift(*self)
    }
}

impl TransState {
    pub const fn new(u: f64, q: f64) -> Self {
        Self { u, q }
    }

    /// `2q - u²`, i.e. `v²` of the corresponding Brio state.
    pub fn v_squared(&self) -> f64 {
        2.0 * self.q - self.u * self.u
    }

    /// `8q - 4u² + 1`, the discriminant of the characteristic polynomial.
    pub fn discriminant(&self) -> f64 {
        4.0 * self.v_squared() + 1.0
    }

    /// Whether the state lies on or above `q = u²/2` within [`TOL_DOMAIN`].
    pub fn is_physical(&self) -> bool {
        self.u.is_finite() && self.q.is_finite() && self.v_squared() >= -TOL_DOMAIN * (1.0 + self.u * self.u)
    }

    pub fn check_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "state (u, q) = ({}, {}) lies below the critical curve q = u²/2",
                self.u, self.q
            )))
        }
    }
}

impl RiemannData {
    pub const fn new(left: BrioState, right: BrioState) -> Self {
        Self { left, right }
    }

    pub fn from_components(ul: f64, vl: f64, ur: f64, vr: f64) -> Self {
        Self::new(BrioState::new(ul, vl), BrioState::new(ur, vr))
    }

    /// Largest absolute component of the data.
    pub fn sup_norm(&self) -> f64 {
        [self.left.u, self.left.v, self.right.u, self.right.v]
            .iter()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }
}

/// Energy `q = (u² + v²)/2`.
pub fn energy(s: BrioState) -> f64 {
    0.5 * (s.u * s.u + s.v * s.v)
}

/// Maps `(u, v)` to `(u, (u² + v²)/2)`.
pub fn lift(s: BrioState) -> TransState {
    TransState::new(s.u, energy(s))
}

/// Inverse of [`lift`] on the branch selected by `sign` (`v = sign·√(2q − u²)`).
///
/// Roundoff below the critical curve (within [`TOL_DOMAIN`]) is clamped to `v = 0`.
pub fn project(t: TransState, sign: f64) -> Result<BrioState> {
    t.check_physical()?;
    let v = t.v_squared().max(0.0).sqrt();
    Ok(BrioState::new(t.u, if sign < 0.0 { -v } else { v }))
}

/// Flux of the Brio system: `((u² + v²)/2, v(u − 1))`.
pub fn brio_flux(s: BrioState) -> (f64, f64) {
    (energy(s), s.v * (s.u - 1.0))
}

/// Second flux component of the energy–velocity system.
pub fn energy_flux(u: f64, q: f64) -> f64 {
    (2.0 * u - 1.0) * q + 0.5 * u * u - 2.0 * u * u * u / 3.0
}

/// Flux of the energy–velocity system: `(q, (2u − 1)q + u²/2 − 2u³/3)`.
pub fn trans_flux(t: TransState) -> (f64, f64) {
    (t.q, energy_flux(t.u, t.q))
}

/// Characteristic speeds and right eigenvectors of the energy–velocity system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub r_minus: [f64; 2],
    pub r_plus: [f64; 2],
}

fn checked_discriminant(t: TransState) -> Result<f64> {
    let d = t.discriminant();
    if !d.is_finite() || d < -TOL_DOMAIN * (1.0 + t.u * t.u) {
        return Err(Error::Domain(format!(
            "negative discriminant 8q - 4u² + 1 = {d} at (u, q) = ({}, {})",
            t.u, t.q
        )));
    }
    Ok(d.max(0.0))
}

/// `λ∓ = (2u − 1 ∓ √(8q − 4u² + 1))/2` and `r∓ = (1, λ∓)`.
pub fn eigen_trans(t: TransState) -> Result<Eigen> {
    let root = checked_discriminant(t)?.sqrt();
    let lambda_minus = 0.5 * (2.0 * t.u - 1.0 - root);
    let lambda_plus = 0.5 * (2.0 * t.u - 1.0 + root);
    Ok(Eigen {
        lambda_minus,
        lambda_plus,
        r_minus: [1.0, lambda_minus],
        r_plus: [1.0, lambda_plus],
    })
}

/// Characteristic speed of `family` (1 → λ−, 2 → λ+) without domain checks.
///
/// Negative discriminants are clamped to zero; callers that care about the
/// domain use [`eigen_trans`].
#[inline]
pub fn char_speed(family: Family, u: f64, q: f64) -> f64 {
    let root = (8.0 * q - 4.0 * u * u + 1.0).max(0.0).sqrt();
    match family {
        Family::One => u - 0.5 - 0.5 * root,
        Family::Two => u - 0.5 + 0.5 * root,
    }
}

/// Flux Jacobian of the energy–velocity system.
pub fn trans_jacobian(t: TransState) -> [[f64; 2]; 2] {
    [[0.0, 1.0], [2.0 * t.q + t.u - 2.0 * t.u * t.u, 2.0 * t.u - 1.0]]
}

/// `(∇λ−·r−, ∇λ+·r+) = (2 + 1/√D, 2 − 1/√D)` with `D = 8q − 4u² + 1`.
pub fn genuine_nonlinearity(t: TransState) -> Result<(f64, f64)> {
    let d = t.discriminant();
    if !(d > 0.0) {
        return Err(Error::Domain(format!(
            "non-positive discriminant {d} at (u, q) = ({}, {})",
            t.u, t.q
        )));
    }
    let inv = 1.0 / d.sqrt();
    Ok((2.0 + inv, 2.0 - inv))
}

/// Characteristic speeds of the Brio system, `u − 1/2 ∓ √(v² + 1/4)`.
pub fn eigen_brio(s: BrioState) -> (f64, f64) {
    let root = (s.v * s.v + 0.25).sqrt();
    (s.u - 0.5 - root, s.u - 0.5 + root)
}

/// Shock speed `[f]/[u]` of the first Brio equation.
pub fn brio_shock_speed(l: BrioState, r: BrioState) -> Result<f64> {
    let du = l.u - r.u;
    if du.abs() < TOL_ZERO {
        return Err(Error::DegenerateJump(format!(
            "U_L = {} and U_R = {} coincide; use [g]/[v] instead",
            l.u, r.u
        )));
    }
    Ok(0.5 * (l.u + r.u) + (l.v * l.v - r.v * r.v) / (2.0 * du))
}

/// Characteristic family of the energy–velocity system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Family {
    One,
    Two,
}

impl Family {
    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

impl From<Family> for u8 {
    fn from(f: Family) -> u8 {
        f.index()
    }
}

impl TryFrom<u8> for Family {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            other => Err(format!("family must be 1 or 2, got {other}")),
        }
    }
}

/// Flux pair `(f, g)` of a 2×2 system `u_t + f(u,v)_x = 0`, `v_t + g(u,v)_x = 0`.
pub trait FluxPair {
    fn f(&self, s: BrioState) -> f64;
    fn g(&self, s: BrioState) -> f64;
}

/// `f = (u² + v²)/2`, `g = v(u − 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BrioFlux;

/// `f = u²/2`, `g = v(u − 1)`: linear in `v`, the classic δ-shock model.
#[derive(Debug, Clone, Copy, Default)]
pub struct TriangularFlux;

impl FluxPair for BrioFlux {
    fn f(&self, s: BrioState) -> f64 {
        energy(s)
    }

    fn g(&self, s: BrioState) -> f64 {
        s.v * (s.u - 1.0)
    }
}

impl FluxPair for TriangularFlux {
    fn f(&self, s: BrioState) -> f64 {
        0.5 * s.u * s.u
    }

    fn g(&self, s: BrioState) -> f64 {
        s.v * (s.u - 1.0)
    }
}
