//! Seeded property suite: every check returns a named measurement with its
//! tolerance so that failures are reported rather than raised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::delta::{
    cardinality, deficit_identity_error, nonuniqueness_example, solve_brio, u_equation_defect, with_flipped_intervals,
    BrioOptions, DeltaSolution, FlipSpeed, Segment, TOL_ORDER,
};
use crate::error::Result;
use crate::riemann::{build_fan_with, forward_construct, lax_check, sample_fan, Region, SolverConfig, Wave, WaveFan};
use crate::state::{lift, BrioFlux, BrioState, Family, RiemannData, TransState};
use crate::wave_curves::{rh_residuals, rw_integrate, sw1_q, sw2_q, OdeConfig};

use super::quadrature::{max_weak_residual, QuadratureConfig};

/// One named measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `measured <= tolerance` (NaN fails).
    pub fn at_most(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            passed: measured <= tolerance,
            measured,
            tolerance,
        }
    }

    /// Passes when `measured >= tolerance` (NaN fails).
    pub fn at_least(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            passed: measured >= tolerance,
            measured,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// `{checks: [{name, passed, measured, tolerance}], seed}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random state pairs for the Riemann-solver checks.
    pub riemann_pairs: usize,
    /// Brio problems per (region, sign) class.
    pub brio_per_class: usize,
    /// Problems fed to the minimality enumerator.
    pub minimality_problems: usize,
    pub options: BrioOptions,
    pub quadrature: QuadratureConfig,
    /// Bound on weak residuals normalized by `1 + |data|∞`.
    pub tol_weak: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            riemann_pairs: 200,
            brio_per_class: 2,
            minimality_problems: 2,
            options: BrioOptions::default(),
            quadrature: QuadratureConfig::default(),
            tol_weak: 1e-7,
        }
    }
}

pub const REGIONS: [Region; 4] = [Region::I, Region::II, Region::III, Region::IV];

/// Number of δs expected for a transformed fan of `region`.
pub fn expected_cardinality(region: Region) -> usize {
    match region {
        Region::I => 0,
        Region::II | Region::III => 1,
        Region::IV => 2,
        Region::Degenerate => usize::MAX,
    }
}

/// Random state with `q >= u²/2 + margin`; a quarter of the zero-margin
/// states lie exactly on the critical curve.
pub fn random_trans_state<R: Rng>(rng: &mut R, margin: f64) -> TransState {
    let u = rng.gen_range(-3.0..3.0);
    let extra = if margin == 0.0 && rng.gen_bool(0.25) {
        0.0
    } else {
        rng.gen_range(0.0..2.0)
    };
    TransState::new(u, 0.5 * u * u + margin + extra)
}

/// Brio data whose transformed fan lies in `region`, built by walking the
/// forward curves from a random left state. Retries until the construction
/// stays inside the physical domain.
pub fn random_problem<R: Rng>(rng: &mut R, region: Region, sign_change: bool, ode: &OdeConfig) -> RiemannData {
    loop {
        let ul = rng.gen_range(-1.5..1.5);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let left = BrioState::new(ul, sign * rng.gen_range(0.5..2.5));
        let d1 = rng.gen_range(0.1..1.0);
        let d2 = rng.gen_range(0.1..1.0);
        let (um, ur) = match region {
            Region::I => (ul + d1, ul + d1 + d2),
            Region::II => (ul - d1, ul - d1 + d2),
            Region::III => (ul + d1, ul + d1 - d2),
            Region::IV => (ul - d1, ul - d1 - d2),
            Region::Degenerate => (ul, ul + d2),
        };
        let Ok((m, r)) = forward_construct(lift(left), um, ur, ode) else {
            continue;
        };
        if m.v_squared() < 1e-4 || r.v_squared() < 1e-4 {
            continue;
        }
        let right_sign = if sign_change { -sign } else { sign };
        let right = BrioState::new(r.u, right_sign * r.v_squared().sqrt());
        return RiemannData::new(left, right);
    }
}

/// Critical-curve invariance of the 2-rarefactions: integrating from
/// `(u₀, u₀²/2)` over `|Δu| = 5` in both directions stays on `q = u²/2`.
pub fn critical_curve_invariance(ode: &OdeConfig) -> Check {
    let mut worst = 0.0f64;
    for u0 in [-2.0, 0.0, 1.0, 3.0] {
        for target in [u0 + 5.0, u0 - 5.0] {
            match rw_integrate(Family::Two, TransState::new(u0, 0.5 * u0 * u0), target, ode) {
                Ok(curve) => {
                    for s in &curve.samples {
                        worst = worst.max((s.q - 0.5 * s.u * s.u).abs());
                    }
                }
                Err(_) => worst = f64::INFINITY,
            }
        }
    }
    Check::at_most("critical_curve_invariance", worst, 1e-8)
}

/// Characteristic speeds increase along rarefaction curves, and across a
/// 1-rarefaction `λ−(L) < λ−(R)`. Measures the smallest `Δλ/Δu`.
pub fn lambda_monotonicity<R: Rng>(rng: &mut R, n: usize, ode: &OdeConfig) -> Check {
    let mut worst = f64::INFINITY;
    for k in 0..n {
        let base = random_trans_state(rng, 0.1);
        let family = if k % 2 == 0 { Family::One } else { Family::Two };
        let target = base.u + rng.gen_range(0.2..1.5);
        let Ok(curve) = rw_integrate(family, base, target, ode) else {
            continue;
        };
        for w in curve.samples.windows(2) {
            let du = w[1].u - w[0].u;
            if du > 0.0 {
                worst = worst.min((w[1].lambda - w[0].lambda) / du);
            }
        }
    }
    Check::at_least("lambda_monotonicity", worst, f64::MIN_POSITIVE)
}

/// Shock-curve function `(base, u_R) -> q_R`.
pub type ShockCurve = fn(TransState, f64) -> Result<f64>;

/// Rankine–Hugoniot residuals and Lax admissibility of points on the given
/// 1- and 2-shock curves.
pub fn shock_curve_checks<R: Rng>(rng: &mut R, n: usize, sw1: ShockCurve, sw2: ShockCurve) -> Vec<Check> {
    let mut rh = 0.0f64;
    let mut lax_failures = 0usize;
    for _ in 0..n {
        let base = random_trans_state(rng, 0.1);
        let u_r = base.u - rng.gen_range(0.01..2.0);
        for (family, curve) in [(Family::One, sw1), (Family::Two, sw2)] {
            let Ok(q_r) = curve(base, u_r) else {
                lax_failures += 1;
                continue;
            };
            let right = TransState::new(u_r, q_r);
            if !right.is_physical() {
                continue;
            }
            let w = Wave::shock(family, base, right);
            let (r1, r2) = rh_residuals(base, right, w.speed());
            rh = rh.max((r1.abs() + r2.abs()) / (1.0 + base.q.abs() + q_r.abs()));
            if !lax_check(&w) {
                lax_failures += 1;
            }
        }
    }
    vec![
        Check::at_most("shock_rh_residual", rh, 1e-10),
        Check::at_most("shock_lax_failures", lax_failures as f64, 0.0),
    ]
}

/// Fan invariants for one pair; returns `(middle residual, domain gap, lax failures, ordered)`.
fn fan_invariants(fan: &WaveFan) -> (f64, f64, usize, bool) {
    let m = fan.middle;
    let lax = fan.shocks().filter(|w| !lax_check(w)).count();
    (fan.residual, m.q - 0.5 * m.u * m.u, lax, fan.is_ordered())
}

/// Middle-state residual, domain, Lax and ordering over random pairs with
/// margins `{0, 0.1, 1, 10}` above the critical curve, plus the figure pair.
pub fn riemann_checks<R: Rng>(rng: &mut R, n: usize, cfg: &SolverConfig) -> Vec<Check> {
    let margins = [0.0, 0.1, 1.0, 10.0];
    let mut pairs = vec![(TransState::new(1.0, 5.0), TransState::new(0.7, 7.0))];
    for k in 0..n {
        let m = margins[k % margins.len()];
        pairs.push((random_trans_state(rng, m), random_trans_state(rng, m)));
    }
    let (mut res, mut gap, mut lax, mut unordered, mut errors) = (0.0f64, f64::INFINITY, 0usize, 0usize, 0usize);
    for (l, r) in pairs {
        match build_fan_with(l, r, cfg) {
            Ok(fan) => {
                let (a, b, c, ordered) = fan_invariants(&fan);
                res = res.max(a);
                gap = gap.min(b);
                lax += c;
                unordered += usize::from(!ordered);
            }
            Err(_) => errors += 1,
        }
    }
    vec![
        Check::at_most("middle_state_residual", res, 1e-9),
        Check::at_least("middle_state_domain", gap, -1e-9),
        Check::at_most("fan_lax_failures", lax as f64, 0.0),
        Check::at_most("fan_ordering_failures", unordered as f64, 0.0),
        Check::at_most("fan_solve_errors", errors as f64, 0.0),
    ]
}

/// Forward-constructed region-`k` data re-solve to region `k`.
pub fn region_round_trip<R: Rng>(rng: &mut R, per_region: usize, cfg: &SolverConfig) -> Check {
    let mut failures = 0usize;
    for region in REGIONS {
        for _ in 0..per_region {
            let d = random_problem(rng, region, false, &cfg.ode);
            match build_fan_with(lift(d.left), lift(d.right), cfg) {
                Ok(fan) if fan.region == region => {}
                _ => failures += 1,
            }
        }
    }
    Check::at_most("region_round_trip_failures", failures as f64, 0.0)
}

/// Measurements of one admissible Brio solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrioMeasures {
    pub weak_residual: f64,
    pub deficit_identity: f64,
    pub u_equation: f64,
    pub lift_mismatch: f64,
    pub sign_changes: usize,
    pub ordering_ok: bool,
}

/// Checks one solution: weak residual over the battery, deficit identity and
/// `u`-equation exactness at each carrier, lift consistency on 1000 rays,
/// sign changes of `v`, and the speed ordering around the flip.
pub fn measure_brio(sol: &DeltaSolution, quad: &QuadratureConfig) -> Result<BrioMeasures> {
    let weak_residual = max_weak_residual(sol, &BrioFlux, quad)?;
    let mut deficit_identity = 0.0f64;
    let mut u_equation = 0.0f64;
    for s in &sol.singular {
        let k = sol
            .regular
            .edges
            .iter()
            .position(|&e| e == s.speed)
            .expect("every carrier is a regular edge");
        let (l, r) = sol.regular.limits(k);
        deficit_identity = deficit_identity.max(deficit_identity_error(l, r, s).abs());
        u_equation = u_equation.max(u_equation_defect(l, r, s.speed).abs());
    }
    let rays = sol.rays();
    let lo = rays.first().copied().unwrap_or(0.0) - 1.0;
    let hi = rays.last().copied().unwrap_or(0.0) + 1.0;
    let mut lift_mismatch = 0.0f64;
    let mut sign_changes = 0usize;
    let mut last_sign = 0.0;
    for i in 0..1000 {
        let xi = lo + (hi - lo) * (i as f64 + 0.5) / 1000.0;
        let s = sol.regular.sample(xi);
        if let Some(fan) = &sol.fan {
            let t = sample_fan(fan, xi);
            let l = lift(s);
            lift_mismatch = lift_mismatch.max((l.u - t.u).abs()).max((l.q - t.q).abs());
        }
        if s.v != 0.0 {
            if last_sign != 0.0 && s.v.signum() != last_sign {
                sign_changes += 1;
            }
            last_sign = s.v.signum();
        }
    }
    let ordering_ok = sol
        .regular
        .edges
        .windows(2)
        .all(|w| w[0] <= w[1] + TOL_ORDER * (1.0 + w[1].abs()));
    Ok(BrioMeasures {
        weak_residual,
        deficit_identity,
        u_equation,
        lift_mismatch,
        sign_changes,
        ordering_ok,
    })
}

/// Aggregated checks over `per_class` random problems of every region and
/// sign class.
pub fn brio_checks<R: Rng>(
    rng: &mut R,
    per_class: usize,
    opts: &BrioOptions,
    quad: &QuadratureConfig,
    tol_weak: f64,
) -> Vec<Check> {
    let mut weak = 0.0f64;
    let mut deficit = 0.0f64;
    let mut ueq = 0.0f64;
    let mut lift_err = 0.0f64;
    let (mut card_bad, mut sign_bad, mut order_bad, mut errors) = (0usize, 0usize, 0usize, 0usize);
    for region in REGIONS {
        for sign_change in [false, true] {
            for _ in 0..per_class {
                let d = random_problem(rng, region, sign_change, &opts.solver.ode);
                let Ok(sol) = solve_brio(d, opts) else {
                    errors += 1;
                    continue;
                };
                let Ok(m) = measure_brio(&sol, quad) else {
                    errors += 1;
                    continue;
                };
                weak = weak.max(m.weak_residual / (1.0 + d.sup_norm()));
                deficit = deficit.max(m.deficit_identity);
                ueq = ueq.max(m.u_equation);
                lift_err = lift_err.max(m.lift_mismatch);
                let region_found = sol.fan.as_ref().map(|f| f.region);
                if region_found != Some(region) || cardinality(&sol) != expected_cardinality(region) {
                    card_bad += 1;
                }
                if m.sign_changes != usize::from(sign_change) {
                    sign_bad += 1;
                }
                order_bad += usize::from(!m.ordering_ok);
            }
        }
    }
    vec![
        Check::at_most("brio_weak_residual", weak, tol_weak),
        Check::at_most("brio_deficit_identity", deficit, 1e-12),
        Check::at_most("brio_u_equation", ueq, 1e-10),
        Check::at_most("brio_lift_consistency", lift_err, 1e-10),
        Check::at_most("brio_cardinality_failures", card_bad as f64, 0.0),
        Check::at_most("brio_sign_bookkeeping_failures", sign_bad as f64, 0.0),
        Check::at_most("brio_ordering_failures", order_bad as f64, 0.0),
        Check::at_most("brio_solve_errors", errors as f64, 0.0),
    ]
}

/// Candidate flip positions: interior points of every segment and, inside
/// constant segments, the zero-deficit speed `u − 1`.
fn flip_candidates(sol: &DeltaSolution) -> Vec<f64> {
    let reg = &sol.regular;
    let mut out = Vec::new();
    for (i, seg) in reg.segments.iter().enumerate() {
        let (lo, hi) = reg.bounds(i);
        let margin = 1e-3;
        let (a, b) = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (lo, hi),
            (true, false) => (lo, lo + 1.0),
            (false, true) => (hi - 1.0, hi),
            (false, false) => (-1.0, 1.0),
        };
        if b - a > 2.0 * margin {
            out.push(0.5 * (a + b));
        }
        if let Segment::Constant(s) = seg {
            let z = s.u - 1.0;
            if z > lo + margin && z < hi - margin && (z - 0.5 * (a + b)).abs() > margin {
                out.push(z);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Alternative weak solutions of the same data: `v` negated on `k <= k_max`
/// disjoint intervals whose ends are drawn from the flip candidates.
pub fn flip_alternatives(sol: &DeltaSolution, k_max: usize) -> Vec<DeltaSolution> {
    let cand = flip_candidates(sol);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for combo in combinations(cand.len(), 2 * k) {
            let intervals: Vec<(f64, f64)> = combo.chunks(2).map(|p| (cand[p[0]], cand[p[1]])).collect();
            out.push(with_flipped_intervals(sol, &intervals));
        }
    }
    out
}

/// Minimality: every alternative from [`flip_alternatives`] that passes the
/// weak test carries at least as many δs. Measures the smallest excess.
pub fn minimality<R: Rng>(
    rng: &mut R,
    problems: usize,
    opts: &BrioOptions,
    quad: &QuadratureConfig,
    tol_weak: f64,
) -> Vec<Check> {
    let mut excess = i64::MAX;
    let mut weak = 0.0f64;
    let mut alternatives = 0usize;
    for p in 0..problems {
        let region = REGIONS[p % REGIONS.len()];
        let d = random_problem(rng, region, p % 2 == 1, &opts.solver.ode);
        let Ok(sol) = solve_brio(d, opts) else {
            excess = i64::MIN;
            continue;
        };
        let base = cardinality(&sol) as i64;
        for alt in flip_alternatives(&sol, 3) {
            alternatives += 1;
            let r = max_weak_residual(&alt, &BrioFlux, quad).unwrap_or(f64::INFINITY);
            weak = weak.max(r / (1.0 + d.sup_norm()));
            excess = excess.min(cardinality(&alt) as i64 - base);
        }
    }
    let excess = if alternatives == 0 { f64::NAN } else { excess as f64 };
    vec![
        Check::at_most("minimality_alternatives_weak_residual", weak, tol_weak),
        Check::at_least("minimality_cardinality_excess", excess, 0.0),
    ]
}

/// The two-δ fixture and the zero solution both solve zero data weakly;
/// cardinality prefers the zero solution.
pub fn nonuniqueness(quad: &QuadratureConfig) -> Vec<Check> {
    let fixture = nonuniqueness_example(1.0, -1.0, 1.0);
    let zero = nonuniqueness_example(0.0, -1.0, 1.0);
    let r = max_weak_residual(&fixture, &BrioFlux, quad)
        .unwrap_or(f64::INFINITY)
        .max(max_weak_residual(&zero, &BrioFlux, quad).unwrap_or(f64::INFINITY));
    let gap = cardinality(&fixture) as f64 - cardinality(&zero) as f64;
    vec![
        Check::at_most("nonuniqueness_weak_residual", r, 1e-8),
        Check::at_least("nonuniqueness_cardinality_gap", gap, 2.0),
    ]
}

/// Sign-change data with a region-I fan and `V_M² >= 2`, so that a flip at
/// `U_M + 1` still fits between the rarefactions.
pub fn canary_data() -> RiemannData {
    let left = BrioState::new(-0.3, 3.0);
    let (_, r) = forward_construct(lift(left), 0.4, 1.2, &OdeConfig::default()).expect("canary construction");
    RiemannData::new(left, BrioState::new(r.u, -r.v_squared().sqrt()))
}

/// Weak residual of the canary data solved with `flip`.
pub fn flip_residual(flip: FlipSpeed, quad: &QuadratureConfig) -> Result<f64> {
    let opts = BrioOptions {
        flip_speed: flip,
        ..BrioOptions::default()
    };
    let sol = solve_brio(canary_data(), &opts)?;
    max_weak_residual(&sol, &BrioFlux, quad)
}

/// A flip at the wrong speed `U_M + 1` must be detected by the weak test.
pub fn flip_canary(quad: &QuadratureConfig) -> Check {
    let r = flip_residual(FlipSpeed::Shifted(1.0), quad).unwrap_or(0.0);
    Check::at_least("flip_speed_canary_residual", r, 1e-4)
}

/// Runs every check with the default configuration and `seed`.
pub fn property_suite(seed: u64) -> Report {
    property_suite_with(&SuiteConfig {
        seed,
        ..SuiteConfig::default()
    })
}

pub fn property_suite_with(cfg: &SuiteConfig) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let solver = cfg.options.solver;
    let mut checks = vec![
        critical_curve_invariance(&solver.ode),
        lambda_monotonicity(&mut rng, 40, &solver.ode),
    ];
    checks.extend(shock_curve_checks(&mut rng, 200, sw1_q, sw2_q));
    checks.extend(riemann_checks(&mut rng, cfg.riemann_pairs, &solver));
    checks.push(region_round_trip(&mut rng, 5, &solver));
    checks.extend(brio_checks(
        &mut rng,
        cfg.brio_per_class,
        &cfg.options,
        &cfg.quadrature,
        cfg.tol_weak,
    ));
    checks.extend(minimality(
        &mut rng,
        cfg.minimality_problems,
        &cfg.options,
        &cfg.quadrature,
        cfg.tol_weak,
    ));
    checks.extend(nonuniqueness(&cfg.quadrature));
    checks.push(flip_canary(&cfg.quadrature));
    Report { checks, seed: cfg.seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    /// `sw1_q` with the sign of the square-root term flipped.
    fn sw1_mutant(base: TransState, u_r: f64) -> Result<f64> {
        let d = base.u - u_r;
        if d <= 0.0 {
            return Err(Error::Precondition("u_R must be below u_L".into()));
        }
        let a = 2.0 * base.q - base.u * base.u;
        let r = a + 0.25 + 0.5 * d + d * d / 3.0;
        Ok(base.q - 0.5 * d * (2.0 * u_r - 1.0) - d * r.sqrt())
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(6, 4).len(), 15);
        assert_eq!(combinations(3, 4).len(), 0);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn shock_checks_pass_and_catch_a_sign_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(shock_curve_checks(&mut rng, 100, sw1_q, sw2_q).iter().all(|c| c.passed));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mutated = shock_curve_checks(&mut rng, 100, sw1_mutant, sw2_q);
        assert!(mutated.iter().any(|c| !c.passed), "{mutated:?}");
    }

    #[test]
    fn random_problems_land_in_their_region() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = region_round_trip(&mut rng, 3, &SolverConfig::default());
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn brio_checks_pass_on_a_small_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let checks = brio_checks(&mut rng, 1, &BrioOptions::default(), &QuadratureConfig::default(), 1e-7);
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn flip_candidates_include_zero_deficit_speed() {
        let sol = solve_brio(canary_data(), &BrioOptions::default()).unwrap();
        let cand = flip_candidates(&sol);
        let right = sol.initial.right;
        assert!(
            cand.iter().any(|&c| (c - (right.u - 1.0)).abs() < 1e-12)
                || right.u - 1.0 < *sol.regular.edges.last().unwrap()
        );
        assert!(cand.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn flip_canary_fires_and_rh_flip_passes() {
        let quad = QuadratureConfig::default();
        assert!(flip_canary(&quad).passed);
        let r = flip_residual(FlipSpeed::Rh, &quad).unwrap();
        assert!(r < 1e-7, "{r}");
    }

    #[test]
    fn report_json_shape() {
        let r = Report {
            checks: vec![Check::at_most("x", 1.0, 2.0)],
            seed: 9,
        };
        let v = r.to_json();
        assert_eq!(v["seed"], 9);
        assert_eq!(v["checks"][0]["passed"], true);
        assert!(r.all_passed());
        assert!(!Check::at_most("nan", f64::NAN, 1.0).passed);
    }
}
