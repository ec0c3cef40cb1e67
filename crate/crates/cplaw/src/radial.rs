//! Direct integration of the radial equation
//! `-u'' + [l(l+1)/r^2 + V(r)] u = E u`, the independent numerical
//! oracle everything else is judged against.
//!
//! The scheme is Numerov (fourth order, three-term) shot outward from an
//! `r^(l+1)` start and inward from a decaying seed, with the eigenvalue
//! located by bisection on the outward pass's node count: the count
//! steps from n-1 to n exactly at the n-th grid eigenvalue, so the
//! search can neither miss nor swap states. The inward pass supplies
//! the log-derivative mismatch at a matching radius near the outer
//! turning point, reported as the convergence residual, and the decay
//! check that catches an undersized grid.

use crate::domain::{DomainError, QuantumNumbers, ReducedProblem};
use crate::envelope::{self, BoundKind};
use crate::pnum;
use thiserror::Error;

/// Inner cutoff of the default grid. Small enough that the truncated
/// start series is exact to well below the energy tolerance, large
/// enough that 1/r and the centrifugal term stay comfortably finite.
pub const DEFAULT_R_MIN: f64 = 1e-6;

/// Default step count. Against the closed-form spectra this yields
/// ~1e-12 relative error, and doubling it moves eigenvalues by < 1e-10.
pub const DEFAULT_STEPS: usize = 20_000;

/// Default bisection convergence width, relative to max(1, |E|).
pub const DEFAULT_ENERGY_TOLERANCE: f64 = 1e-12;

/// The adaptive outer cutoff extends until the WKB decay integral
/// int sqrt(V_eff - E) dr past the turning point reaches this value,
/// i.e. the tail is suppressed by e^-30 ~ 1e-13, matching the energy
/// tolerance.
const DECAY_EXPONENT: f64 = 30.0;

/// The matched wavefunction must fall to this fraction of its peak by
/// r_max; a larger tail means the grid cannot represent the bound state
/// and the result would silently be a box eigenvalue instead.
const DECAY_RATIO_LIMIT: f64 = 1e-6;

/// Magnitude at which the growing Numerov solution is rescaled to avoid
/// overflow. Rescaling is suppressed inside the matching window so the
/// mismatch derivative sees consistently scaled values.
const RENORM_LIMIT: f64 = 1e250;

/// Seed magnitude for the inward integration at r_max.
const INWARD_SEED: f64 = 1e-120;

/// Caps for the adaptive r_max search: outermost turning point and
/// total extent. Generous for every parameter regime in scope.
const TURNING_POINT_CAP: f64 = 1e8;
const R_MAX_CAP: f64 = 1e9;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error(
        "node counts never straddled the target {target} within the search window [{lo}, {hi}]"
    )]
    NoBracket { lo: f64, hi: f64, target: usize },
    #[error("bisection failed to converge within the iteration cap")]
    NoConvergence,
    #[error(
        "wavefunction has not decayed at r_max = {r_max}; the grid is too small for this state"
    )]
    GridTooSmall { r_max: f64 },
    #[error("invalid grid: need 0 < r_min < r_max (both finite) and steps >= 1000")]
    InvalidGrid,
    #[error("could not establish the initial energy bracket: {reason}")]
    BracketConstruction { reason: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Uniform integration mesh on [r_min, r_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, steps: usize) -> Result<Self, SolverError> {
        if !(r_min > 0.0) || !(r_max > r_min) || !r_max.is_finite() || steps < 1000 {
            return Err(SolverError::InvalidGrid);
        }
        Ok(Self {
            r_min,
            r_max,
            steps,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / self.steps as f64
    }
}

/// Convergence controls for the eigenvalue bisection. The node target
/// itself is not configurable: state (n, l) always means n-1 interior
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub energy_tolerance: f64,
    pub max_bisections: usize,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            energy_tolerance: DEFAULT_ENERGY_TOLERANCE,
            max_bisections: 200,
        }
    }
}

impl ShootingConfig {
    fn validate(&self) -> Result<(), SolverError> {
        if !(self.energy_tolerance > 0.0) || self.max_bisections == 0 {
            return Err(SolverError::InvalidGrid);
        }
        Ok(())
    }
}

/// User-facing knobs for the potential-family entry points, which build
/// their own grid (adaptively unless r_max is forced) and bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub steps: usize,
    pub r_min: f64,
    /// Forced outer cutoff; None selects the adaptive rule.
    pub r_max: Option<f64>,
    pub energy_tolerance: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            steps: DEFAULT_STEPS,
            r_min: DEFAULT_R_MIN,
            r_max: None,
            energy_tolerance: DEFAULT_ENERGY_TOLERANCE,
        }
    }
}

/// A converged eigenvalue plus the discretization it was obtained on.
/// `residual` is the absolute log-derivative mismatch of the final
/// matched wavefunction at the matching radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub energy: f64,
    pub r_max: f64,
    pub steps: usize,
    pub residual: f64,
}

/// Analytic potential family -a/r + b r^q (b carries the sign of the
/// power term), used both to evaluate V and to supply the Frobenius
/// start series near r = 0.
#[derive(Debug, Clone, Copy)]
struct PotentialSpec {
    coulomb: f64,
    power_signed: f64,
    q: f64,
}

impl PotentialSpec {
    fn v(&self, r: f64) -> f64 {
        -self.coulomb / r + self.power_signed * r.powf(self.q)
    }

    /// u(r) = r^(l+1) (1 + c1 r + c2 r^2 + g r^(q+2)) with the series
    /// coefficients forced by the radial equation:
    ///   c1 = -a / (2(l+1)),  c2 = (-a c1 - E) / (4l+6),
    ///   g  = b / ((q+2)(q+2l+3)).
    /// Cross terms beyond these are O(r_min^2) relative at the start
    /// points and invisible at the energy tolerance.
    fn start_u(&self, r: f64, ell: f64, energy: f64) -> f64 {
        let c1 = -self.coulomb / (2.0 * (ell + 1.0));
        let c2 = (-self.coulomb * c1 - energy) / (4.0 * ell + 6.0);
        let g = self.power_signed / ((self.q + 2.0) * (self.q + 2.0 * ell + 3.0));
        r.powf(ell + 1.0) * (1.0 + c1 * r + c2 * r * r + g * r.powf(self.q + 2.0))
    }
}

/// One Numerov double pass at a trial energy.
struct Shot {
    nodes: usize,
    /// Outward minus inward log-derivative at the matching radius.
    mismatch: f64,
    /// False when the matching values degenerated (zero or non-finite).
    valid: bool,
    /// ln of the true magnitude of the inward solution at the matching
    /// radius (renormalizations folded back in); the decay check
    /// compares the seed against this peak.
    inward_peak_log: f64,
}

struct Engine<'a> {
    /// V_eff at grid points 0..=steps+1 (one past r_max for the inward
    /// seed row).
    v_eff: &'a [f64],
    r_min: f64,
    h: f64,
    steps: usize,
    ell: f64,
    /// Analytic start series; None falls back to the bare r^(l+1).
    start: Option<PotentialSpec>,
}

impl Engine<'_> {
    fn start_u(&self, r: f64, energy: f64) -> f64 {
        match &self.start {
            Some(spec) => spec.start_u(r, self.ell, energy),
            None => r.powf(self.ell + 1.0),
        }
    }

    fn shoot(&self, energy: f64) -> Shot {
        let n = self.steps;
        let h = self.h;
        let h212 = h * h / 12.0;
        let g_at = |i: usize| self.v_eff[i] - energy;

        // Matching index: outermost grid point inside the classically
        // allowed region, clamped away from both ends. When the energy
        // is below the potential everywhere the clamp value is
        // harmless: the pass reports zero nodes and the bisection moves
        // up and away.
        let mut m = 2usize;
        for i in (0..=n).rev() {
            if g_at(i) < 0.0 {
                m = i.clamp(2, n - 2);
                break;
            }
        }

        // Outward pass over the full grid: count nodes, record the
        // wavefunction on the matching window [m-1, m+1].
        let r_a = self.r_min;
        let r_b = self.r_min + h;
        let mut u_a = self.start_u(r_a, energy);
        let mut u_b = self.start_u(r_b, energy);
        let mut g_a = g_at(0);
        let mut g_b = g_at(1);
        let mut nodes = 0usize;
        let mut out_lo = 0.0; // u at m-1
        let mut out_mid = 0.0; // u at m
        let mut out_hi = 0.0; // u at m+1
        if m == 2 {
            out_lo = u_b;
        }
        for i in 1..n {
            let g_c = g_at(i + 1);
            let mut u_c = (2.0 * u_b * (1.0 + 5.0 * h212 * g_b) - u_a * (1.0 - h212 * g_a))
                / (1.0 - h212 * g_c);
            if (u_c > 0.0 && u_b < 0.0) || (u_c < 0.0 && u_b > 0.0) {
                nodes += 1;
            }
            let j = i + 1;
            // Rescaling is positive, so node detection above and the
            // window records below are unaffected by where it lands.
            if u_c.abs() > RENORM_LIMIT && (j + 2 < m || j > m + 2) {
                u_b /= RENORM_LIMIT;
                u_c /= RENORM_LIMIT;
            }
            if j == m - 1 {
                out_lo = u_c;
            } else if j == m {
                out_mid = u_c;
            } else if j == m + 1 {
                out_hi = u_c;
            }
            u_a = u_b;
            u_b = u_c;
            g_a = g_b;
            g_b = g_c;
        }

        // Inward pass from a decaying seed at r_max down to m-1.
        let g_n = g_at(n);
        let kappa = g_n.max(1e-12).sqrt();
        let mut v_b = INWARD_SEED; // u at index n
        let mut v_a = INWARD_SEED * (-kappa * h).exp(); // fictitious u at n+1
        let mut gg_b = g_n;
        let mut gg_a = g_at(n + 1);
        let mut in_lo = 0.0; // u at m-1
        let mut in_mid = 0.0; // u at m
        let mut in_hi = 0.0; // u at m+1
        let mut renorms = 0u32;
        if n == m + 1 {
            in_hi = v_b;
        }
        let mut i = n - 1;
        loop {
            let g_c = g_at(i);
            let mut u_c = (2.0 * v_b * (1.0 + 5.0 * h212 * gg_b) - v_a * (1.0 - h212 * gg_a))
                / (1.0 - h212 * g_c);
            if u_c.abs() > RENORM_LIMIT && i > m + 2 {
                v_b /= RENORM_LIMIT;
                u_c /= RENORM_LIMIT;
                renorms += 1;
            }
            if i == m - 1 {
                in_lo = u_c;
            } else if i == m {
                in_mid = u_c;
            } else if i == m + 1 {
                in_hi = u_c;
            }
            v_a = v_b;
            v_b = u_c;
            gg_a = gg_b;
            gg_b = g_c;
            if i == m - 1 {
                break;
            }
            i -= 1;
        }

        let valid = out_mid != 0.0
            && in_mid != 0.0
            && out_mid.is_finite()
            && in_mid.is_finite()
            && out_lo.is_finite()
            && out_hi.is_finite()
            && in_lo.is_finite()
            && in_hi.is_finite();
        let mismatch = if valid {
            (out_hi - out_lo) / (2.0 * h * out_mid) - (in_hi - in_lo) / (2.0 * h * in_mid)
        } else {
            0.0
        };
        // All inward renormalizations happen outside the window, i.e.
        // before in_mid is recorded, so the full count applies to it.
        let inward_peak_log = in_mid.abs().ln() + f64::from(renorms) * RENORM_LIMIT.ln();
        Shot {
            nodes,
            mismatch,
            valid,
            inward_peak_log,
        }
    }

    /// Node-count bisection with bracket expansion, then a
    /// verification pass at the converged energy.
    ///
    /// The eigenvalue is located purely as the energy where the full
    /// outward pass gains its (target+1)-th sign change: that boundary
    /// is the grid's box eigenvalue, which agrees with the matched
    /// eigenvalue to the square of the tail suppression (~1e-26 here),
    /// far below any tolerance in play. Refining on the sign of the
    /// log-derivative mismatch instead would be unsafe: inside the node
    /// band the mismatch passes through a pole and takes both signs on
    /// the low side of the eigenvalue.
    fn converge(
        &self,
        target: usize,
        lo0: f64,
        hi0: f64,
        config: &ShootingConfig,
    ) -> Result<(f64, f64), SolverError> {
        // Below -1/h^2 the Numerov factors leave their stability range
        // (h^2 g / 12 ~ 1) and the pass oscillates spuriously; no state
        // representable on this grid lives there, so the search floor
        // is also an eigenvalue floor.
        let floor = -1.0 / (self.h * self.h);
        let mut lo = lo0.max(floor);
        let mut hi = hi0;
        if hi - lo < 1.0 {
            lo = (lo - 1.0).max(floor);
            hi += 1.0;
        }
        let mut shot_lo = self.shoot(lo);
        let mut shot_hi = self.shoot(hi);
        let mut expansions = 0usize;
        while shot_lo.nodes > target && lo > floor && expansions < 60 {
            lo = (lo - (hi - lo)).max(floor);
            shot_lo = self.shoot(lo);
            expansions += 1;
        }
        while shot_hi.nodes <= target && expansions < 120 {
            hi += hi - lo;
            shot_hi = self.shoot(hi);
            expansions += 1;
        }
        if !(shot_lo.nodes <= target && target < shot_hi.nodes) {
            return Err(SolverError::NoBracket { lo, hi, target });
        }

        let mut converged = false;
        for _ in 0..config.max_bisections {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= config.energy_tolerance * mid.abs().max(1.0) {
                converged = true;
                break;
            }
            if self.shoot(mid).nodes <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if !converged {
            return Err(SolverError::NoConvergence);
        }

        let energy = 0.5 * (lo + hi);
        let check = self.shoot(energy);
        // At convergence the energy sits within the width tolerance of
        // the grid's box eigenvalue, whose node count flips from
        // `target` to `target + 1`; both readings are consistent.
        // Anything else means the bisection never isolated the band.
        if check.nodes != target && check.nodes != target + 1 {
            return Err(SolverError::NoConvergence);
        }
        let decay_log = INWARD_SEED.ln() - check.inward_peak_log;
        if !check.valid || decay_log > DECAY_RATIO_LIMIT.ln() {
            let r_max = self.r_min + self.h * self.steps as f64;
            return Err(SolverError::GridTooSmall { r_max });
        }
        Ok((energy, check.mismatch.abs()))
    }
}

/// Outer cutoff: double out to the classically forbidden region, then
/// extend until the WKB decay integral reaches DECAY_EXPONENT.
/// `e_est` must be at or above the true eigenvalue: an overestimate
/// only pads the grid, while an underestimate truncates the tail.
fn adaptive_r_max(v_eff: impl Fn(f64) -> f64, e_est: f64, r_min: f64) -> f64 {
    // Walk left only while descending the outer branch (the left
    // neighbor must sit lower); entering the inner centrifugal barrier,
    // where V also exceeds e_est, would strand the decay integral on
    // the wrong side of the well.
    let mut rt = 1.0;
    while v_eff(rt) >= e_est && v_eff(0.5 * rt) < v_eff(rt) && rt > 4.0 * r_min {
        rt *= 0.5;
    }
    while v_eff(rt) < e_est && rt < TURNING_POINT_CAP {
        rt *= 2.0;
    }
    let mut acc = 0.0;
    let mut r = rt;
    while acc < DECAY_EXPONENT && r < R_MAX_CAP {
        let dr = 0.01 * r;
        let barrier = v_eff(r + 0.5 * dr) - e_est;
        if barrier > 0.0 {
            acc += barrier.sqrt() * dr;
        }
        r += dr;
    }
    r
}

fn centrifugal(ell: u32) -> f64 {
    let lf = f64::from(ell);
    lf * (lf + 1.0)
}

/// Eigenvalue of the radial equation for an arbitrary potential closure
/// on a caller-supplied grid. The search bracket is bootstrapped from
/// the sampled potential itself: its minimum can hold no eigenvalue
/// below it, and node-count expansion pushes the top up as needed.
///
/// Without an analytic form for V the outward start is the bare
/// r^(l+1), which costs a few orders of accuracy for potentials with a
/// Coulomb singularity (~1e-8 relative instead of ~1e-12). The
/// potential-family entry points below use the corrected series.
pub fn eigenvalue_detailed<V: Fn(f64) -> f64>(
    potential: V,
    quantum: QuantumNumbers,
    grid: &RadialGrid,
    config: &ShootingConfig,
) -> Result<Solution, SolverError> {
    RadialGrid::new(grid.r_min, grid.r_max, grid.steps)?;
    config.validate()?;
    let h = grid.spacing();
    let lf = centrifugal(quantum.ell);
    let v_eff: Vec<f64> = (0..=grid.steps + 1)
        .map(|i| {
            let r = grid.r_min + i as f64 * h;
            lf / (r * r) + potential(r)
        })
        .collect();
    let engine = Engine {
        v_eff: &v_eff,
        r_min: grid.r_min,
        h,
        steps: grid.steps,
        ell: f64::from(quantum.ell),
        start: None,
    };
    let lo = v_eff[..=grid.steps]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let hi = v_eff[grid.steps];
    let (energy, residual) = engine.converge(quantum.node_target(), lo, hi, config)?;
    Ok(Solution {
        energy,
        r_max: grid.r_max,
        steps: grid.steps,
        residual,
    })
}

/// As `eigenvalue_detailed`, returning only the energy.
pub fn eigenvalue<V: Fn(f64) -> f64>(
    potential: V,
    quantum: QuantumNumbers,
    grid: &RadialGrid,
    config: &ShootingConfig,
) -> Result<f64, SolverError> {
    eigenvalue_detailed(potential, quantum, grid, config).map(|s| s.energy)
}

fn solve_family(
    spec: PotentialSpec,
    quantum: QuantumNumbers,
    settings: &SolverSettings,
    lo: f64,
    hi: f64,
    e_est: f64,
) -> Result<Solution, SolverError> {
    let lf = centrifugal(quantum.ell);
    let r_max = match settings.r_max {
        Some(r) => r,
        None => adaptive_r_max(|r| lf / (r * r) + spec.v(r), e_est, settings.r_min),
    };
    let grid = RadialGrid::new(settings.r_min, r_max, settings.steps)?;
    let config = ShootingConfig {
        energy_tolerance: settings.energy_tolerance,
        max_bisections: 200,
    };
    config.validate()?;
    let h = grid.spacing();
    let v_eff: Vec<f64> = (0..=grid.steps + 1)
        .map(|i| {
            let r = grid.r_min + i as f64 * h;
            lf / (r * r) + spec.v(r)
        })
        .collect();
    let engine = Engine {
        v_eff: &v_eff,
        r_min: grid.r_min,
        h,
        steps: grid.steps,
        ell: f64::from(quantum.ell),
        start: Some(spec),
    };
    let (energy, residual) = engine.converge(quantum.node_target(), lo, hi, &config)?;
    Ok(Solution {
        energy,
        r_max,
        steps: grid.steps,
        residual,
    })
}

/// Eigenvalue of H = -Delta + sgn(q) r^q. The search bracket comes from
/// the spectral P-representation: P lies in (0.3 (n+l), 2.2 (n+l) + 2)
/// for every exponent in scope, and energy is monotone in P.
pub fn power_eigenvalue_with(
    q: f64,
    quantum: QuantumNumbers,
    settings: &SolverSettings,
) -> Result<Solution, SolverError> {
    crate::domain::check_exponent(q)?;
    let spec = PotentialSpec {
        coulomb: 0.0,
        power_signed: q.signum(),
        q,
    };
    let nl = quantum.n_plus_ell();
    let lo = pnum::energy_from_p(0.3 * nl, q);
    let hi = pnum::energy_from_p(2.2 * nl + 2.0, q);
    // Where P is known in closed form the decay estimate is the exact
    // energy nudged upward. Otherwise pick a provable overshoot of the
    // true P-number: P is non-decreasing in the exponent, so for
    // q <= -1 it is capped by its Coulomb value n+l, and above that
    // 2n+l+1 clears every exponent in scope. Energy grows with P, so
    // either cap errs toward a shallow estimate and a larger box,
    // never a clipped tail. The split matters: below q = -1 the energy
    // scales like P^(2q/(2+q)), and the 2n+l+1 cap there inflates the
    // box far past what the step count can resolve at the singular
    // core, corrupting node counts at the deep end of the bracket.
    let e_est = match pnum::p_exact(quantum, q) {
        Ok(p) => {
            let e = pnum::energy_from_p(p.value, q);
            e + 0.1 * e.abs()
        }
        Err(_) => {
            let p_cap = if q <= -1.0 {
                nl
            } else {
                f64::from(2 * quantum.n + quantum.ell) + 1.0
            };
            pnum::energy_from_p(p_cap, q)
        }
    };
    solve_family(spec, quantum, settings, lo, hi, e_est)
}

pub fn power_eigenvalue(q: f64, quantum: QuantumNumbers) -> Result<f64, SolverError> {
    power_eigenvalue_with(q, quantum, &SolverSettings::default()).map(|s| s.energy)
}

/// Eigenvalue of the reduced problem -Delta - 1/r + beta sgn(q) r^q.
/// The initial bracket is the envelope bound pair padded by 1, and the
/// upper bound doubles as the decay estimate for the adaptive grid;
/// the bounds make the solver self-starting.
pub fn coulomb_plus_power_eigenvalue_with(
    reduced: &ReducedProblem,
    quantum: QuantumNumbers,
    settings: &SolverSettings,
) -> Result<Solution, SolverError> {
    let lower = envelope::bound(reduced, quantum, BoundKind::EnvelopeLower).map_err(|e| {
        SolverError::BracketConstruction {
            reason: e.to_string(),
        }
    })?;
    let upper = envelope::bound(reduced, quantum, BoundKind::EnvelopeUpper).map_err(|e| {
        SolverError::BracketConstruction {
            reason: e.to_string(),
        }
    })?;
    let spec = PotentialSpec {
        coulomb: 1.0,
        power_signed: reduced.beta * reduced.power_q.signum(),
        q: reduced.power_q,
    };
    solve_family(spec, quantum, settings, lower - 1.0, upper + 1.0, upper)
}

pub fn coulomb_plus_power_eigenvalue(
    reduced: &ReducedProblem,
    quantum: QuantumNumbers,
) -> Result<f64, SolverError> {
    coulomb_plus_power_eigenvalue_with(reduced, quantum, &SolverSettings::default())
        .map(|s| s.energy)
}
