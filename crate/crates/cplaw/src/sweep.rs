//! Grid sweeps: expand a (beta grid) x (quantum numbers) x (value
//! kinds) request into independent point tasks and evaluate them,
//! optionally in parallel.
//!
//! Every task is pure given its inputs, so the parallel and sequential
//! drivers must produce identical output in identical order; the
//! parallel path keeps input order by construction (indexed collect).

use crate::domain::{check_exponent, DomainError, PotentialParams, QuantumNumbers, ReducedProblem};
use crate::envelope::{self, BoundKind, EnvelopeError};
use crate::pnum::{self, PError};
use crate::radial::{self, SolverError, SolverSettings};
use crate::variational::{self, VariationalError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("beta range must satisfy 0 < beta_min < beta_max, got [{beta_min}, {beta_max}]")]
    InvalidBetaRange { beta_min: f64, beta_max: f64 },
    #[error("a sweep needs at least 2 points, got {points}")]
    TooFewPoints { points: u32 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Failure at a single grid point. Transparent wrappers so callers can
/// still match on the concrete solver condition.
#[derive(Debug, Error)]
pub enum PointError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Variational(#[from] VariationalError),
    #[error(transparent)]
    P(#[from] PError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Which number a record carries. EX is the shooting eigenvalue; EL
/// and EU the envelope bounds with mu = nu = P; ELS the sum-rule lower
/// bound; EGU the Gaussian-trial upper envelope; EC the variational
/// upper bound; P the Coulomb-equivalent quantum number itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ValueKind {
    EX,
    EU,
    EL,
    ELS,
    EGU,
    EC,
    P,
}

impl ValueKind {
    pub const ALL: [ValueKind; 7] = [
        ValueKind::EX,
        ValueKind::EU,
        ValueKind::EL,
        ValueKind::ELS,
        ValueKind::EGU,
        ValueKind::EC,
        ValueKind::P,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ValueKind::EX => "EX",
            ValueKind::EU => "EU",
            ValueKind::EL => "EL",
            ValueKind::ELS => "ELS",
            ValueKind::EGU => "EGU",
            ValueKind::EC => "EC",
            ValueKind::P => "P",
        }
    }

    /// Whether this kind is defined for the given state. The sum-rule,
    /// Gaussian, and variational bounds only cover the bottom of each
    /// subspace, and the Gaussian trial additionally needs l = 0.
    pub fn applies_to(&self, quantum: QuantumNumbers) -> bool {
        match self {
            ValueKind::EX | ValueKind::EU | ValueKind::EL | ValueKind::P => true,
            ValueKind::ELS | ValueKind::EC => quantum.n == 1,
            ValueKind::EGU => quantum.n == 1 && quantum.ell == 0,
        }
    }
}

impl std::fmt::Display for ValueKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ValueKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown value kind {s:?}"))
    }
}

/// How the beta grid is spaced between its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(format!(
                "unknown spacing {other:?} (expected linear or log)"
            )),
        }
    }
}

/// A sweep request: one exponent, a beta grid, and the states to
/// evaluate at each grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub q: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub points: u32,
    pub spacing: Spacing,
    pub quantum: Vec<QuantumNumbers>,
}

impl SweepSpec {
    pub fn new(
        q: f64,
        beta_min: f64,
        beta_max: f64,
        points: u32,
        spacing: Spacing,
        quantum: Vec<QuantumNumbers>,
    ) -> Result<Self, SweepError> {
        check_exponent(q).map_err(SweepError::Domain)?;
        if !(beta_min > 0.0) || !(beta_min < beta_max) || !beta_max.is_finite() {
            return Err(SweepError::InvalidBetaRange { beta_min, beta_max });
        }
        if points < 2 {
            return Err(SweepError::TooFewPoints { points });
        }
        Ok(SweepSpec {
            q,
            beta_min,
            beta_max,
            points,
            spacing,
            quantum,
        })
    }

    /// The beta grid, endpoints exact, strictly increasing.
    pub fn beta_grid(&self) -> Vec<f64> {
        beta_grid(self.beta_min, self.beta_max, self.points, self.spacing)
    }
}

pub fn beta_grid(beta_min: f64, beta_max: f64, points: u32, spacing: Spacing) -> Vec<f64> {
    let n = points as usize;
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let beta = match spacing {
            Spacing::Linear => beta_min + t * (beta_max - beta_min),
            Spacing::Log => (beta_min.ln() + t * (beta_max.ln() - beta_min.ln())).exp(),
        };
        grid.push(beta);
    }
    grid[0] = beta_min;
    grid[n - 1] = beta_max;
    grid
}

/// One independent unit of work: a single (state, beta, kind) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointTask {
    pub quantum: QuantumNumbers,
    pub q: f64,
    pub beta: f64,
    pub kind: ValueKind,
}

/// Expand a spec into tasks in deterministic order: beta ascending,
/// then states in input order, then kinds in input order. Kinds that
/// do not apply to a state are silently skipped, never fabricated.
pub fn tasks_for(spec: &SweepSpec, kinds: &[ValueKind]) -> Vec<PointTask> {
    let mut tasks = Vec::new();
    for &beta in &spec.beta_grid() {
        for &quantum in &spec.quantum {
            for &kind in kinds {
                if kind.applies_to(quantum) {
                    tasks.push(PointTask {
                        quantum,
                        q: spec.q,
                        beta,
                        kind,
                    });
                }
            }
        }
    }
    tasks
}

/// Solver metadata attached to a record where applicable; every field
/// stays `None` for value kinds that do not produce it.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RecordMeta {
    pub d_used: Option<f64>,
    pub x_used: Option<f64>,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub steps: Option<usize>,
    pub r_max: Option<f64>,
    pub residual: Option<f64>,
}

/// One output row. `beta` is `None` for rows that do not depend on the
/// coupling (pure-power P values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutputRecord {
    pub n: u32,
    pub ell: u32,
    pub q: f64,
    pub beta: Option<f64>,
    pub value_kind: ValueKind,
    pub value: f64,
    #[serde(flatten)]
    pub meta: RecordMeta,
}

/// Evaluate a single task. Envelope kinds also report the (mu, nu)
/// pair they used; EX reports grid diagnostics; EC reports the trial
/// parameters.
pub fn evaluate(task: &PointTask, settings: &SolverSettings) -> Result<OutputRecord, PointError> {
    let quantum = task.quantum;
    let mut record = OutputRecord {
        n: quantum.n,
        ell: quantum.ell,
        q: task.q,
        beta: Some(task.beta),
        value_kind: task.kind,
        value: f64::NAN,
        meta: RecordMeta::default(),
    };
    match task.kind {
        ValueKind::EX => {
            let reduced = ReducedProblem::new(task.beta, task.q)?;
            let solution = radial::coulomb_plus_power_eigenvalue_with(&reduced, quantum, settings)?;
            record.value = solution.energy;
            record.meta.steps = Some(solution.steps);
            record.meta.r_max = Some(solution.r_max);
            record.meta.residual = Some(solution.residual);
        }
        ValueKind::EU | ValueKind::EL | ValueKind::ELS | ValueKind::EGU => {
            let kind = match task.kind {
                ValueKind::EU => BoundKind::EnvelopeUpper,
                ValueKind::EL => BoundKind::EnvelopeLower,
                ValueKind::ELS => BoundKind::SumLower,
                _ => BoundKind::GaussianUpper,
            };
            let params = envelope::params_for(kind, quantum, task.q)?;
            let potential = PotentialParams::new(1.0, 1.0, task.beta, task.q)?;
            record.value = envelope::semiclassical_energy(&potential, &params)?;
            record.meta.mu = Some(params.mu);
            record.meta.nu = Some(params.nu);
        }
        ValueKind::EC => {
            let bound = variational::upper_bound(quantum.ell, task.q, task.beta)?;
            record.value = bound.energy;
            record.meta.d_used = Some(bound.d_used);
            record.meta.x_used = Some(bound.x_used);
        }
        ValueKind::P => {
            let (p, _provenance) = pnum::p_value(quantum, task.q, false)?;
            record.value = p.value;
            record.beta = None;
        }
    }
    debug_assert!(record.value.is_finite());
    Ok(record)
}

/// Sequential reference driver. Always available so results can be
/// cross-checked against the parallel path.
pub fn run_sweep_sequential(
    tasks: &[PointTask],
    settings: &SolverSettings,
) -> Vec<Result<OutputRecord, PointError>> {
    tasks.iter().map(|task| evaluate(task, settings)).collect()
}

/// Parallel driver (rayon). Output order matches input order exactly.
#[cfg(feature = "parallel")]
pub fn run_sweep(
    tasks: &[PointTask],
    settings: &SolverSettings,
) -> Vec<Result<OutputRecord, PointError>> {
    use rayon::prelude::*;
    tasks
        .par_iter()
        .map(|task| evaluate(task, settings))
        .collect()
}

/// Without the `parallel` feature the sweep driver is the sequential
/// one under the same name, so callers need no feature logic.
#[cfg(not(feature = "parallel"))]
pub fn run_sweep(
    tasks: &[PointTask],
    settings: &SolverSettings,
) -> Vec<Result<OutputRecord, PointError>> {
    run_sweep_sequential(tasks, settings)
}
