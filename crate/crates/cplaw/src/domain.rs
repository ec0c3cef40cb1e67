//! Shared domain types and the coupling-scaling reduction.
//!
//! The full problem `H = -omega Delta - A/r + B sgn(q) r^q` scales to the
//! one-parameter family `-Delta - 1/r + beta sgn(q) r^q` with
//! `beta = (B/omega)(omega/A)^(q+2)`; energies lift back by the factor
//! `A^2/omega`. Everything downstream works on the reduced problem.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("omega must be positive, got {value}")]
    NonPositiveOmega { value: f64 },
    #[error("Coulomb strength A must be positive, got {value}")]
    NonPositiveCoulomb { value: f64 },
    #[error("power coupling B must be positive, got {value}")]
    NonPositivePower { value: f64 },
    #[error("beta must be positive, got {value}")]
    NonPositiveBeta { value: f64 },
    #[error("power exponent must satisfy q > -2 and q != 0, got {value}")]
    ExponentOutOfRange { value: f64 },
    #[error("radial quantum number n must be >= 1")]
    InvalidRadialNumber,
}

pub(crate) fn check_exponent(q: f64) -> Result<(), DomainError> {
    if !q.is_finite() || q <= -2.0 || q == 0.0 {
        return Err(DomainError::ExponentOutOfRange { value: q });
    }
    Ok(())
}

/// The quadruple (omega, A, B, q) defining the full Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialParams {
    pub omega: f64,
    pub coulomb_a: f64,
    pub power_b: f64,
    pub power_q: f64,
}

impl PotentialParams {
    pub fn new(
        omega: f64,
        coulomb_a: f64,
        power_b: f64,
        power_q: f64,
    ) -> Result<Self, DomainError> {
        if !(omega > 0.0) {
            return Err(DomainError::NonPositiveOmega { value: omega });
        }
        if !(coulomb_a > 0.0) {
            return Err(DomainError::NonPositiveCoulomb { value: coulomb_a });
        }
        if !(power_b > 0.0) {
            return Err(DomainError::NonPositivePower { value: power_b });
        }
        check_exponent(power_q)?;
        Ok(Self {
            omega,
            coulomb_a,
            power_b,
            power_q,
        })
    }
}

/// The pair (beta, q) after the scaling reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedProblem {
    pub beta: f64,
    pub power_q: f64,
}

impl ReducedProblem {
    pub fn new(beta: f64, power_q: f64) -> Result<Self, DomainError> {
        if !(beta > 0.0) {
            return Err(DomainError::NonPositiveBeta { value: beta });
        }
        check_exponent(power_q)?;
        Ok(Self { beta, power_q })
    }
}

/// (n, ell) labels of a radial eigenstate; n counts states within the
/// angular momentum subspace starting at 1, so the state has n-1 radial
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ell: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32) -> Result<Self, DomainError> {
        if n < 1 {
            return Err(DomainError::InvalidRadialNumber);
        }
        Ok(Self { n, ell })
    }

    /// n + ell, the Coulomb principal-like combination; equals P_nl(-1).
    pub fn n_plus_ell(&self) -> f64 {
        f64::from(self.n + self.ell)
    }

    /// Interior node count of the target radial wavefunction.
    pub fn node_target(&self) -> usize {
        (self.n - 1) as usize
    }
}

/// A spectral P-number P_nl(q) together with the state and exponent it
/// belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PNumber {
    pub value: f64,
    pub q: f64,
    pub quantum: QuantumNumbers,
}

/// Which rule produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundRule {
    EnvelopeLower,
    SumLower,
    EnvelopeUpper,
    GaussianUpper,
    VariationalUpper,
}

/// A (lower, upper) pair of energy bounds plus the rules that produced
/// each side. Invariant: lower <= upper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBracket {
    pub lower: f64,
    pub upper: f64,
    pub lower_rule: BoundRule,
    pub upper_rule: BoundRule,
}

/// Scaling reduction: beta = (B/omega)(omega/A)^(q+2), scale = A^2/omega,
/// with E_full = scale * E_reduced.
pub fn reduce(params: &PotentialParams) -> (ReducedProblem, f64) {
    let q = params.power_q;
    let beta = (params.power_b / params.omega) * (params.omega / params.coulomb_a).powf(q + 2.0);
    let scale = params.coulomb_a * params.coulomb_a / params.omega;
    (ReducedProblem { beta, power_q: q }, scale)
}

pub fn lift_energy(reduced_energy: f64, energy_scale: f64) -> f64 {
    debug_assert!(energy_scale > 0.0);
    energy_scale * reduced_energy
}

/// Hydrogenic closed form E = -A^2 / (4 omega (n+ell)^2). The power term
/// of `params` is ignored (B = 0 limit).
pub fn exact_hydrogen(params: &PotentialParams, quantum: QuantumNumbers) -> f64 {
    let nl = quantum.n_plus_ell();
    -params.coulomb_a * params.coulomb_a / (4.0 * params.omega * nl * nl)
}

/// Oscillator closed form E = sqrt(omega B) (4n + 2 ell - 1). The Coulomb
/// term of `params` is ignored (A = 0, q = 2 limit).
pub fn exact_oscillator(params: &PotentialParams, quantum: QuantumNumbers) -> f64 {
    (params.omega * params.power_b).sqrt() * f64::from(4 * quantum.n + 2 * quantum.ell - 1)
}
