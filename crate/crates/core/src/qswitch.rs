//! The quantum 2-SWITCH and the indefinite-causal-order decision procedure.
//!
//! Joint basis is `|c⟩ ⊗ |t⟩` with index `2c + t`. Control `|0⟩` applies
//! `U₂` then `U₁` (matrix `U₁U₂`), control `|1⟩` applies `U₁` then `U₂`
//! (matrix `U₂U₁`).

use serde::{Deserialize, Serialize};

use crate::circuits::decode;
use crate::error::{Error, Result};
use crate::oracles::{product_oracle, OracleSet};
use crate::qmath::{
    anticommutator, commutator, gates, is_unitary, matmul, r, tensor, ComplexMatrix, StateVector,
};

/// Tolerance used when validating caller-supplied unitaries and states.
pub const INPUT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchState {
    pub joint: StateVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IcoDecision {
    pub control_outcome_probs: (f64, f64),
    pub odd_constants: bool,
    pub n_parity: Parity,
}

impl IcoDecision {
    /// Most likely control outcome.
    pub fn outcome(&self) -> u8 {
        u8::from(self.control_outcome_probs.1 > self.control_outcome_probs.0)
    }
}

fn validate(u1: &ComplexMatrix, u2: &ComplexMatrix, target: &StateVector) -> Result<()> {
    if u1.shape() != (2, 2) || !is_unitary(u1, INPUT_TOL) {
        return Err(Error::NotUnitary("U1"));
    }
    if u2.shape() != (2, 2) || !is_unitary(u2, INPUT_TOL) {
        return Err(Error::NotUnitary("U2"));
    }
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch {
            op: "switch target",
            left: (2, 1),
            right: (target.dim(), 1),
        });
    }
    if !target.is_normalized(INPUT_TOL) {
        return Err(Error::NotNormalized(target.norm_sqr()));
    }
    Ok(())
}

/// Runs the switch gate by gate: prepare `|+⟩_c ⊗ |ψ⟩_t`, apply the
/// control-dependent order, then a Hadamard on the control.
pub fn switch_output_state(
    u1: &ComplexMatrix,
    u2: &ComplexMatrix,
    target: &StateVector,
) -> Result<SwitchState> {
    validate(u1, u2, target)?;
    let u2_then_u1 = matmul(u1, u2)?;
    let u1_then_u2 = matmul(u2, u1)?;
    let ordered =
        &tensor(&gates::projector(0), &u2_then_u1) + &tensor(&gates::projector(1), &u1_then_u2);

    let input = StateVector::plus().tensor(target);
    let after_switch = ordered.apply(&input)?;
    let joint = tensor(&gates::hadamard(), &gates::identity()).apply(&after_switch)?;
    Ok(SwitchState { joint })
}

/// `½(|0⟩ ⊗ {U₁,U₂}|ψ⟩ + |1⟩ ⊗ [U₁,U₂]|ψ⟩)` evaluated directly.
pub fn switch_closed_form(
    u1: &ComplexMatrix,
    u2: &ComplexMatrix,
    target: &StateVector,
) -> Result<StateVector> {
    let plus_branch = anticommutator(u1, u2)?.scale(r(0.5)).apply(target)?;
    let minus_branch = commutator(u1, u2)?.scale(r(0.5)).apply(target)?;
    let amps = plus_branch
        .amplitudes()
        .iter()
        .chain(minus_branch.amplitudes())
        .copied()
        .collect();
    Ok(StateVector::new(amps))
}

/// `(P(c=0), P(c=1))`, tracing out the target.
pub fn measure_control(s: &SwitchState) -> (f64, f64) {
    let a = s.joint.amplitudes();
    (
        a[0].norm_sqr() + a[1].norm_sqr(),
        a[2].norm_sqr() + a[3].norm_sqr(),
    )
}

/// `U₁ = D(f_1)···D(f_n)`, `U₂ = X`, one pass through the switch.
pub fn run_ico_algorithm(s: &OracleSet, target: &StateVector) -> Result<IcoDecision> {
    run_with_u1(&product_oracle(s), s.len(), target)
}

/// Same as [`run_ico_algorithm`] with an explicit first operator, so callers
/// can check phase invariance.
pub fn run_with_u1(u1: &ComplexMatrix, n: usize, target: &StateVector) -> Result<IcoDecision> {
    let state = switch_output_state(u1, &gates::pauli_x(), target)?;
    let probs = measure_control(&state);
    let outcome = u8::from(probs.1 > probs.0);
    Ok(IcoDecision {
        control_outcome_probs: probs,
        odd_constants: decode(n, outcome),
        n_parity: Parity::of(n),
    })
}
