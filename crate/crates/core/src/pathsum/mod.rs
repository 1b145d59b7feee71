// Copyright 2026 The pathsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Boolean path sums `s · Σ_V (-1)^P |O⟩⟨I|`.
//!
//! A [`PathSum`] owns its summation variables as the dense range
//! `0..num_vars`. Operations that combine two sums (composition, tensor)
//! shift the second operand's variables above the first, so every
//! operation is a pure function of its arguments.

mod eval;
mod interpret;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amplitude::{Amplitude, AmplitudeError};
use crate::boolpoly::{BoolPoly, Literal, Monomial, VarId};

pub use eval::Matrix;
pub use interpret::{gate_sem, interpret};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathSumError {
    #[error("variable {var} is out of range for a sum over {num_vars} variables")]
    VarOutOfRange { var: VarId, num_vars: u32 },
    #[error("cannot compose: left operand takes {left_inputs} inputs but right operand has {right_outputs} outputs")]
    SignatureMismatch { left_inputs: usize, right_outputs: usize },
    #[error("path sum has {num_vars} variables, above the evaluation limit of {max_vars}")]
    EvalGuard { num_vars: u32, max_vars: u32 },
    #[error("matrix of size 2^{rows_log} x 2^{cols_log} is too large to materialize")]
    DimensionTooLarge { rows_log: usize, cols_log: usize },
    #[error("variable map is not a bijection on 0..{num_vars}")]
    NonBijective { num_vars: u32 },
    #[error("gate touches qubit {qubit} on a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error(transparent)]
    Amplitude(#[from] AmplitudeError),
}

/// Exact scalar `0` or `2^(half_exp/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scalar {
    zero: bool,
    half_exp: i64,
}

impl Scalar {
    pub const ONE: Scalar = Scalar {
        zero: false,
        half_exp: 0,
    };
    pub const ZERO: Scalar = Scalar {
        zero: true,
        half_exp: 0,
    };

    pub fn new(zero: bool, half_exp: i64) -> Self {
        if zero {
            Scalar::ZERO
        } else {
            Scalar { zero, half_exp }
        }
    }

    /// `2^(half_exp/2)`.
    pub fn sqrt2_pow(half_exp: i64) -> Self {
        Scalar {
            zero: false,
            half_exp,
        }
    }

    pub fn is_zero(self) -> bool {
        self.zero
    }

    pub fn half_exp(self) -> i64 {
        self.half_exp
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Scalar) -> Scalar {
        if self.zero || other.zero {
            Scalar::ZERO
        } else {
            Scalar::sqrt2_pow(self.half_exp + other.half_exp)
        }
    }

    /// Multiplies by `2^(delta/2)`; zero stays zero.
    pub fn scale(self, delta: i64) -> Scalar {
        self.mul(Scalar::sqrt2_pow(delta))
    }

    pub fn to_amplitude(self) -> Amplitude {
        if self.zero {
            Amplitude::zero()
        } else {
            Amplitude::sqrt2_pow(self.half_exp)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            f.write_str("0")
        } else {
            write!(f, "2^({}/2)", self.half_exp)
        }
    }
}

/// `scalar · Σ_{x0..x(k-1)} (-1)^phase |outputs⟩⟨inputs|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PathSumRepr")]
pub struct PathSum {
    scalar: Scalar,
    num_vars: u32,
    phase: BoolPoly,
    outputs: Vec<BoolPoly>,
    inputs: Vec<BoolPoly>,
}

#[derive(Deserialize)]
struct PathSumRepr {
    scalar: Scalar,
    num_vars: u32,
    phase: BoolPoly,
    outputs: Vec<BoolPoly>,
    inputs: Vec<BoolPoly>,
}

impl TryFrom<PathSumRepr> for PathSum {
    type Error = PathSumError;

    fn try_from(r: PathSumRepr) -> Result<Self, Self::Error> {
        PathSum::make(r.scalar, r.num_vars, r.phase, r.outputs, r.inputs)
    }
}

impl PathSum {
    /// Validates and builds a path sum.
    pub fn make(
        scalar: Scalar,
        num_vars: u32,
        phase: BoolPoly,
        outputs: Vec<BoolPoly>,
        inputs: Vec<BoolPoly>,
    ) -> Result<PathSum, PathSumError> {
        for p in std::iter::once(&phase).chain(&outputs).chain(&inputs) {
            if let Some(var) = p.max_var().filter(|v| v.0 >= num_vars) {
                return Err(PathSumError::VarOutOfRange { var, num_vars });
            }
        }
        Ok(PathSum::from_parts(scalar, num_vars, phase, outputs, inputs))
    }

    pub(crate) fn from_parts(
        scalar: Scalar,
        num_vars: u32,
        phase: BoolPoly,
        outputs: Vec<BoolPoly>,
        inputs: Vec<BoolPoly>,
    ) -> PathSum {
        PathSum {
            scalar: Scalar::new(scalar.zero, scalar.half_exp),
            num_vars,
            phase,
            outputs,
            inputs,
        }
    }

    /// `I_n`: one variable per wire, passed straight through.
    pub fn identity(n: usize) -> PathSum {
        let wires: Vec<BoolPoly> = (0..n as u32).map(|i| BoolPoly::var(VarId(i))).collect();
        PathSum::from_parts(Scalar::ONE, n as u32, BoolPoly::zero(), wires.clone(), wires)
    }

    /// `0_{m,n}`: `m` inputs, `n` outputs, scalar zero.
    pub fn zero_op(m: usize, n: usize) -> PathSum {
        PathSum::from_parts(
            Scalar::ZERO,
            0,
            BoolPoly::zero(),
            vec![BoolPoly::zero(); n],
            vec![BoolPoly::zero(); m],
        )
    }

    pub fn ket(bits: &[bool]) -> PathSum {
        let outs = bits.iter().map(|&b| BoolPoly::constant(b)).collect();
        PathSum::from_parts(Scalar::ONE, 0, BoolPoly::zero(), outs, Vec::new())
    }

    pub fn bra(bits: &[bool]) -> PathSum {
        PathSum::ket(bits).adjoint()
    }

    pub fn scalar(&self) -> Scalar {
        self.scalar
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn phase(&self) -> &BoolPoly {
        &self.phase
    }

    pub fn outputs(&self) -> &[BoolPoly] {
        &self.outputs
    }

    pub fn inputs(&self) -> &[BoolPoly] {
        &self.inputs
    }

    /// `(inputs, outputs)` wire counts.
    pub fn signature(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    /// Phase, outputs, then inputs.
    pub fn polys(&self) -> impl Iterator<Item = &BoolPoly> {
        std::iter::once(&self.phase).chain(&self.outputs).chain(&self.inputs)
    }

    /// Outputs when every output polynomial is a constant.
    pub fn constant_outputs(&self) -> Option<Vec<bool>> {
        self.outputs.iter().map(BoolPoly::as_constant).collect()
    }

    /// `self ∘ other`: `other` runs first.
    pub fn compose(&self, other: &PathSum) -> Result<PathSum, PathSumError> {
        let m = self.inputs.len();
        if other.outputs.len() != m {
            return Err(PathSumError::SignatureMismatch {
                left_inputs: m,
                right_outputs: other.outputs.len(),
            });
        }
        let offset = self.num_vars;
        let mediators = offset + other.num_vars;
        let mut phase = self.phase.clone();
        phase.add_assign(&other.phase.shift(offset));
        for (i, (inner, outer)) in other.outputs.iter().zip(&self.inputs).enumerate() {
            let y = Monomial::var(VarId(mediators + i as u32));
            phase.add_assign(&inner.shift(offset).add(outer).mul_monomial(&y));
        }
        Ok(PathSum::from_parts(
            self.scalar.mul(other.scalar).scale(-2 * m as i64),
            mediators + m as u32,
            phase,
            self.outputs.clone(),
            other.inputs.iter().map(|p| p.shift(offset)).collect(),
        ))
    }

    pub fn tensor(&self, other: &PathSum) -> PathSum {
        let offset = self.num_vars;
        let shifted = |ps: &[BoolPoly]| ps.iter().map(|p| p.shift(offset)).collect::<Vec<_>>();
        let mut outputs = self.outputs.clone();
        outputs.extend(shifted(&other.outputs));
        let mut inputs = self.inputs.clone();
        inputs.extend(shifted(&other.inputs));
        PathSum::from_parts(
            self.scalar.mul(other.scalar),
            offset + other.num_vars,
            self.phase.add(&other.phase.shift(offset)),
            outputs,
            inputs,
        )
    }

    pub fn adjoint(&self) -> PathSum {
        PathSum::from_parts(
            self.scalar,
            self.num_vars,
            self.phase.clone(),
            self.inputs.clone(),
            self.outputs.clone(),
        )
    }

    /// Applies a simple transformation: variable `i` becomes the literal `phi[i]`.
    pub fn apply_simple_transform(&self, phi: &[Literal]) -> Result<PathSum, PathSumError> {
        let k = self.num_vars;
        let non_bijective = PathSumError::NonBijective { num_vars: k };
        if phi.len() != k as usize {
            return Err(non_bijective);
        }
        let mut hit = vec![false; k as usize];
        for lit in phi {
            match hit.get_mut(lit.var.index()) {
                Some(seen @ false) => *seen = true,
                _ => return Err(non_bijective),
            }
        }
        let map = |p: &BoolPoly| p.map_literals(|v| phi[v.index()]);
        Ok(PathSum::from_parts(
            self.scalar,
            k,
            map(&self.phase),
            self.outputs.iter().map(map).collect(),
            self.inputs.iter().map(map).collect(),
        ))
    }

    /// Same transformation given as a map, for callers holding sparse `φ`.
    pub fn apply_simple_map(&self, phi: &BTreeMap<VarId, Literal>) -> Result<PathSum, PathSumError> {
        let dense: Option<Vec<Literal>> = (0..self.num_vars).map(|i| phi.get(&VarId(i)).copied()).collect();
        match dense {
            Some(d) if phi.len() == self.num_vars as usize => self.apply_simple_transform(&d),
            _ => Err(PathSumError::NonBijective { num_vars: self.num_vars }),
        }
    }

    /// Dense matrix of the represented operator; refuses sums above `max_vars` variables.
    pub fn eval(&self, max_vars: u32) -> Result<Matrix, PathSumError> {
        eval::eval(self, max_vars)
    }

    /// The single entry of a `0 → 0` sum.
    pub fn eval_scalar(&self, max_vars: u32) -> Result<Amplitude, PathSumError> {
        debug_assert_eq!(self.signature(), (0, 0));
        Ok(self.eval(max_vars)?.get(0, 0).clone())
    }

    /// Rebuilds the sum without the (unused) variable `v`, shifting higher indices down.
    pub(crate) fn drop_var(&self, v: VarId) -> PathSum {
        let down = |p: &BoolPoly| p.rename(|w| if w > v { VarId(w.0 - 1) } else { w });
        PathSum::from_parts(
            self.scalar,
            self.num_vars - 1,
            down(&self.phase),
            self.outputs.iter().map(down).collect(),
            self.inputs.iter().map(down).collect(),
        )
    }

    pub(crate) fn with_scalar(mut self, scalar: Scalar) -> PathSum {
        self.scalar = Scalar::new(scalar.zero, scalar.half_exp);
        self
    }
}

impl fmt::Display for PathSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ps: &[BoolPoly]| ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{} Σ[{} vars] (-1)^({}) |{}⟩⟨{}|",
            self.scalar,
            self.num_vars,
            self.phase,
            list(&self.outputs),
            list(&self.inputs)
        )
    }
}
