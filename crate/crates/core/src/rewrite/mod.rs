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

//! The Elim, Z and HH rewrite rules.
//!
//! For a variable `x` split the phase as `x·L + R`. When `x` does not occur
//! in any output or input:
//!
//! * **Elim** fires if `L = 0`: drop `x` and double the scalar.
//! * **Z** fires if `L = 1`: the sum is the zero operator.
//! * **HH** fires if `L = y + Q` with `y` a variable and `Q ∈ {0, 1, z, z+1}`:
//!   drop `x` and its terms, then substitute `y ← Q` everywhere.
//!
//! [`find_rewrites`] and [`apply`] work directly on [`PathSum`] values and
//! reindex densely after every step. [`normalize`] runs an indexed engine
//! that only revisits variables touched by the previous step.

mod engine;
mod equiv;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::boolpoly::{BoolPoly, Monomial, VarId};
use crate::pathsum::PathSum;

pub use equiv::{find_simple_transform, simply_equivalent, EquivError, DEFAULT_VAR_CAP, MAX_VAR_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Elim,
    Z,
    HH,
}

/// One rule application. Indices refer to the sum the step applies to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    rule: Rule,
    pivot: VarId,
    target: Option<VarId>,
    substituent: Option<BoolPoly>,
}

impl RewriteStep {
    pub fn elim(x: VarId) -> Self {
        RewriteStep {
            rule: Rule::Elim,
            pivot: x,
            target: None,
            substituent: None,
        }
    }

    pub fn z(x: VarId) -> Self {
        RewriteStep {
            rule: Rule::Z,
            pivot: x,
            target: None,
            substituent: None,
        }
    }

    /// HH on pivot `x`, substituting `y ← q`. Returns `None` unless `q` is one
    /// of `0`, `1`, `z`, `z+1` with `z ∉ {x, y}` and `x ≠ y`.
    pub fn hh(x: VarId, y: VarId, q: BoolPoly) -> Option<Self> {
        let vars = q.vars();
        let simple = q.degree().unwrap_or(0) <= 1 && vars.len() <= 1;
        if x == y || !simple || vars.contains(&x) || vars.contains(&y) {
            return None;
        }
        Some(RewriteStep {
            rule: Rule::HH,
            pivot: x,
            target: Some(y),
            substituent: Some(q),
        })
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn pivot(&self) -> VarId {
        self.pivot
    }

    pub fn target(&self) -> Option<VarId> {
        self.target
    }

    pub fn substituent(&self) -> Option<&BoolPoly> {
        self.substituent.as_ref()
    }
}

/// Trace line: `ELIM x=<i>`, `Z x=<i>` or `HH pivot=<i> target=<j> Q=<poly>`.
impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rule, self.target, &self.substituent) {
            (Rule::Elim, ..) => write!(f, "ELIM x={}", self.pivot.0),
            (Rule::Z, ..) => write!(f, "Z x={}", self.pivot.0),
            (Rule::HH, Some(y), Some(q)) => write!(f, "HH pivot={} target={} Q={}", self.pivot.0, y.0, q),
            (Rule::HH, ..) => unreachable!("HH steps always carry a target and substituent"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed trace line `{0}`")]
pub struct TraceParseError(pub String);

impl FromStr for RewriteStep {
    type Err = TraceParseError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let bad = || TraceParseError(line.to_string());
        let fields: Vec<&str> = line.split_whitespace().collect();
        let value = |field: &str, key: &str| field_value(field, key).map(str::to_owned).ok_or_else(bad);
        let index = |s: &str| s.parse::<u32>().map(VarId).map_err(|_| bad());
        match fields.as_slice() {
            ["ELIM", x] => Ok(RewriteStep::elim(index(&value(x, "x")?)?)),
            ["Z", x] => Ok(RewriteStep::z(index(&value(x, "x")?)?)),
            ["HH", p, t, q] => {
                let pivot = index(&value(p, "pivot")?)?;
                let target = index(&value(t, "target")?)?;
                let q = parse_substituent(&value(q, "Q")?).ok_or_else(bad)?;
                RewriteStep::hh(pivot, target, q).ok_or_else(bad)
            }
            _ => Err(bad()),
        }
    }
}

/// The `v` in `key=v`.
fn field_value<'a>(field: &'a str, key: &str) -> Option<&'a str> {
    field.strip_prefix(key)?.strip_prefix('=')
}

/// Parses `0`, `1`, `x<i>` or `x<i>+1`.
fn parse_substituent(text: &str) -> Option<BoolPoly> {
    let (var, plus_one) = match text.strip_suffix("+1") {
        Some(v) => (v, true),
        None => (text, false),
    };
    let base = match var {
        "0" if !plus_one => BoolPoly::zero(),
        "1" if !plus_one => BoolPoly::one(),
        _ => BoolPoly::var(VarId(var.strip_prefix('x')?.parse().ok()?)),
    };
    Some(if plus_one { base.add(&BoolPoly::one()) } else { base })
}

/// How [`normalize`] picks among applicable steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The first step in [`find_rewrites`] order.
    DeterministicFirst,
    /// A uniformly random applicable pivot, then a random step on it.
    SeededRandom(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("step `{0}` does not apply to this path sum")]
    StaleStep(RewriteStep),
}

/// Shape of `L` in `phase = x·L + R`.
#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Cofactor {
    Zero,
    One,
    /// `L = Σ vars + constant`, one or two variables.
    Linear(SmallVec<[VarId; 2]>, bool),
    Other,
}

impl Cofactor {
    /// Classifies `L` from its monomials (any order, no duplicates).
    pub(crate) fn classify<'a>(monomials: impl IntoIterator<Item = &'a Monomial>) -> Cofactor {
        let mut vars: SmallVec<[VarId; 2]> = SmallVec::new();
        let mut constant = false;
        let mut empty = true;
        for m in monomials {
            empty = false;
            match m.vars() {
                [] => constant = true,
                [v] if vars.len() < 2 => vars.push(*v),
                _ => return Cofactor::Other,
            }
        }
        vars.sort_unstable();
        match (empty, vars.is_empty()) {
            (true, _) => Cofactor::Zero,
            (false, true) => Cofactor::One,
            (false, false) => Cofactor::Linear(vars, constant),
        }
    }

    /// The applicable steps on pivot `x`, targets ascending.
    pub(crate) fn steps(&self, x: VarId) -> SmallVec<[RewriteStep; 2]> {
        let mut out = SmallVec::new();
        match self {
            Cofactor::Zero => out.push(RewriteStep::elim(x)),
            Cofactor::One => out.push(RewriteStep::z(x)),
            Cofactor::Linear(vars, constant) => {
                for (i, &y) in vars.iter().enumerate() {
                    let mut q = BoolPoly::constant(*constant);
                    if let Some(&z) = vars.get(1 - i) {
                        q.toggle(Monomial::var(z));
                    }
                    out.extend(RewriteStep::hh(x, y, q));
                }
            }
            Cofactor::Other => {}
        }
        out
    }
}

fn steps_at(sum: &PathSum, x: VarId) -> SmallVec<[RewriteStep; 2]> {
    if x.0 >= sum.num_vars() || sum.outputs().iter().chain(sum.inputs()).any(|p| p.contains_var(x)) {
        return SmallVec::new();
    }
    let (left, _) = sum.phase().cofactor(x);
    Cofactor::classify(left.monomials()).steps(x)
}

/// Every applicable step: ascending pivot, then Elim, Z, HH, then ascending target.
pub fn find_rewrites(sum: &PathSum) -> Vec<RewriteStep> {
    (0..sum.num_vars()).flat_map(|x| steps_at(sum, VarId(x))).collect()
}

/// Applies one step and reindexes the remaining variables densely.
pub fn apply(sum: &PathSum, step: &RewriteStep) -> Result<PathSum, RewriteError> {
    if !steps_at(sum, step.pivot).contains(step) {
        return Err(RewriteError::StaleStep(step.clone()));
    }
    let x = step.pivot;
    Ok(match (step.rule, step.target, &step.substituent) {
        (Rule::Elim, ..) => sum.drop_var(x).with_scalar(sum.scalar().scale(2)),
        (Rule::Z, ..) => {
            let (n_in, n_out) = sum.signature();
            PathSum::zero_op(n_in, n_out)
        }
        (Rule::HH, Some(y), Some(q)) => {
            let (_, rest) = sum.phase().cofactor(x);
            let sub = |p: &BoolPoly| p.substitute(y, q);
            PathSum::from_parts(
                sum.scalar(),
                sum.num_vars(),
                sub(&rest),
                sum.outputs().iter().map(sub).collect(),
                sum.inputs().iter().map(sub).collect(),
            )
            .drop_var(x)
        }
        (Rule::HH, ..) => unreachable!("HH steps always carry a target and substituent"),
    })
}

/// Rewrites until no rule applies. Every step removes a variable, so the
/// trace is never longer than `sum.num_vars()`.
pub fn normalize(sum: &PathSum, strategy: Strategy) -> (PathSum, Vec<RewriteStep>) {
    let mut engine = engine::Engine::new(sum);
    let trace = engine.run(strategy);
    assert!(trace.len() <= sum.num_vars() as usize, "rewrite trace exceeds the variable count");
    (engine.finish(), trace)
}

/// Normalizes by repeatedly calling [`find_rewrites`] and [`apply`]. Quadratic;
/// kept as a reference for the engine.
pub fn normalize_naive(sum: &PathSum, strategy: Strategy) -> (PathSum, Vec<RewriteStep>) {
    use rand::{Rng, SeedableRng};
    let mut rng = match strategy {
        Strategy::SeededRandom(seed) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
        Strategy::DeterministicFirst => None,
    };
    let mut current = sum.clone();
    let mut trace = Vec::new();
    loop {
        let steps = find_rewrites(&current);
        let Some(first) = steps.first() else { break };
        let step = match rng.as_mut() {
            None => first.clone(),
            Some(rng) => {
                let mut pivots: Vec<VarId> = steps.iter().map(|s| s.pivot).collect();
                pivots.dedup();
                let pivot = pivots[rng.gen_range(0..pivots.len())];
                let on_pivot: Vec<&RewriteStep> = steps.iter().filter(|s| s.pivot == pivot).collect();
                on_pivot[rng.gen_range(0..on_pivot.len())].clone()
            }
        };
        current = apply(&current, &step).expect("found steps apply");
        trace.push(step);
    }
    (current, trace)
}

/// Replays a trace with [`apply`].
pub fn replay(sum: &PathSum, trace: &[RewriteStep]) -> Result<PathSum, RewriteError> {
    trace.iter().try_fold(sum.clone(), |acc, step| apply(&acc, step))
}

#[cfg(test)]
mod tests;
