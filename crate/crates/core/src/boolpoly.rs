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

//! Multilinear polynomials over F₂.
//!
//! Every [`BoolPoly`] is kept in canonical form: a set of distinct
//! [`Monomial`]s, each a strictly increasing list of variables. Because
//! `v² = v` in the Boolean ring, two polynomials are equal as functions
//! exactly when their monomial sets are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

/// Index of a summation variable inside one path sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(pub u32);

impl VarId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VarId {
    fn from(v: u32) -> Self {
        VarId(v)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
    #[error("variable {0} is not covered by the substitution map")]
    UnmappedVar(VarId),
    #[error("substitution map is not injective: two variables map onto {0}")]
    NonInjectiveMap(VarId),
}

/// A product of distinct variables. The empty product is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[VarId; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        let mut vars = SmallVec::new();
        vars.push(v);
        Monomial(vars)
    }

    /// Builds a monomial from any list of variables; repeats collapse (`v·v = v`).
    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        let mut vars: SmallVec<[VarId; 4]> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        Monomial(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The monomial with `v` removed (unchanged if `v` is absent).
    pub fn without(&self, v: VarId) -> Monomial {
        let mut vars = self.0.clone();
        if let Ok(pos) = vars.binary_search(&v) {
            vars.remove(pos);
        }
        Monomial(vars)
    }

    /// The monomial multiplied by `v`.
    pub fn with(&self, v: VarId) -> Monomial {
        let mut vars = self.0.clone();
        if let Err(pos) = vars.binary_search(&v) {
            vars.insert(pos, v);
        }
        Monomial(vars)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[VarId; 4]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Renames every variable through `f`. The caller guarantees `f` is injective.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> Monomial {
        Monomial::from_vars(self.0.iter().map(|&v| f(v)))
    }

    /// Value at a point packed as a bit mask (bit `i` holds variable `i`).
    #[inline]
    pub fn eval_mask(&self, point: u64) -> bool {
        self.0.iter().all(|v| point >> v.0 & 1 == 1)
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, v| m | 1u64 << v.0)
    }
}

/// Graded lexicographic order: lower degree first, then by variable list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A literal `v` or `v + 1`; the image of one variable under a simple map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: VarId,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: VarId, negated: bool) -> Self {
        Literal { var, negated }
    }

    pub fn to_poly(self) -> BoolPoly {
        let mut p = BoolPoly::var(self.var);
        if self.negated {
            p.toggle(Monomial::one());
        }
        p
    }
}

/// Canonical multilinear polynomial over F₂.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolPoly {
    terms: BTreeSet<Monomial>,
}

impl BoolPoly {
    pub fn zero() -> Self {
        BoolPoly::default()
    }

    pub fn one() -> Self {
        BoolPoly::constant(true)
    }

    pub fn constant(bit: bool) -> Self {
        let mut p = BoolPoly::zero();
        if bit {
            p.terms.insert(Monomial::one());
        }
        p
    }

    pub fn var(v: VarId) -> Self {
        BoolPoly::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        BoolPoly { terms }
    }

    /// Sums a list of monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut p = BoolPoly::zero();
        for m in monomials {
            p.toggle(m);
        }
        p
    }

    /// Adds a single monomial in place (insert, or cancel an existing copy).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(Monomial::is_one)
    }

    /// The polynomial's value when it has no variables.
    pub fn as_constant(&self) -> Option<bool> {
        match self.terms.len() {
            0 => Some(false),
            1 if self.is_one() => Some(true),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> bool {
        self.terms.contains(&Monomial::one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().next_back().map(Monomial::degree)
    }

    /// Monomials in graded lexicographic order.
    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn add(&self, other: &BoolPoly) -> BoolPoly {
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        BoolPoly { terms }
    }

    pub fn add_assign(&mut self, other: &BoolPoly) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn mul(&self, other: &BoolPoly) -> BoolPoly {
        let mut out = BoolPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.product(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BoolPoly {
        BoolPoly::from_monomials(self.terms.iter().map(|t| t.product(m)))
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|m| m.contains(v))
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.iter().flat_map(|m| m.vars().iter().copied()).collect()
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.terms.iter().filter_map(|m| m.vars().last().copied()).max()
    }

    /// Splits `self = x·L + R` with `x` absent from both `L` and `R`.
    pub fn cofactor(&self, x: VarId) -> (BoolPoly, BoolPoly) {
        let mut left = BTreeSet::new();
        let mut rest = BTreeSet::new();
        for m in &self.terms {
            if m.contains(x) {
                left.insert(m.without(x));
            } else {
                rest.insert(m.clone());
            }
        }
        (BoolPoly { terms: left }, BoolPoly { terms: rest })
    }

    /// `self[v ← q]`, computed as `q·L + R` from the cofactor split on `v`.
    pub fn substitute(&self, v: VarId, q: &BoolPoly) -> BoolPoly {
        let (left, mut rest) = self.cofactor(v);
        if left.is_zero() {
            return rest;
        }
        rest.add_assign(&q.mul(&left));
        rest
    }

    /// Evaluates at a point given as an explicit assignment.
    pub fn eval_at(&self, assignment: &BTreeMap<VarId, bool>) -> Result<bool, PolyError> {
        let mut acc = false;
        for m in &self.terms {
            let mut value = true;
            for v in m.vars() {
                match assignment.get(v) {
                    Some(&b) => value &= b,
                    None => return Err(PolyError::MissingAssignment(*v)),
                }
            }
            acc ^= value;
        }
        Ok(acc)
    }

    /// Evaluates at a point packed into a mask; all variables must be `< 64`.
    #[inline]
    pub fn eval_mask(&self, point: u64) -> bool {
        self.terms.iter().fold(false, |acc, m| acc ^ m.eval_mask(point))
    }

    /// Applies a simple homomorphism: each variable goes to a variable or its negation.
    pub fn apply_simple_map(&self, phi: &BTreeMap<VarId, Literal>) -> Result<BoolPoly, PolyError> {
        let mut seen: BTreeMap<VarId, VarId> = BTreeMap::new();
        for v in self.vars() {
            let lit = phi.get(&v).ok_or(PolyError::UnmappedVar(v))?;
            if let Some(_prev) = seen.insert(lit.var, v) {
                return Err(PolyError::NonInjectiveMap(lit.var));
            }
        }
        Ok(self.map_literals(|v| phi[&v]))
    }

    /// Replaces each variable by a literal. `f` must be injective on `vars(self)`.
    pub(crate) fn map_literals(&self, mut f: impl FnMut(VarId) -> Literal) -> BoolPoly {
        let mut out = BoolPoly::zero();
        for m in &self.terms {
            let mut plain: SmallVec<[VarId; 4]> = SmallVec::new();
            let mut negated: SmallVec<[VarId; 4]> = SmallVec::new();
            for &v in m.vars() {
                let lit = f(v);
                if lit.negated {
                    negated.push(lit.var);
                } else {
                    plain.push(lit.var);
                }
            }
            // ∏(w) · ∏(w' + 1) expands to one monomial per subset of the negated vars.
            let base = Monomial::from_vars(plain);
            let subsets = 1usize << negated.len();
            for mask in 0..subsets {
                let chosen = negated
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &w)| w);
                out.toggle(base.product(&Monomial::from_vars(chosen)));
            }
        }
        out
    }

    /// Renames variables through an injective map.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> BoolPoly {
        BoolPoly {
            terms: self.terms.iter().map(|m| m.rename(&mut f)).collect(),
        }
    }

    /// Shifts every variable index up by `offset`.
    pub fn shift(&self, offset: u32) -> BoolPoly {
        if offset == 0 {
            return self.clone();
        }
        self.rename(|v| VarId(v.0 + offset))
    }

    /// Textual form: one list of variable indices per monomial.
    pub fn to_index_lists(&self) -> Vec<Vec<u32>> {
        self.terms.iter().map(|m| m.vars().iter().map(|v| v.0).collect()).collect()
    }

    pub fn from_index_lists(lists: &[Vec<u32>]) -> BoolPoly {
        BoolPoly::from_monomials(lists.iter().map(|l| Monomial::from_vars(l.iter().map(|&i| VarId(i)))))
    }
}

impl From<Monomial> for BoolPoly {
    fn from(m: Monomial) -> Self {
        BoolPoly::monomial(m)
    }
}

impl From<Literal> for BoolPoly {
    fn from(l: Literal) -> Self {
        l.to_poly()
    }
}

/// Highest degree first, so `x0*x1+x2+1`.
impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Serialize for BoolPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_index_lists().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoolPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lists = Vec::<Vec<u32>>::deserialize(deserializer)?;
        Ok(BoolPoly::from_index_lists(&lists))
    }
}
