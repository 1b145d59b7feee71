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

//! Incremental normalization.
//!
//! Variables keep their original ids while the engine runs; a Fenwick tree
//! of removed ids turns an id into the dense index it would have after the
//! preceding steps, which is what the trace records. Phase monomials live in
//! a slab with a per-variable occurrence index, so a step only touches the
//! monomials that mention its pivot and target, and only the variables in
//! those monomials are re-examined.

use std::collections::BTreeSet;

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{Cofactor, RewriteStep, Rule, Strategy};
use crate::boolpoly::{BoolPoly, Monomial, VarId};
use crate::pathsum::{PathSum, Scalar};

struct Fenwick(Vec<u32>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: u32) {
        let mut i = i as usize + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of marked ids strictly below `i`.
    fn before(&self, i: u32) -> u32 {
        let mut i = i as usize;
        let mut sum = 0;
        while i > 0 {
            sum += self.0[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}

pub(super) struct Engine {
    scalar: Scalar,
    alive: Vec<bool>,
    removed: Fenwick,
    /// Phase monomials by slab id; `None` marks a free slot.
    slab: Vec<Option<Monomial>>,
    ids: FxHashMap<Monomial, u32>,
    free: Vec<u32>,
    /// Slab ids of the monomials mentioning each variable, unordered.
    occ: Vec<Vec<u32>>,
    /// Outputs followed by inputs.
    io: Vec<BoolPoly>,
    n_out: usize,
    /// Number of io polynomials mentioning each variable.
    io_count: Vec<u32>,
    ready: BTreeSet<u32>,
    ready_random: IndexSet<u32>,
    zeroed: bool,
}

impl Engine {
    pub(super) fn new(sum: &PathSum) -> Engine {
        let k = sum.num_vars() as usize;
        let mut engine = Engine {
            scalar: sum.scalar(),
            alive: vec![true; k],
            removed: Fenwick::new(k),
            slab: Vec::with_capacity(sum.phase().len()),
            ids: FxHashMap::with_capacity_and_hasher(sum.phase().len(), Default::default()),
            free: Vec::new(),
            occ: vec![Vec::new(); k],
            io: sum.outputs().iter().chain(sum.inputs()).cloned().collect(),
            n_out: sum.outputs().len(),
            io_count: vec![0; k],
            ready: BTreeSet::new(),
            ready_random: IndexSet::new(),
            zeroed: false,
        };
        let mut scratch = Vec::new();
        for m in sum.phase().monomials() {
            engine.toggle(m.clone(), &mut scratch);
        }
        for p in &engine.io {
            for v in p.vars() {
                engine.io_count[v.index()] += 1;
            }
        }
        for v in 0..k as u32 {
            engine.refresh(v);
        }
        engine
    }

    fn toggle(&mut self, m: Monomial, touched: &mut Vec<u32>) {
        touched.extend(m.vars().iter().map(|v| v.0));
        if let Some(id) = self.ids.remove(&m) {
            for v in m.vars() {
                let list = &mut self.occ[v.index()];
                let at = list.iter().position(|&i| i == id).expect("occurrence lists track the slab");
                list.swap_remove(at);
            }
            self.slab[id as usize] = None;
            self.free.push(id);
            return;
        }
        let id = match self.free.pop() {
            Some(id) => id,
            None => {
                self.slab.push(None);
                self.slab.len() as u32 - 1
            }
        };
        for v in m.vars() {
            self.occ[v.index()].push(id);
        }
        self.slab[id as usize] = Some(m.clone());
        self.ids.insert(m, id);
    }

    /// Removes and returns every phase monomial mentioning `v`.
    fn take_occurrences(&mut self, v: u32, touched: &mut Vec<u32>) -> Vec<Monomial> {
        let ids = self.occ[v as usize].clone();
        let mut out = Vec::with_capacity(ids.len());
        for id in ids {
            let m = self.slab[id as usize].clone().expect("occurrence points at a live monomial");
            self.toggle(m.clone(), touched);
            out.push(m);
        }
        out
    }

    fn cofactor(&self, x: u32) -> Cofactor {
        let occ = &self.occ[x as usize];
        if occ.len() > 3 {
            return Cofactor::Other;
        }
        let left: Vec<Monomial> = occ
            .iter()
            .map(|&id| self.slab[id as usize].as_ref().expect("live monomial").without(VarId(x)))
            .collect();
        Cofactor::classify(&left)
    }

    fn applicable(&self, x: u32) -> bool {
        self.alive[x as usize] && self.io_count[x as usize] == 0 && self.cofactor(x) != Cofactor::Other
    }

    fn refresh(&mut self, x: u32) {
        if self.applicable(x) {
            if self.ready.insert(x) {
                self.ready_random.insert(x);
            }
        } else if self.ready.remove(&x) {
            self.ready_random.swap_remove(&x);
        }
    }

    fn dense(&self, v: u32) -> VarId {
        VarId(v - self.removed.before(v))
    }

    fn kill(&mut self, x: u32) {
        self.alive[x as usize] = false;
        self.removed.add(x);
        self.refresh(x);
    }

    /// Steps on pivot `x` in original ids, targets ascending.
    fn steps(&self, x: u32) -> smallvec::SmallVec<[RewriteStep; 2]> {
        self.cofactor(x).steps(VarId(x))
    }

    fn choose(&self, strategy: Strategy, rng: &mut Option<ChaCha8Rng>) -> Option<RewriteStep> {
        let pivot = match (strategy, rng.as_mut()) {
            (Strategy::SeededRandom(_), Some(rng)) => {
                if self.ready_random.is_empty() {
                    return None;
                }
                self.ready_random[rng.gen_range(0..self.ready_random.len())]
            }
            _ => *self.ready.first()?,
        };
        let steps = self.steps(pivot);
        let pick = match rng.as_mut() {
            Some(rng) if steps.len() > 1 => rng.gen_range(0..steps.len()),
            _ => 0,
        };
        Some(steps[pick].clone())
    }

    /// The step with every index converted to its current dense value.
    fn to_dense(&self, step: &RewriteStep) -> RewriteStep {
        match step.rule {
            Rule::Elim => RewriteStep::elim(self.dense(step.pivot.0)),
            Rule::Z => RewriteStep::z(self.dense(step.pivot.0)),
            Rule::HH => {
                let q = step.substituent.as_ref().expect("HH carries Q").rename(|v| self.dense(v.0));
                RewriteStep::hh(self.dense(step.pivot.0), self.dense(step.target.expect("HH carries y").0), q)
                    .expect("renaming keeps HH well formed")
            }
        }
    }

    fn apply(&mut self, step: &RewriteStep) {
        let x = step.pivot.0;
        match step.rule {
            Rule::Elim => {
                self.scalar = self.scalar.scale(2);
                self.kill(x);
            }
            Rule::Z => self.zeroed = true,
            Rule::HH => {
                let y = step.target.expect("HH carries y");
                let q = step.substituent.as_ref().expect("HH carries Q");
                let q_var = q.vars().into_iter().next();
                let q_const = q.constant_term();
                let mut touched = Vec::new();
                self.take_occurrences(x, &mut touched);
                for m in self.take_occurrences(y.0, &mut touched) {
                    let rest = m.without(y);
                    if let Some(z) = q_var {
                        self.toggle(rest.with(z), &mut touched);
                    }
                    if q_const {
                        self.toggle(rest, &mut touched);
                    }
                }
                if self.io_count[y.index()] > 0 {
                    for i in 0..self.io.len() {
                        if !self.io[i].contains_var(y) {
                            continue;
                        }
                        let before = self.io[i].vars();
                        let after_poly = self.io[i].substitute(y, q);
                        let after = after_poly.vars();
                        for v in before.difference(&after) {
                            self.io_count[v.index()] -= 1;
                            touched.push(v.0);
                        }
                        for v in after.difference(&before) {
                            self.io_count[v.index()] += 1;
                            touched.push(v.0);
                        }
                        self.io[i] = after_poly;
                    }
                }
                self.kill(x);
                touched.push(y.0);
                touched.sort_unstable();
                touched.dedup();
                for v in touched {
                    self.refresh(v);
                }
            }
        }
    }

    /// Rewrites to normal form and returns the trace in dense indices.
    pub(super) fn run(&mut self, strategy: Strategy) -> Vec<RewriteStep> {
        let mut rng = match strategy {
            Strategy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Strategy::DeterministicFirst => None,
        };
        let mut trace = Vec::new();
        while !self.zeroed {
            let Some(step) = self.choose(strategy, &mut rng) else { break };
            trace.push(self.to_dense(&step));
            self.apply(&step);
        }
        trace
    }

    pub(super) fn finish(self) -> PathSum {
        let n_in = self.io.len() - self.n_out;
        if self.zeroed {
            return PathSum::zero_op(n_in, self.n_out);
        }
        let mut dense = vec![VarId(0); self.alive.len()];
        let mut next = 0;
        for (v, &alive) in self.alive.iter().enumerate() {
            if alive {
                dense[v] = VarId(next);
                next += 1;
            }
        }
        let rename = |p: &BoolPoly| p.rename(|v| dense[v.index()]);
        let phase = BoolPoly::from_monomials(self.slab.iter().flatten().map(|m| m.rename(|v| dense[v.index()])));
        let mut io: Vec<BoolPoly> = self.io.iter().map(rename).collect();
        let inputs = io.split_off(self.n_out);
        PathSum::from_parts(self.scalar, next, phase, io, inputs)
    }
}
