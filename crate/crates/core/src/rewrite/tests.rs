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

use super::*;
use crate::boolpoly::Literal;
use crate::circuit::parse;
use crate::fuzz::fuzz_sum;
use crate::pathsum::{interpret, Scalar};

fn v(i: u32) -> BoolPoly {
    BoolPoly::var(VarId(i))
}

fn sum(k: u32, phase: BoolPoly, outputs: Vec<BoolPoly>) -> PathSum {
    PathSum::make(Scalar::ONE, k, phase, outputs, vec![]).unwrap()
}

#[test]
fn restricted_hh_rejects_two_variable_q() {
    // w=0, x=1, y=2, z=3: phase x(y+z+w) + y, output y
    let phase = v(1).mul(&v(2).add(&v(3)).add(&v(0))).add(&v(2));
    let a = PathSum::make(Scalar::sqrt2_pow(-5), 4, phase, vec![v(2)], vec![]).unwrap();
    let steps = find_rewrites(&a);
    assert!(steps.iter().all(|s| s.pivot() != VarId(1)), "{steps:?}");
    // w and z each multiply x alone, so only x ← 0 substitutions remain
    let lines: Vec<String> = steps.iter().map(ToString::to_string).collect();
    assert_eq!(lines, ["HH pivot=0 target=1 Q=0", "HH pivot=3 target=1 Q=0"]);
}

#[test]
fn lone_linear_phase_is_z() {
    let a = sum(1, v(0), vec![BoolPoly::one()]);
    assert_eq!(find_rewrites(&a), vec![RewriteStep::z(VarId(0))]);
    let zero = apply(&a, &RewriteStep::z(VarId(0))).unwrap();
    assert_eq!(zero, PathSum::zero_op(0, 1));
    assert!(a.eval(8).unwrap().is_zero());
}

#[test]
fn unused_variable_is_elim() {
    let a = sum(2, BoolPoly::zero(), vec![v(1)]);
    assert_eq!(find_rewrites(&a), vec![RewriteStep::elim(VarId(0))]);
    let b = apply(&a, &RewriteStep::elim(VarId(0))).unwrap();
    assert_eq!(b.num_vars(), 1);
    assert_eq!(b.scalar(), Scalar::sqrt2_pow(2));
    assert_eq!(b.outputs(), &[v(0)]);
}

#[test]
fn z_step_on_closed_sum_evaluates_to_zero() {
    let a = PathSum::make(Scalar::ONE, 1, v(0), vec![], vec![]).unwrap();
    let b = apply(&a, &RewriteStep::z(VarId(0))).unwrap();
    assert!(b.eval_scalar(8).unwrap().is_zero());
    assert!(a.eval_scalar(8).unwrap().is_zero());
}

#[test]
fn hh_then_elim_gives_ket_zero() {
    let a = PathSum::make(Scalar::sqrt2_pow(-2), 2, v(0).mul(&v(1)), vec![v(1)], vec![]).unwrap();
    let hh = RewriteStep::hh(VarId(0), VarId(1), BoolPoly::zero()).unwrap();
    assert!(find_rewrites(&a).contains(&hh));
    let b = apply(&a, &hh).unwrap();
    assert_eq!(b.num_vars(), 1);
    let c = apply(&b, &RewriteStep::elim(VarId(0))).unwrap();
    assert_eq!(c, PathSum::ket(&[false]));
}

#[test]
fn stale_steps_are_rejected() {
    let a = sum(2, v(0).mul(&v(1)), vec![v(1)]);
    assert!(matches!(apply(&a, &RewriteStep::elim(VarId(0))), Err(RewriteError::StaleStep(_))));
    assert!(apply(&a, &RewriteStep::z(VarId(7))).is_err());
    let wrong_q = RewriteStep::hh(VarId(0), VarId(1), BoolPoly::one()).unwrap();
    assert!(apply(&a, &wrong_q).is_err());
}

#[test]
fn two_targets_are_offered_in_order() {
    // x0 (x1 + x2 + 1), outputs constant
    let a = sum(3, v(0).mul(&v(1).add(&v(2)).add(&BoolPoly::one())), vec![]);
    let steps: Vec<String> = find_rewrites(&a).iter().map(ToString::to_string).collect();
    assert_eq!(
        steps,
        [
            "HH pivot=0 target=1 Q=x2+1",
            "HH pivot=0 target=2 Q=x1+1",
            "HH pivot=1 target=0 Q=0",
            "HH pivot=2 target=0 Q=0"
        ]
    );
}

#[test]
fn trace_lines_round_trip() {
    for line in ["ELIM x=3", "Z x=0", "HH pivot=2 target=5 Q=x3+1", "HH pivot=0 target=1 Q=0", "HH pivot=4 target=1 Q=1"] {
        let step: RewriteStep = line.parse().unwrap();
        assert_eq!(step.to_string(), line);
    }
    for bad in ["", "ELIM", "ELIM y=3", "HH pivot=1 target=1 Q=0", "HH pivot=1 target=2 Q=x1", "HH pivot=0 target=1 Q=x2*x3", "SWAP x=1"] {
        assert!(bad.parse::<RewriteStep>().is_err(), "{bad}");
    }
}

#[test]
fn normal_sums_are_left_alone() {
    let id = PathSum::identity(3);
    let (nf, trace) = normalize(&id, Strategy::DeterministicFirst);
    assert_eq!(nf, id);
    assert!(trace.is_empty());
}

#[test]
fn double_hadamard_on_zero() {
    let c = parse("qubits 1\nh 0\nh 0").unwrap();
    let a = interpret(&c).unwrap().compose(&PathSum::ket(&[false])).unwrap();
    let (nf, trace) = normalize(&a, Strategy::DeterministicFirst);
    assert_eq!(nf, PathSum::ket(&[false]));
    assert!(trace.len() <= a.num_vars() as usize);
}

#[test]
fn engine_matches_reference_normalizer() {
    for seed in 0..300 {
        let a = fuzz_sum(seed, 10);
        let (fast, fast_trace) = normalize(&a, Strategy::DeterministicFirst);
        let (slow, slow_trace) = normalize_naive(&a, Strategy::DeterministicFirst);
        assert_eq!(fast_trace, slow_trace, "seed {seed}: {a}");
        assert_eq!(fast, slow, "seed {seed}");
        assert_eq!(replay(&a, &fast_trace).unwrap(), fast);
        assert!(find_rewrites(&fast).is_empty());
    }
}

#[test]
fn random_traces_replay_through_apply() {
    for seed in 0..200 {
        let a = fuzz_sum(seed, 10);
        let (nf, trace) = normalize(&a, Strategy::SeededRandom(seed ^ 0xabcd));
        assert_eq!(replay(&a, &trace).unwrap(), nf, "seed {seed}");
        assert!(find_rewrites(&nf).is_empty());
        assert_eq!(normalize(&a, Strategy::SeededRandom(seed ^ 0xabcd)).1, trace);
    }
}

#[test]
fn equivalence_examples() {
    let a = sum(3, v(0).mul(&v(1)).add(&v(2)), vec![v(1), v(2)]);
    let swapped = sum(3, v(0).mul(&v(2)).add(&v(1)), vec![v(2), v(1)]);
    assert_eq!(simply_equivalent(&a, &swapped, 8), Ok(true));

    // Σ_x (-1)^{x·y} |y⟩ against Σ_x (-1)^{x(y+1)} |y+1⟩
    let one = BoolPoly::one();
    let b = sum(2, v(0).mul(&v(1)), vec![v(1)]);
    let c = sum(2, v(0).mul(&v(1).add(&one)), vec![v(1).add(&one)]);
    let phi = find_simple_transform(&b, &c, 8).unwrap().unwrap();
    assert_eq!(b.apply_simple_transform(&phi).unwrap(), c);

    let h = crate::pathsum::gate_sem(&crate::circuit::Gate::H(0));
    let x = crate::pathsum::gate_sem(&crate::circuit::Gate::X(0));
    assert_eq!(simply_equivalent(&h, &x, 8), Ok(false));

    let big = PathSum::identity(9);
    assert_eq!(simply_equivalent(&big, &big, 8), Err(EquivError::VarCap { num_vars: 9, cap: 8 }));
}

#[test]
fn equivalence_finds_random_transforms() {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    for seed in 0..200 {
        let a = fuzz_sum(seed, 8);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<u32> = (0..a.num_vars()).collect();
        perm.shuffle(&mut rng);
        let phi: Vec<Literal> = perm.iter().map(|&j| Literal::new(VarId(j), rng.gen())).collect();
        let b = a.apply_simple_transform(&phi).unwrap();
        let found = find_simple_transform(&a, &b, 8).unwrap().expect("transform exists");
        assert_eq!(a.apply_simple_transform(&found).unwrap(), b, "seed {seed}");
    }
}
