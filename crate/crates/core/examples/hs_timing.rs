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

//! Times hidden-shift recovery across register sizes.

use std::time::Instant;

use pathsum::circuit::{hidden_shift_circuit, HiddenShiftSpec};
use pathsum::sim::{recover_shift, DEFAULT_MAX_EVAL_VARS};

fn main() {
    for n in [4, 8, 12, 16, 20, 24] {
        let spec = HiddenShiftSpec::random(n, 6, true, n as u64);
        let circuit = hidden_shift_circuit(&spec).unwrap();
        let start = Instant::now();
        let result = recover_shift(&circuit, DEFAULT_MAX_EVAL_VARS).unwrap();
        assert_eq!(result.shift, spec.shift);
        println!(
            "n={n:>3} gates={:>4} volume={:>6} state_vars={:>6} steps={:>7} time={:?}",
            circuit.len(),
            circuit.volume().volume,
            result.state_vars,
            result.rewrite_steps_total,
            start.elapsed()
        );
    }
}
