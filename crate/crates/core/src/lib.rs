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

//! Symbolic simulation of Toffoli–Hadamard circuits with Boolean path sums.
//!
//! A circuit over `{H, X, C^(m)Z, SWAP}` is interpreted as a [`PathSum`],
//! reduced with the Elim / Z / HH rewrite rules, and evaluated exactly. The
//! rewrite system is confluent up to renaming and negating variables, so the
//! order in which rules fire does not change the normal form in any way that
//! matters; for hidden-shift circuits the normal form has no variables left
//! and reads off the shift directly.

pub mod amplitude;
pub mod boolpoly;
pub mod circuit;
pub mod fuzz;
pub mod pathsum;
pub mod rewrite;
pub mod sim;

pub use amplitude::Amplitude;
pub use boolpoly::{BoolPoly, Literal, Monomial, VarId};
pub use circuit::{Circuit, Gate, HiddenShiftSpec};
pub use pathsum::{Matrix, PathSum, Scalar};
pub use rewrite::{normalize, RewriteStep, Rule, Strategy};
