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

use std::fmt;

use super::{PathSum, PathSumError};
use crate::amplitude::{amplitude_from_count, Amplitude, AmplitudeError, RootTwoSum};
use crate::boolpoly::BoolPoly;

/// Widest register a dense matrix is built for, per side.
const MAX_WIRES: usize = 24;
/// Mask evaluation packs one variable per bit.
const MAX_MASK_VARS: u32 = 63;

/// Dense matrix of exact amplitudes. Row and column indices are bitstrings
/// with wire 0 as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Amplitude>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Amplitude::zero(); rows * cols],
        }
    }

    /// Identity on `n` wires.
    pub fn identity(n: usize) -> Matrix {
        let dim = 1 << n;
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Amplitude::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Amplitude>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count must match dimensions");
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Amplitude {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Amplitude) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    /// Column `col` as a vector.
    pub fn column(&self, col: usize) -> Vec<Amplitude> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    /// `self · other`, exact.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, AmplitudeError> {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = RootTwoSum::new();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc.add(&a.mul(other.get(k, c)));
                }
                out.set(r, c, acc.collapse()?);
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.mul(other.get(r2, c2)));
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Amplitude::is_zero)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Polynomial compiled to bit masks for fast point evaluation.
struct MaskPoly(Vec<u64>);

impl MaskPoly {
    fn new(p: &BoolPoly) -> MaskPoly {
        MaskPoly(p.monomials().map(|m| m.mask()).collect())
    }

    #[inline]
    fn eval(&self, point: u64) -> bool {
        self.0.iter().fold(false, |acc, &m| acc ^ (point & m == m))
    }
}

fn wire_index(polys: &[MaskPoly], point: u64) -> usize {
    polys.iter().fold(0usize, |idx, p| idx << 1 | p.eval(point) as usize)
}

pub(super) fn eval(sum: &PathSum, max_vars: u32) -> Result<Matrix, PathSumError> {
    let k = sum.num_vars();
    if k > max_vars.min(MAX_MASK_VARS) {
        return Err(PathSumError::EvalGuard {
            num_vars: k,
            max_vars: max_vars.min(MAX_MASK_VARS),
        });
    }
    let (n_in, n_out) = sum.signature();
    if n_in > MAX_WIRES || n_out > MAX_WIRES {
        return Err(PathSumError::DimensionTooLarge {
            rows_log: n_out,
            cols_log: n_in,
        });
    }
    let (rows, cols) = (1usize << n_out, 1usize << n_in);
    if sum.scalar().is_zero() {
        return Ok(Matrix::zeros(rows, cols));
    }

    let phase = MaskPoly::new(sum.phase());
    let outputs: Vec<MaskPoly> = sum.outputs().iter().map(MaskPoly::new).collect();
    let inputs: Vec<MaskPoly> = sum.inputs().iter().map(MaskPoly::new).collect();
    let accumulate = |range: std::ops::Range<u64>| -> Vec<i64> {
        let mut counts = vec![0i64; rows * cols];
        for point in range {
            let cell = wire_index(&outputs, point) * cols + wire_index(&inputs, point);
            counts[cell] += if phase.eval(point) { -1 } else { 1 };
        }
        counts
    };

    let points = 1u64 << k;
    let counts = accumulate_points(points, rows * cols, accumulate);
    let half_exp = sum.scalar().half_exp();
    let entries = counts.into_iter().map(|c| amplitude_from_count(c, half_exp)).collect();
    Ok(Matrix { rows, cols, entries })
}

#[cfg(feature = "parallel")]
fn accumulate_points(points: u64, cells: usize, f: impl Fn(std::ops::Range<u64>) -> Vec<i64> + Sync) -> Vec<i64> {
    use rayon::prelude::*;

    const BLOCK: u64 = 1 << 14;
    if points <= BLOCK {
        return f(0..points);
    }
    // integer counts add exactly, so block order does not affect the result
    (0..points / BLOCK)
        .into_par_iter()
        .map(|b| f(b * BLOCK..(b + 1) * BLOCK))
        .reduce(
            || vec![0i64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

#[cfg(not(feature = "parallel"))]
fn accumulate_points(points: u64, _cells: usize, f: impl Fn(std::ops::Range<u64>) -> Vec<i64>) -> Vec<i64> {
    f(0..points)
}
