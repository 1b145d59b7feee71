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

//! Deciding simple equivalence by search.
//!
//! Candidate bijections are built one variable at a time. A variable's
//! profile (the degree of its derivative in each polynomial) and the degree
//! of each pairwise second derivative are unchanged by renaming and by
//! negating variables, so they prune the search before negations are
//! considered. For each complete bijection the negation pattern is found by
//! comparing truth tables under every translation.

use thiserror::Error;

use crate::boolpoly::{BoolPoly, Literal, VarId};
use crate::pathsum::PathSum;

pub const DEFAULT_VAR_CAP: u32 = 8;
/// Truth tables have `2^k` bits, so the search is refused above this.
pub const MAX_VAR_CAP: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("path sum has {num_vars} variables, above the equivalence cap of {cap}")]
    VarCap { num_vars: u32, cap: u32 },
}

/// Whether `a` and `b` are related by a simple transformation.
pub fn simply_equivalent(a: &PathSum, b: &PathSum, var_cap: u32) -> Result<bool, EquivError> {
    Ok(find_simple_transform(a, b, var_cap)?.is_some())
}

/// A `φ` with `a.apply_simple_transform(φ) == b`, if one exists.
pub fn find_simple_transform(a: &PathSum, b: &PathSum, var_cap: u32) -> Result<Option<Vec<Literal>>, EquivError> {
    let cap = var_cap.min(MAX_VAR_CAP);
    for s in [a, b] {
        if s.num_vars() > cap {
            return Err(EquivError::VarCap {
                num_vars: s.num_vars(),
                cap,
            });
        }
    }
    if a.scalar() != b.scalar() || a.signature() != b.signature() || a.num_vars() != b.num_vars() {
        return Ok(None);
    }
    let polys_a: Vec<&BoolPoly> = a.polys().collect();
    let polys_b: Vec<&BoolPoly> = b.polys().collect();
    if polys_a.iter().zip(&polys_b).any(|(p, q)| p.degree() != q.degree()) {
        return Ok(None);
    }
    let search = Search::new(&polys_a, &polys_b, a.num_vars() as usize);
    Ok(search.run())
}

/// Degree of a polynomial, `-1` for zero.
fn deg(p: &BoolPoly) -> i32 {
    p.degree().map_or(-1, |d| d as i32)
}

struct Invariants {
    /// `profile[x][p]`: degree of `∂P_p/∂x`.
    profile: Vec<Vec<i32>>,
    /// `pair[x][y][p]`: degree of `∂²P_p/∂x∂y`.
    pair: Vec<Vec<Vec<i32>>>,
}

impl Invariants {
    fn new(polys: &[&BoolPoly], k: usize) -> Invariants {
        let derivative = |p: &BoolPoly, x: usize| p.cofactor(VarId(x as u32)).0;
        let first: Vec<Vec<BoolPoly>> = (0..k).map(|x| polys.iter().map(|p| derivative(p, x)).collect()).collect();
        let profile = first.iter().map(|ds| ds.iter().map(deg).collect()).collect();
        let pair = (0..k)
            .map(|x| (0..k).map(|y| first[x].iter().map(|d| deg(&derivative(d, y))).collect()).collect())
            .collect();
        Invariants { profile, pair }
    }
}

/// Truth table of a polynomial in at most `MAX_VAR_CAP` variables.
fn truth_table(p: &BoolPoly, k: usize) -> Vec<u64> {
    let points = 1usize << k;
    let mut table = vec![0u64; points.div_ceil(64)];
    for point in 0..points {
        if p.eval_mask(point as u64) {
            table[point / 64] |= 1 << (point % 64);
        }
    }
    table
}

fn bit(table: &[u64], i: usize) -> bool {
    table[i / 64] >> (i % 64) & 1 == 1
}

struct Search<'a> {
    k: usize,
    polys_a: &'a [&'a BoolPoly],
    inv_a: Invariants,
    inv_b: Invariants,
    tables_b: Vec<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn new(polys_a: &'a [&'a BoolPoly], polys_b: &[&BoolPoly], k: usize) -> Search<'a> {
        Search {
            k,
            polys_a,
            inv_a: Invariants::new(polys_a, k),
            inv_b: Invariants::new(polys_b, k),
            tables_b: polys_b.iter().map(|p| truth_table(p, k)).collect(),
        }
    }

    fn run(&self) -> Option<Vec<Literal>> {
        let mut sigma = Vec::with_capacity(self.k);
        let mut used = vec![false; self.k];
        self.extend(&mut sigma, &mut used)
    }

    fn extend(&self, sigma: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<Literal>> {
        let i = sigma.len();
        if i == self.k {
            return self.negations(sigma);
        }
        for j in 0..self.k {
            if used[j] || self.inv_a.profile[i] != self.inv_b.profile[j] {
                continue;
            }
            let consistent = sigma
                .iter()
                .enumerate()
                .all(|(i2, &j2)| self.inv_a.pair[i][i2] == self.inv_b.pair[j][j2]);
            if !consistent {
                continue;
            }
            sigma.push(j);
            used[j] = true;
            if let Some(phi) = self.extend(sigma, used) {
                return Some(phi);
            }
            sigma.pop();
            used[j] = false;
        }
        None
    }

    /// With variable `i` of `a` sent to `sigma[i]`, finds negation bits making
    /// every polynomial agree.
    fn negations(&self, sigma: &[usize]) -> Option<Vec<Literal>> {
        let points = 1usize << self.k;
        // a's polynomials with variables renamed into b's index space
        let renamed: Vec<Vec<u64>> = self
            .polys_a
            .iter()
            .map(|p| truth_table(&p.rename(|v| VarId(sigma[v.index()] as u32)), self.k))
            .collect();
        let translate = (0..points).find(|&c| {
            renamed
                .iter()
                .zip(&self.tables_b)
                .all(|(ta, tb)| (0..points).all(|v| bit(ta, v ^ c) == bit(tb, v)))
        })?;
        Some(
            sigma
                .iter()
                .map(|&j| Literal::new(VarId(j as u32), translate >> j & 1 == 1))
                .collect(),
        )
    }
}
