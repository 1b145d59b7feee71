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

//! Exact amplitudes of the form `N · 2^(e/2)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmplitudeError {
    #[error("sum mixes integer and sqrt(2) multiples and has no single-term form: {0}")]
    MixedParity(String),
    #[error("malformed amplitude: {0}")]
    Malformed(String),
}

/// `num · 2^(half_exp / 2)`, canonical when `num` is odd, or zero with `half_exp = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Amplitude {
    num: BigInt,
    half_exp: i64,
}

impl Amplitude {
    pub fn new(num: impl Into<BigInt>, half_exp: i64) -> Self {
        let mut num = num.into();
        if num.is_zero() {
            return Amplitude::zero();
        }
        let twos = num.trailing_zeros().unwrap_or(0);
        if twos > 0 {
            num >>= twos;
        }
        Amplitude {
            num,
            half_exp: half_exp + 2 * twos as i64,
        }
    }

    pub fn zero() -> Self {
        Amplitude {
            num: BigInt::zero(),
            half_exp: 0,
        }
    }

    pub fn one() -> Self {
        Amplitude {
            num: BigInt::one(),
            half_exp: 0,
        }
    }

    /// `2^(half_exp / 2)`.
    pub fn sqrt2_pow(half_exp: i64) -> Self {
        Amplitude {
            num: BigInt::one(),
            half_exp,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Amplitude::new(n, 0)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn half_exp(&self) -> i64 {
        self.half_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.half_exp == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num.sign() == Sign::Minus
    }

    fn odd_parity(&self) -> bool {
        self.half_exp.rem_euclid(2) == 1
    }

    pub fn mul(&self, other: &Amplitude) -> Amplitude {
        if self.is_zero() || other.is_zero() {
            return Amplitude::zero();
        }
        // odd × odd stays odd, so the product is already canonical
        Amplitude {
            num: &self.num * &other.num,
            half_exp: self.half_exp + other.half_exp,
        }
    }

    pub fn mul_int(&self, k: i64) -> Amplitude {
        Amplitude::new(&self.num * k, self.half_exp)
    }

    pub fn neg(&self) -> Amplitude {
        Amplitude {
            num: -&self.num,
            half_exp: self.half_exp,
        }
    }

    /// Complex conjugate. Every value here is real.
    pub fn conj(&self) -> Amplitude {
        self.clone()
    }

    /// Exact sum when both terms are integer multiples of the same `2^(e/2)`
    /// parity class; `None` when the result would need `a + b·√2`.
    pub fn checked_add(&self, other: &Amplitude) -> Option<Amplitude> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.odd_parity() != other.odd_parity() {
            return None;
        }
        let base = self.half_exp.min(other.half_exp);
        let lift = |a: &Amplitude| -> BigInt { &a.num << ((a.half_exp - base) / 2) as usize };
        Some(Amplitude::new(lift(self) + lift(other), base))
    }

    pub fn checked_sub(&self, other: &Amplitude) -> Option<Amplitude> {
        self.checked_add(&other.neg())
    }

    /// Squared magnitude.
    pub fn norm_sqr(&self) -> Amplitude {
        self.mul(self)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // split the exponent so huge numerators still render
        let bits = self.num.bits() as i64;
        let shift = (bits - 60).max(0);
        let head = (&self.num >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let exp = self.half_exp as f64 / 2.0 + shift as f64;
        head * exp.exp2()
    }

    /// Decimal rendering with 15 significant digits.
    pub fn to_decimal_string(&self) -> String {
        format_decimal(self.to_f64())
    }

    /// Compares the value against 1 without leaving exact arithmetic.
    pub fn cmp_one(&self) -> Ordering {
        if self.num.sign() != Sign::Plus {
            return Ordering::Less;
        }
        // compare num² · 2^half_exp with 1
        let sq = &self.num * &self.num;
        if self.half_exp >= 0 {
            (sq << self.half_exp as usize).cmp(&BigInt::one())
        } else {
            sq.cmp(&(BigInt::one() << (-self.half_exp) as usize))
        }
    }

    /// `p/q` or integer form when the value is rational.
    pub fn to_rational_string(&self) -> Option<String> {
        if self.is_zero() {
            return Some("0".to_string());
        }
        if self.odd_parity() {
            return None;
        }
        let k = self.half_exp / 2;
        Some(if k >= 0 {
            (&self.num << k as usize).to_string()
        } else {
            format!("{}/{}", self.num, BigInt::one() << (-k) as usize)
        })
    }

    /// Parses the `N * 2^(e/2)` rendering (or a bare integer).
    pub fn parse(text: &str) -> Result<Amplitude, AmplitudeError> {
        let bad = || AmplitudeError::Malformed(text.to_string());
        let text = text.trim();
        match text.split_once('*') {
            None => Ok(Amplitude::new(text.parse::<BigInt>().map_err(|_| bad())?, 0)),
            Some((n, rest)) => {
                let num = n.trim().parse::<BigInt>().map_err(|_| bad())?;
                let e = rest
                    .trim()
                    .strip_prefix("2^(")
                    .and_then(|r| r.strip_suffix("/2)"))
                    .ok_or_else(bad)?;
                Ok(Amplitude::new(num, e.trim().parse::<i64>().map_err(|_| bad())?))
            }
        }
    }
}

pub(crate) fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = 15i32;
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        return format!("{:.*e}", (digits - 1) as usize, x);
    }
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Amplitude::zero()
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{} * 2^({}/2)", self.num, self.half_exp)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AmplitudeRepr {
    num: String,
    half_exp: i64,
}

impl Serialize for Amplitude {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AmplitudeRepr {
            num: self.num.to_string(),
            half_exp: self.half_exp,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Amplitude {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = AmplitudeRepr::deserialize(deserializer)?;
        let num = repr.num.parse::<BigInt>().map_err(serde::de::Error::custom)?;
        Ok(Amplitude::new(num, repr.half_exp))
    }
}

/// Exact accumulator for `a + b·√2` style sums of amplitudes.
///
/// Terms with an even `half_exp` and terms with an odd one are kept apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootTwoSum {
    even: Amplitude,
    odd: Amplitude,
}

impl RootTwoSum {
    pub fn new() -> Self {
        RootTwoSum::default()
    }

    pub fn add(&mut self, term: &Amplitude) {
        if term.is_zero() {
            return;
        }
        let slot = if term.odd_parity() {
            &mut self.odd
        } else {
            &mut self.even
        };
        *slot = slot.checked_add(term).expect("terms of one parity class always combine");
    }

    pub fn collapse(self) -> Result<Amplitude, AmplitudeError> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => Ok(self.even),
            (true, false) => Ok(self.odd),
            (false, false) => Err(AmplitudeError::MixedParity(format!("{} + {}", self.even, self.odd))),
        }
    }
}

impl<'a> FromIterator<&'a Amplitude> for RootTwoSum {
    fn from_iter<I: IntoIterator<Item = &'a Amplitude>>(iter: I) -> Self {
        let mut acc = RootTwoSum::new();
        for a in iter {
            acc.add(a);
        }
        acc
    }
}

/// `count · 2^(half_exp/2)` for a machine-sized count.
pub(crate) fn amplitude_from_count(count: i64, scalar_half_exp: i64) -> Amplitude {
    if count == 0 {
        return Amplitude::zero();
    }
    let twos = count.trailing_zeros() as i64;
    let odd = count >> twos;
    debug_assert!(odd.is_odd());
    Amplitude {
        num: BigInt::from(odd),
        half_exp: scalar_half_exp + 2 * twos,
    }
}
