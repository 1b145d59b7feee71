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

//! Line-oriented circuit text format.
//!
//! ```text
//! qubits 3        # header
//! h 0
//! z 0 1 2         # C^(d-1)Z on the listed qubits
//! swap 1 2
//! x 2
//! ```

use std::fmt;

use super::{Circuit, CircuitError, Gate, DEFAULT_MAX_CONTROLS};

/// Registers wider than this are rejected at parse time.
const MAX_QUBITS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    code.split_whitespace()
        .map(|text| {
            let byte_offset = text.as_ptr() as usize - code.as_ptr() as usize;
            Token {
                text,
                column: code[..byte_offset].chars().count() + 1,
            }
        })
        .collect()
}

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    parse_with_max_controls(text, DEFAULT_MAX_CONTROLS)
}

/// Parses raw bytes; invalid UTF-8 is a parse error, never a panic.
pub fn parse_bytes(bytes: &[u8]) -> Result<Circuit, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let prefix = &bytes[..e.valid_up_to()];
            let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
            let line_start = prefix.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let column = String::from_utf8_lossy(&prefix[line_start..]).chars().count() + 1;
            Err(ParseError {
                line,
                column,
                message: "input is not valid UTF-8".to_string(),
            })
        }
    }
}

/// Like [`parse`], accepting `C^(m)Z` gates up to `max_controls` controls.
pub fn parse_with_max_controls(text: &str, max_controls: usize) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let err = |column: usize, message: String| ParseError {
            line: line_no,
            column,
            message,
        };

        let Some(c) = circuit.as_mut() else {
            if head.text != "qubits" {
                return Err(err(head.column, format!("expected `qubits N` header, found `{}`", head.text)));
            }
            let [_, count] = toks.as_slice() else {
                return Err(err(head.column, "header must be exactly `qubits N`".to_string()));
            };
            let n = parse_index(count).map_err(|m| err(count.column, m))?;
            if n > MAX_QUBITS {
                return Err(err(count.column, format!("at most {MAX_QUBITS} qubits are supported")));
            }
            circuit = Some(Circuit::new(n));
            continue;
        };

        let mnemonic = head.text.to_ascii_lowercase();
        let args = &toks[1..];
        let mut qubits = Vec::with_capacity(args.len());
        for t in args {
            qubits.push(parse_index(t).map_err(|m| err(t.column, m))?);
        }
        let arity_error = |expected: &str| {
            err(
                head.column,
                format!("`{mnemonic}` takes {expected} qubit(s), found {}", qubits.len()),
            )
        };
        let gate = match mnemonic.as_str() {
            "h" | "x" if qubits.len() != 1 => return Err(arity_error("1")),
            "h" => Gate::H(qubits[0]),
            "x" => Gate::X(qubits[0]),
            "swap" if qubits.len() != 2 => return Err(arity_error("2")),
            "swap" => Gate::Swap(qubits[0], qubits[1]),
            "z" if qubits.is_empty() => return Err(arity_error("at least 1")),
            "z" => Gate::Z(qubits.clone()),
            "qubits" => return Err(err(head.column, "duplicate `qubits` header".to_string())),
            other => return Err(err(head.column, format!("unknown mnemonic `{other}`"))),
        };
        if let Err(e) = c.push_with_limit(gate, max_controls) {
            let column = match &e {
                CircuitError::QubitOutOfRange { qubit, .. } => column_of(args, &qubits, *qubit, false),
                CircuitError::RepeatedQubit(q) => column_of(args, &qubits, *q, true),
                _ => head.column,
            };
            return Err(err(column, e.to_string()));
        }
    }
    circuit.ok_or(ParseError {
        line: last_line.max(1),
        column: 1,
        message: "missing `qubits N` header".to_string(),
    })
}

fn parse_index(t: &Token<'_>) -> Result<usize, String> {
    if !t.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a non-negative integer, found `{}`", t.text));
    }
    t.text
        .parse::<usize>()
        .map_err(|_| format!("integer `{}` is too large", t.text))
}

/// Column of the first (or, for repeats, second) argument naming `qubit`.
fn column_of(args: &[Token<'_>], qubits: &[usize], qubit: usize, second: bool) -> usize {
    let mut hits = qubits.iter().zip(args).filter(|(&q, _)| q == qubit).map(|(_, t)| t.column);
    let first = hits.next().unwrap_or(1);
    if second {
        hits.next().unwrap_or(first)
    } else {
        first
    }
}
