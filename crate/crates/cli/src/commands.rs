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

use std::fmt::{self, Write as _};
use std::io::Read;
use std::path::Path;

use pathsum::circuit::{hidden_shift_circuit, parse_bytes, parse_index_list, parse_monomials, CircuitError};
use pathsum::fuzz::{confluence_trial, fuzz_sum, TrialOutcome, TRIAL_EVAL_VARS};
use pathsum::pathsum::interpret;
use pathsum::rewrite::DEFAULT_VAR_CAP;
use pathsum::sim::{self, parse_bits, Probability, RunStats, SimError};
use pathsum::{normalize as normal_form, Circuit, HiddenShiftSpec, PathSum, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Failures that end a command before it produces a report.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Sim(SimError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Sim(e) => match e {
                SimError::Width { .. } | SimError::QubitOutOfRange { .. } | SimError::TooWide { .. } => 2,
                SimError::Inefficient { .. } => 3,
                SimError::NonDeterministic { .. } => 4,
                SimError::InvalidProbability(_) | SimError::PathSum(_) => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Sim(e) => write!(f, "{e}"),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Sim(e)
    }
}

impl From<pathsum::pathsum::PathSumError> for CliError {
    fn from(e: pathsum::pathsum::PathSumError) -> Self {
        CliError::Sim(e.into())
    }
}

/// A command result, printable as text or JSON.
pub trait Report {
    fn text(&self) -> String;
    fn json(&self) -> String;
    fn exit_code(&self) -> u8 {
        0
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn read_circuit(path: &Path) -> Result<Circuit, CliError> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    parse_bytes(&bytes).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
}

fn bits(flag: &str, text: &str) -> Result<Vec<bool>, CliError> {
    parse_bits(text).ok_or_else(|| CliError::Input(format!("{flag} expects a string of 0s and 1s, got {text:?}")))
}

#[derive(Serialize)]
pub struct AmpReport {
    input: String,
    output: String,
    amplitude: String,
    decimal: String,
    stats: RunStats,
}

impl Report for AmpReport {
    fn text(&self) -> String {
        format!(
            "amplitude: {}\ndecimal: {}\nrewrite steps: {}\nresidual vars: {}\n",
            self.amplitude, self.decimal, self.stats.rewrite_steps, self.stats.residual_vars
        )
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

pub fn amp(circuit: &Path, input: &str, output: &str, max_eval_vars: u32) -> Result<Box<dyn Report>, CliError> {
    let x = bits("--in", input)?;
    let y = bits("--out", output)?;
    let c = read_circuit(circuit)?;
    let (a, stats) = sim::strong_sim_with_stats(&c, &x, &y, max_eval_vars)?;
    Ok(Box::new(AmpReport {
        input: input.to_string(),
        output: output.to_string(),
        amplitude: a.to_string(),
        decimal: a.to_decimal_string(),
        stats,
    }))
}

#[derive(Serialize)]
pub struct MeasureReport {
    input: String,
    qubit: usize,
    probability: Probability,
    stats: RunStats,
}

impl Report for MeasureReport {
    fn text(&self) -> String {
        format!(
            "probability: {}\nexact: {}\ndecimal: {}\nrewrite steps: {}\nresidual vars: {}\n",
            self.probability,
            self.probability.exact(),
            self.probability.decimal(),
            self.stats.rewrite_steps,
            self.stats.residual_vars
        )
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

pub fn measure(circuit: &Path, input: &str, qubit: usize, max_eval_vars: u32) -> Result<Box<dyn Report>, CliError> {
    let x = bits("--in", input)?;
    let c = read_circuit(circuit)?;
    let (probability, stats) = sim::measure_sim_with_stats(&c, &x, qubit, max_eval_vars)?;
    Ok(Box::new(MeasureReport {
        input: input.to_string(),
        qubit,
        probability,
        stats,
    }))
}

#[derive(Serialize)]
pub struct GenReport {
    file: Option<String>,
    gates: usize,
    ccz: usize,
    /// The circuit itself when no output file was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit: Option<String>,
}

impl Report for GenReport {
    fn text(&self) -> String {
        let mut out = String::new();
        match (&self.file, &self.circuit) {
            (Some(file), _) => {
                let _ = writeln!(out, "wrote {file}");
                let _ = writeln!(out, "gates: {}\nccz: {}", self.gates, self.ccz);
            }
            (None, Some(text)) => {
                // comments keep stdout a valid circuit file
                out.push_str(text);
                let _ = writeln!(out, "# gates: {}\n# ccz: {}", self.gates, self.ccz);
            }
            (None, None) => {}
        }
        out
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

pub fn hidden_shift_gen(
    n: usize,
    shift: &str,
    g: &str,
    pi: Option<&str>,
    output: Option<&Path>,
) -> Result<Box<dyn Report>, CliError> {
    let input = |flag: &str, e: CircuitError| CliError::Input(format!("{flag}: {e}"));
    let monomials = parse_monomials(g).map_err(|e| input("--g", e))?;
    let mut spec = HiddenShiftSpec::new(n, monomials, bits("--shift", shift)?);
    if let Some(pi) = pi {
        spec = spec.with_pi(parse_index_list(pi).map_err(|e| input("--pi", e))?);
    }
    let c = hidden_shift_circuit(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    let text = c.serialize();
    let file = match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Some(path.display().to_string())
        }
        None => None,
    };
    Ok(Box::new(GenReport {
        circuit: file.is_none().then_some(text),
        file,
        gates: c.len(),
        ccz: c.ccz_count(),
    }))
}

#[derive(Serialize)]
pub struct SolveReport {
    shift: String,
    rewrite_steps: usize,
    state_vars: u32,
    /// Variables across the state and every measurement sum.
    vars_total: u64,
    residual_vars: u32,
    probabilities: Vec<Probability>,
}

impl Report for SolveReport {
    fn text(&self) -> String {
        format!(
            "shift: {}\nrewrite steps: {}\nvariables: {}\nstate vars: {}\nresidual vars: {}\n",
            self.shift, self.rewrite_steps, self.vars_total, self.state_vars, self.residual_vars
        )
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

pub fn hidden_shift_solve(circuit: &Path, max_eval_vars: u32) -> Result<Box<dyn Report>, CliError> {
    let c = read_circuit(circuit)?;
    let result = sim::recover_shift(&c, max_eval_vars)?;
    Ok(Box::new(SolveReport {
        shift: result.shift_string(),
        rewrite_steps: result.rewrite_steps_total,
        state_vars: result.state_vars,
        vars_total: result.vars_total,
        residual_vars: result.residual_vars,
        probabilities: result.per_qubit_probability,
    }))
}

#[derive(Serialize)]
pub struct NormalizeReport {
    initial_vars: u32,
    steps: usize,
    normal_form: PathSum,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

impl Report for NormalizeReport {
    fn text(&self) -> String {
        let mut out = serde_json::to_string(&self.normal_form).expect("path sums serialize");
        out.push('\n');
        if let Some(trace) = &self.trace {
            for line in trace {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

pub fn normalize(
    circuit: &Path,
    input: Option<&str>,
    strategy: Strategy,
    trace: bool,
) -> Result<Box<dyn Report>, CliError> {
    let c = read_circuit(circuit)?;
    let mut sum = interpret(&c)?;
    if let Some(input) = input {
        let x = bits("--in", input)?;
        if x.len() != c.num_qubits() {
            return Err(SimError::Width {
                expected: c.num_qubits(),
                got: x.len(),
            }
            .into());
        }
        sum = sum.compose(&PathSum::ket(&x))?;
    }
    let (nf, steps) = normal_form(&sum, strategy);
    Ok(Box::new(NormalizeReport {
        initial_vars: sum.num_vars(),
        steps: steps.len(),
        normal_form: nf,
        trace: trace.then(|| steps.iter().map(ToString::to_string).collect()),
    }))
}

#[derive(Serialize)]
pub struct Failure {
    trial: u64,
    sum_seed: u64,
    message: String,
}

#[derive(Serialize)]
pub struct ConfluenceReport {
    trials: u64,
    max_vars: u32,
    seed: u64,
    strategies: usize,
    /// `simple-equivalence` or `eval-only`.
    check: &'static str,
    passed: u64,
    equivalent: u64,
    eval_equal: u64,
    failed: u64,
    failures: Vec<Failure>,
}

impl Report for ConfluenceReport {
    fn text(&self) -> String {
        let mut out = format!(
            "trials: {}\ncheck: {}\npassed: {}\nfailed: {}\nequivalent: {}\neval only: {}\n",
            self.trials, self.check, self.passed, self.failed, self.equivalent, self.eval_equal
        );
        for f in &self.failures {
            let _ = writeln!(out, "FAIL trial {} (sum seed {}): {}", f.trial, f.sum_seed, f.message);
        }
        out
    }

    fn json(&self) -> String {
        to_json(self)
    }

    fn exit_code(&self) -> u8 {
        if self.failed > 0 {
            5
        } else {
            0
        }
    }
}

pub fn check_confluence(trials: u64, max_vars: u32, seed: u64, strategies: usize) -> Result<Box<dyn Report>, CliError> {
    if max_vars > TRIAL_EVAL_VARS {
        return Err(CliError::Input(format!(
            "--max-vars {max_vars} is above {TRIAL_EVAL_VARS}; normal forms could not be evaluated"
        )));
    }
    if strategies == 0 {
        return Err(CliError::Input("--strategies must be at least 1".to_string()));
    }
    let var_cap = if max_vars > DEFAULT_VAR_CAP {
        eprintln!(
            "warning: --max-vars {max_vars} is above {DEFAULT_VAR_CAP}; comparing normal forms by evaluation only"
        );
        0
    } else {
        DEFAULT_VAR_CAP
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConfluenceReport {
        trials,
        max_vars,
        seed,
        strategies,
        check: if var_cap == 0 { "eval-only" } else { "simple-equivalence" },
        passed: 0,
        equivalent: 0,
        eval_equal: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let (sum_seed, strategy_seed): (u64, u64) = (rng.gen(), rng.gen());
        let sum = fuzz_sum(sum_seed, max_vars);
        match confluence_trial(&sum, strategies, strategy_seed, var_cap) {
            TrialOutcome::Equivalent => {
                report.passed += 1;
                report.equivalent += 1;
            }
            TrialOutcome::EvalEqual => {
                report.passed += 1;
                report.eval_equal += 1;
            }
            TrialOutcome::Failed(message) => {
                report.failed += 1;
                report.failures.push(Failure {
                    trial,
                    sum_seed,
                    message,
                });
            }
        }
    }
    Ok(Box::new(report))
}
