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

//! `pathsum` command-line tool.
//!
//! Exit codes: 0 success, 2 input error, 3 evaluation guard tripped,
//! 4 non-deterministic hidden-shift instance, 5 confluence failure.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathsum::sim::DEFAULT_MAX_EVAL_VARS;

use commands::{CliError, Report};

#[derive(Parser)]
#[command(name = "pathsum", version, about = "Path-sum simulation of Toffoli-Hadamard circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Copy)]
struct Guard {
    /// Largest normal form that is evaluated densely.
    #[arg(long, env = "PATHSUM_MAX_EVAL_VARS", default_value_t = DEFAULT_MAX_EVAL_VARS)]
    max_eval_vars: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    First,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Exact amplitude <out|C|in>.
    Amp {
        /// Circuit file, or `-` for stdin.
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long = "out")]
        output: String,
        #[command(flatten)]
        guard: Guard,
        #[command(flatten)]
        out: Output,
    },
    /// Exact probability that one qubit of C|in> measures 1.
    Measure {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        qubit: usize,
        #[command(flatten)]
        guard: Guard,
        #[command(flatten)]
        out: Output,
    },
    /// Writes a hidden-shift circuit.
    HiddenShiftGen {
        /// Qubit count (even).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shift: String,
        /// Monomials of g as `a,b,c;d;e,f` over indices of one half.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        g: String,
        /// Permutation coupling the halves, as `2,0,1`.
        #[arg(long)]
        pi: Option<String>,
        /// Output file; stdout when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Recovers the shift of a hidden-shift circuit by measuring every qubit.
    HiddenShiftSolve {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        guard: Guard,
        #[command(flatten)]
        out: Output,
    },
    /// Normal form of the circuit's path sum (optionally applied to a basis state) as JSON.
    Normalize {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long = "in")]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "first")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the rewrite steps.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Normalizes random path sums under several strategies and compares the results.
    CheckConfluence {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        max_vars: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random strategies per trial.
        #[arg(long, default_value_t = 1)]
        strategies: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn run(command: Command) -> Result<(Box<dyn Report>, bool), CliError> {
    Ok(match command {
        Command::Amp {
            circuit,
            input,
            output,
            guard,
            out,
        } => (commands::amp(&circuit, &input, &output, guard.max_eval_vars)?, out.json),
        Command::Measure {
            circuit,
            input,
            qubit,
            guard,
            out,
        } => (commands::measure(&circuit, &input, qubit, guard.max_eval_vars)?, out.json),
        Command::HiddenShiftGen {
            n,
            shift,
            g,
            pi,
            output,
            out,
        } => (commands::hidden_shift_gen(n, &shift, &g, pi.as_deref(), output.as_deref())?, out.json),
        Command::HiddenShiftSolve { circuit, guard, out } => {
            (commands::hidden_shift_solve(&circuit, guard.max_eval_vars)?, out.json)
        }
        Command::Normalize {
            circuit,
            input,
            strategy,
            seed,
            trace,
            out,
        } => {
            let strategy = match strategy {
                StrategyArg::First => pathsum::Strategy::DeterministicFirst,
                StrategyArg::Random => pathsum::Strategy::SeededRandom(seed),
            };
            (commands::normalize(&circuit, input.as_deref(), strategy, trace)?, out.json)
        }
        Command::CheckConfluence {
            trials,
            max_vars,
            seed,
            strategies,
            out,
        } => (commands::check_confluence(trials, max_vars, seed, strategies)?, out.json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, json)) => {
            let text = if json {
                report.json() + "\n"
            } else {
                report.text()
            };
            // a closed pipe (`| head`) is not an error worth a panic
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
