// Copyright 2026 The lcu-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end for `lcu-core`.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on validation errors.

pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

use std::ffi::OsString;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_fidelity, cmd_ladder, cmd_qrw, cmd_reproduce, FidelityArgs, LadderArgs, Mode, QrwArgs, ReproduceArgs,
    Scenario,
};
pub use error::{CliError, Result};
pub use report::RunReport;
pub use spec::{DensitySpec, OperandSpec, StateSpec};

#[derive(Debug, Parser)]
#[command(name = "lcu", version, about = "LCU ladder operators and coined quantum walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the addition/subtraction circuit (or an operator matrix) to a state.
    Ladder(LadderArgs),
    /// Run a coined quantum walk and export the position distribution.
    Qrw(QrwArgs),
    /// Print the normalized-overlap fidelity of two states or density matrices.
    Fidelity(FidelityArgs),
    /// Regenerate a named scenario.
    Reproduce(ReproduceArgs),
}

fn emit(report: &RunReport, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => report.write(p),
        None => {
            report.validate()?;
            println!("{}", report.to_json()?);
            Ok(())
        }
    }
}

fn dispatch(cli: Cli, argv: &[String]) -> Result<()> {
    match cli.command {
        Command::Ladder(args) => emit(&cmd_ladder(&args, argv)?, args.output.as_deref()),
        Command::Qrw(args) => {
            let (_, report) = cmd_qrw(&args, argv)?;
            emit(&report, args.report.as_deref())
        }
        Command::Fidelity(args) => {
            println!("{:.12}", cmd_fidelity(&args)?);
            Ok(())
        }
        Command::Reproduce(args) => {
            let out = cmd_reproduce(&args, argv)?;
            print!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            Ok(())
        }
    }
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lcu: {e}");
            e.exit_code()
        }
    }
}
