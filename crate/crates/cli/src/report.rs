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

//! Output formats: the JSON run report and the position CSV.

use std::io::{Read, Write};
use std::path::Path;

use lcu_core::PositionDistribution;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const TOOL: &str = "lcu";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance on the sum of a report's probability table.
pub const TABLE_SUM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    /// The command line that produced the report.
    pub command: Vec<String>,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outcomes: Vec<OutcomeRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fidelities: Vec<FidelityRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comparison: Vec<ComparisonRow>,
}

impl RunReport {
    pub fn new(command: &[String], config: serde_json::Value) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.to_vec(),
            config,
            outcomes: Vec::new(),
            fidelities: Vec::new(),
            oracle: None,
            walk: None,
            comparison: Vec::new(),
        }
    }

    pub fn table_sum(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// Checks the table invariant; an empty table is accepted.
    pub fn validate(&self) -> Result<()> {
        if !self.outcomes.is_empty() && (self.table_sum() - 1.0).abs() > TABLE_SUM_TOL {
            return Err(CliError::Validation(format!(
                "outcome probabilities sum to {}",
                self.table_sum()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        self.validate()?;
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}

/// One ancilla readout of the circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRow {
    pub pattern: String,
    pub operator: String,
    pub probability: f64,
    /// Normalized work state, `null` for a vanishing branch.
    pub post_state: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityRow {
    pub reference: String,
    /// Ancilla pattern, or `"oracle"` in oracle mode.
    pub branch: String,
    pub fidelity: f64,
    /// The same functional on deviation matrices (`rho - I/d`).
    pub deviation_fidelity: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub kind: String,
    pub output: Vec<[f64; 2]>,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkSummary {
    pub csv: Option<String>,
    pub center: usize,
    pub mean_displacement: f64,
    pub stddev: f64,
    pub even_mass: f64,
    pub odd_mass: f64,
}

/// Simulated value beside the value measured on hardware.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub quantity: String,
    pub ideal: f64,
    pub experimental: f64,
}

/// Writes `position,probability` with 17 significant digits per value.
pub fn write_distribution_csv<W: Write>(out: W, d: &PositionDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["position", "probability"])?;
    for (x, p) in d.probabilities().iter().enumerate() {
        w.write_record([x.to_string(), format!("{p:.16e}")])?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(())
}

pub fn read_distribution_csv<R: Read>(input: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["position", "probability"] {
        return Err(CliError::Validation(format!("unexpected CSV header {headers:?}")));
    }
    let mut probs = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        let position: usize = record[0]
            .parse()
            .map_err(|_| CliError::Validation(format!("bad position on row {row}")))?;
        if position != row {
            return Err(CliError::Validation(format!("row {row} holds position {position}")));
        }
        probs.push(
            record[1]
                .parse()
                .map_err(|_| CliError::Validation(format!("bad probability on row {row}")))?,
        );
    }
    Ok(probs)
}

pub fn write_distribution_file(path: &Path, d: &PositionDistribution) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    write_distribution_csv(std::io::BufWriter::new(file), d)
}
