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

//! JSON input files: pure states and density matrices.

use std::path::Path;

use lcu_core::{Complex64, DensityMatrix, StateVector};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// `{"kind":"basis",...}` or `{"kind":"amplitudes",...}`. Amplitudes are
/// `[re, im]` pairs in basis-index order (qubit 0 most significant).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Basis { num_qubits: usize, index: usize },
    Amplitudes { num_qubits: usize, amps: Vec<[f64; 2]> },
}

impl StateSpec {
    pub fn to_state(&self) -> Result<StateVector> {
        Ok(match self {
            StateSpec::Basis { num_qubits, index } => StateVector::basis(*num_qubits, *index)?,
            StateSpec::Amplitudes { num_qubits, amps } => StateVector::from_amplitudes(*num_qubits, unpack(amps))?,
        })
    }

    pub fn from_state(state: &StateVector) -> Self {
        StateSpec::Amplitudes {
            num_qubits: state.num_qubits(),
            amps: pack(state.amplitudes()),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// A density matrix given row by row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec {
    pub num_qubits: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl DensitySpec {
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dim = 1usize << self.num_qubits;
        if self.entries.len() != dim || self.entries.iter().any(|row| row.len() != dim) {
            return Err(CliError::Validation(format!(
                "density matrix for {} qubits must be {dim}x{dim}",
                self.num_qubits
            )));
        }
        let m = DMatrix::from_fn(dim, dim, |r, c| {
            let [re, im] = self.entries[r][c];
            Complex64::new(re, im)
        });
        Ok(DensityMatrix::new(m)?)
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        Self {
            num_qubits: m.nrows().trailing_zeros() as usize,
            entries: (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect(),
        }
    }
}

/// Anything `lcu fidelity` accepts: a state spec or a `"kind":"density"` file.
#[derive(Clone, Debug, PartialEq)]
pub enum OperandSpec {
    State(StateSpec),
    Density(DensitySpec),
}

impl OperandSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)?;
        let kind = value.get("kind").and_then(|k| k.as_str()).map(str::to_owned);
        match kind.as_deref() {
            Some("density") => {
                value.as_object_mut().map(|o| o.remove("kind"));
                Ok(OperandSpec::Density(serde_json::from_value(value)?))
            }
            Some(_) => Ok(OperandSpec::State(serde_json::from_value(value)?)),
            None => Err(CliError::Validation("input file has no \"kind\" field".into())),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            OperandSpec::State(s) => Ok(DensityMatrix::from_pure(&s.to_state()?)?),
            OperandSpec::Density(d) => d.to_density(),
        }
    }
}

pub fn pack(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|a| [a.re, a.im]).collect()
}

pub fn unpack(amps: &[[f64; 2]]) -> Vec<Complex64> {
    amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}
