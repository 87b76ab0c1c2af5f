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

use thiserror::Error;

/// Errors raised by state construction, gate validation and the circuit drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} listed more than once in a register slice")]
    DuplicateQubit(usize),

    #[error("register must hold at least one qubit")]
    EmptyRegister,

    #[error("expected {expected} amplitudes, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("state norm {norm} is not within {tol:e} of 1")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("control and target registers overlap on qubit {0}")]
    OverlappingRegisters(usize),

    #[error("control pattern has {pattern} bits but {controls} control qubits")]
    PatternLength { pattern: usize, controls: usize },

    #[error("gate is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("operator dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("polarization {0} outside [0, 1]")]
    PolarizationOutOfRange(f64),

    #[error("fidelity undefined for a zero-purity operand")]
    ZeroPurity,

    #[error("step {step} ({op}) selects a branch with probability {probability:e}")]
    ZeroProbabilityBranch {
        step: usize,
        op: &'static str,
        probability: f64,
    },

    #[error("empty operator program")]
    EmptyProgram,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
