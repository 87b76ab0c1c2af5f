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

//! Exact statevector simulation of amplitude-free bosonic addition and
//! subtraction operators, realized as a linear combination of cyclic-shift
//! unitaries with a two-qubit ancilla and post-selection, together with the
//! coined quantum walk built from the same shifts.
//!
//! Basis indices are big-endian: qubit 0 is the most significant bit.

pub mod densmat;
pub mod error;
pub mod gates;
pub mod ladder;
pub mod qrw;
pub mod statevec;

pub use num_complex::Complex64;

pub use densmat::{
    deviation, deviation_fidelity, fidelity, pauli_expectations, pps, reconstruct, DensityMatrix,
    DeviationMatrix, PauliExpectations,
};
pub use error::{Error, Result};
pub use gates::{
    apply_perm_unitary, apply_single, coin_gate, cyclic_shift, hadamard, ControlSpec, Direction,
    PermKernel, PermutationPhaseUnitary, SingleQubitGate, WrapSign,
};
pub use ladder::{
    apply_operator, chain_apply, ladder_matrix, lcu_circuit, lcu_vs_oracle_check, Branch, ChainOutcome,
    LadderKind, LadderOperator, LcuBranch, LcuCircuit, LcuResult, Step,
};
pub use qrw::{
    run_walk, run_walk_superposed, walk_statistics, walk_step, PositionDistribution, WalkConfig, WalkEngine,
    WalkStatistics,
};
pub use statevec::{
    inner_product, marginal_distribution, measure_register, project_register, OutcomeRecord, RawState,
    RegisterSlice, StateVector, PROB_FLOOR,
};
