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

//! Truncated ladder operators and their two-ancilla LCU circuit.
//!
//! The amplitude-free addition operator `K+ = sum |i+1><i|` and its adjoint
//! `K` are not unitary, but each is the half-sum of two cyclic shifts:
//! `K+ = (U0 + U1)/2`, `K = (U2 + U3)/2`. The circuit prepares the ancilla
//! pair with `H ⊗ H`, selects `U_k` on ancilla pattern `k`, then applies `H` to
//! the second ancilla only. Reading the ancillas leaves the work register in
//!
//! | ancilla | branch operator           |
//! |---------|---------------------------|
//! | `00`    | `K+`                      |
//! | `01`    | `J+ = (U0 - U1)/2 = |0><N|` |
//! | `10`    | `K`                       |
//! | `11`    | `J  = (U2 - U3)/2 = |N><0|` |
//!
//! each with amplitude `1/sqrt2`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{
    apply_single_in_place, cyclic_shift, hadamard, ControlSpec, Direction, PermKernel, WrapSign,
};
use crate::statevec::{OutcomeRecord, RawState, RegisterSlice, StateVector, PROB_FLOOR};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LadderKind {
    /// `K+ = sum_{i<N} |i+1><i|`
    Add,
    /// `K = sum_{i>0} |i-1><i|`
    Sub,
    /// `J+ = |0><N|`
    AddBoundary,
    /// `J = |N><0|`
    SubBoundary,
    /// `a+` with `sqrt(i+1)` amplitudes
    BosonicCreate,
    /// `a`
    BosonicAnnihilate,
}

impl LadderKind {
    pub const ALL: [LadderKind; 6] = [
        LadderKind::Add,
        LadderKind::Sub,
        LadderKind::AddBoundary,
        LadderKind::SubBoundary,
        LadderKind::BosonicCreate,
        LadderKind::BosonicAnnihilate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LadderKind::Add => "add",
            LadderKind::Sub => "sub",
            LadderKind::AddBoundary => "add_boundary",
            LadderKind::SubBoundary => "sub_boundary",
            LadderKind::BosonicCreate => "bosonic_create",
            LadderKind::BosonicAnnihilate => "bosonic_annihilate",
        }
    }

    /// True for the amplitude-free kinds, whose operator norm is at most one.
    pub fn is_contraction(self) -> bool {
        !matches!(self, LadderKind::BosonicCreate | LadderKind::BosonicAnnihilate)
    }
}

impl fmt::Display for LadderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LadderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LadderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown operator kind {s:?}"))
    }
}

/// Dense matrix of a ladder operator truncated to `dim = N + 1` levels.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderOperator {
    dim: usize,
    kind: LadderKind,
    matrix: DMatrix<Complex64>,
}

impl LadderOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> LadderKind {
        self.kind
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

pub fn ladder_matrix(dim: usize, kind: LadderKind) -> Result<LadderOperator> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let top = dim - 1;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    match kind {
        LadderKind::Add => (0..top).for_each(|i| m[(i + 1, i)] = ONE),
        LadderKind::Sub => (1..dim).for_each(|i| m[(i - 1, i)] = ONE),
        LadderKind::AddBoundary => m[(0, top)] = ONE,
        LadderKind::SubBoundary => m[(top, 0)] = ONE,
        LadderKind::BosonicCreate => {
            (0..top).for_each(|i| m[(i + 1, i)] = Complex64::new(((i + 1) as f64).sqrt(), 0.0))
        }
        LadderKind::BosonicAnnihilate => {
            (0..top).for_each(|i| m[(i, i + 1)] = Complex64::new(((i + 1) as f64).sqrt(), 0.0))
        }
    }
    Ok(LadderOperator { dim, kind, matrix: m })
}

/// Plain matrix-vector product `op * psi`, no renormalization.
pub fn apply_operator(op: &LadderOperator, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    if psi.len() != op.dim {
        return Err(Error::DimensionMismatch(format!(
            "operator of dim {} applied to a vector of length {}",
            op.dim,
            psi.len()
        )));
    }
    let out = &op.matrix * DVector::from_column_slice(psi);
    Ok(out.iter().copied().collect())
}

/// Ancilla readout of the LCU circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Add = 0b00,
    AddBoundary = 0b01,
    Sub = 0b10,
    SubBoundary = 0b11,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::Add, Branch::AddBoundary, Branch::Sub, Branch::SubBoundary];

    pub fn pattern(self) -> usize {
        self as usize
    }

    pub fn bits(self) -> &'static str {
        match self {
            Branch::Add => "00",
            Branch::AddBoundary => "01",
            Branch::Sub => "10",
            Branch::SubBoundary => "11",
        }
    }

    pub fn from_pattern(pattern: usize) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.pattern() == pattern)
    }

    /// The operator this branch applies to the work register.
    pub fn operator(self) -> LadderKind {
        match self {
            Branch::Add => LadderKind::Add,
            Branch::AddBoundary => LadderKind::AddBoundary,
            Branch::Sub => LadderKind::Sub,
            Branch::SubBoundary => LadderKind::SubBoundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcuBranch {
    pub branch: Branch,
    pub outcome: OutcomeRecord,
    /// Work-register amplitudes conditioned on the branch, before renormalization.
    pub raw: RawState,
}

/// All four ancilla branches, indexed by pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct LcuResult {
    pub branches: [LcuBranch; 4],
}

impl LcuResult {
    pub fn branch(&self, b: Branch) -> &LcuBranch {
        &self.branches[b.pattern()]
    }

    pub fn probability(&self, b: Branch) -> f64 {
        self.branch(b).outcome.probability
    }

    pub fn post_state(&self, b: Branch) -> Option<&StateVector> {
        self.branch(b).outcome.post_state.as_ref()
    }
}

/// The LCU circuit for a fixed work-register width, with its select-stage
/// kernels built once.
#[derive(Clone, Debug)]
pub struct LcuCircuit {
    work_qubits: usize,
    select: [PermKernel; 4],
}

impl LcuCircuit {
    pub const ANCILLA_QUBITS: usize = 2;

    pub fn new(work_qubits: usize) -> Result<Self> {
        if work_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let n = work_qubits + Self::ANCILLA_QUBITS;
        let dim = 1usize << work_qubits;
        let ancilla = RegisterSlice::range(0, Self::ANCILLA_QUBITS)?;
        let work = RegisterSlice::range(Self::ANCILLA_QUBITS, work_qubits)?;
        let unitaries = [
            cyclic_shift(dim, Direction::Up, WrapSign::Plus)?,
            cyclic_shift(dim, Direction::Up, WrapSign::Minus)?,
            cyclic_shift(dim, Direction::Down, WrapSign::Plus)?,
            cyclic_shift(dim, Direction::Down, WrapSign::Minus)?,
        ];
        let mut select = Vec::with_capacity(4);
        for (pattern, u) in unitaries.iter().enumerate() {
            let ctrl = ControlSpec::new(ancilla.clone(), pattern)?;
            select.push(PermKernel::new(n, u, &work, Some(&ctrl))?);
        }
        Ok(Self {
            work_qubits,
            select: select.try_into().expect("four select kernels"),
        })
    }

    pub fn work_qubits(&self) -> usize {
        self.work_qubits
    }

    /// Runs prepare, select, unprepare on `|00> ⊗ work` and returns the
    /// joint state before the ancilla readout.
    pub fn evolve(&self, work: &StateVector) -> Result<StateVector> {
        if work.num_qubits() != self.work_qubits {
            return Err(Error::DimensionMismatch(format!(
                "circuit built for {} work qubits, state has {}",
                self.work_qubits,
                work.num_qubits()
            )));
        }
        let n = self.work_qubits + Self::ANCILLA_QUBITS;
        let h = hadamard();
        let mut amps = StateVector::zero(Self::ANCILLA_QUBITS)?.tensor(work).into_amplitudes();
        apply_single_in_place(&mut amps, n, &h, 0);
        apply_single_in_place(&mut amps, n, &h, 1);
        let mut scratch = vec![ZERO; amps.len()];
        for kernel in &self.select {
            kernel.apply_into(&amps, &mut scratch);
            std::mem::swap(&mut amps, &mut scratch);
        }
        apply_single_in_place(&mut amps, n, &h, 1);
        Ok(StateVector::from_raw_parts(n, amps))
    }

    pub fn run(&self, work: &StateVector) -> Result<LcuResult> {
        let joint = self.evolve(work)?;
        let w = self.work_qubits;
        let dim = 1usize << w;
        let amps = joint.amplitudes();
        let branches = Branch::ALL.map(|branch| {
            // ancillas are the two most significant qubits
            let block = &amps[branch.pattern() * dim..(branch.pattern() + 1) * dim];
            let raw = RawState::new(w, block.to_vec()).expect("block length is 2^w");
            let probability = raw.norm_sqr();
            LcuBranch {
                branch,
                outcome: OutcomeRecord {
                    pattern: branch.pattern(),
                    width: Self::ANCILLA_QUBITS,
                    probability,
                    post_state: raw.normalize(),
                },
                raw,
            }
        });
        Ok(LcuResult { branches })
    }
}

/// Runs the full LCU circuit on `work`; the operator dimension is `2^w`.
pub fn lcu_circuit(work: &StateVector) -> Result<LcuResult> {
    LcuCircuit::new(work.num_qubits())?.run(work)
}

/// Largest elementwise deviation between each branch's raw amplitudes and
/// `(1/sqrt2) * Op |work>` computed from the dense operator matrix.
pub fn lcu_vs_oracle_check(work: &StateVector) -> Result<f64> {
    let result = lcu_circuit(work)?;
    let dim = work.dim();
    let scale = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut worst = 0.0f64;
    for b in &result.branches {
        let expect = apply_operator(&ladder_matrix(dim, b.branch.operator())?, work.amplitudes())?;
        for (got, want) in b.raw.amplitudes().iter().zip(&expect) {
            worst = worst.max((got - want * scale).norm());
        }
    }
    Ok(worst)
}

/// One post-selected ladder step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Add,
    Sub,
}

impl Step {
    pub fn branch(self) -> Branch {
        match self {
            Step::Add => Branch::Add,
            Step::Sub => Branch::Sub,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Step::Add => "add",
            Step::Sub => "sub",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainOutcome {
    pub state: StateVector,
    /// Product of the per-step post-selection probabilities.
    pub probability: f64,
    pub step_probabilities: Vec<f64>,
}

/// Applies `program` left to right, post-selecting `00` for `add` and `10`
/// for `sub` after each circuit run.
pub fn chain_apply(work: &StateVector, program: &[Step]) -> Result<ChainOutcome> {
    if program.is_empty() {
        return Err(Error::EmptyProgram);
    }
    let circuit = LcuCircuit::new(work.num_qubits())?;
    let mut state = work.clone();
    let mut step_probabilities = Vec::with_capacity(program.len());
    for (step, op) in program.iter().enumerate() {
        let result = circuit.run(&state)?;
        let branch = result.branch(op.branch());
        let probability = branch.outcome.probability;
        state = match (&branch.outcome.post_state, probability >= PROB_FLOOR) {
            (Some(next), true) => next.clone(),
            _ => {
                return Err(Error::ZeroProbabilityBranch {
                    step,
                    op: op.name(),
                    probability,
                })
            }
        };
        step_probabilities.push(probability);
    }
    Ok(ChainOutcome {
        state,
        probability: step_probabilities.iter().product(),
        step_probabilities,
    })
}
