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

//! Gate values and the statevector kernels that apply them.
//!
//! Permutation-with-phase unitaries (the cyclic shifts) are stored sparsely and
//! applied as an index remap. Controls are resolved by masking basis indices
//! against the control pattern; no controlled matrix is ever built.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::{RegisterSlice, SliceMap, StateVector};

/// Unitarity tolerance enforced when a gate is constructed.
pub const UNITARY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 unitary, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitGate {
    m: [[Complex64; 2]; 2],
}

impl SingleQubitGate {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let mut dev = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let v = m[r][0] * m[c][0].conj() + m[r][1] * m[c][1].conj();
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((v - target).norm());
            }
        }
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(2, 2, |r, c| self.m[r][c])
    }
}

/// `(1/sqrt2) [[1, 1], [1, -1]]`.
pub fn hadamard() -> SingleQubitGate {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    SingleQubitGate { m: [[s, s], [s, -s]] }
}

/// The walk coin `[[cos phi, -sin phi], [sin phi, cos phi]]`, `phi` in degrees.
pub fn coin_gate(phi_deg: f64) -> SingleQubitGate {
    let (s, c) = phi_deg.to_radians().sin_cos();
    let (s, c) = (Complex64::new(s, 0.0), Complex64::new(c, 0.0));
    SingleQubitGate { m: [[c, -s], [s, c]] }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// Sign carried by the boundary (wrap-around) term of a cyclic shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WrapSign {
    Plus,
    Minus,
}

impl WrapSign {
    fn value(self) -> Complex64 {
        match self {
            WrapSign::Plus => ONE,
            WrapSign::Minus => -ONE,
        }
    }
}

/// A unitary that sends basis state `i` to `phase_of[i] * |target_of[i]>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PermutationPhaseUnitary {
    target_of: Vec<usize>,
    phase_of: Vec<Complex64>,
}

impl PermutationPhaseUnitary {
    pub fn new(target_of: Vec<usize>, phase_of: Vec<Complex64>) -> Result<Self> {
        let dim = target_of.len();
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if phase_of.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: phase_of.len(),
            });
        }
        let mut seen = vec![false; dim];
        for &t in &target_of {
            if t >= dim || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidPermutation(format!(
                    "target {t} repeated or out of range for dim {dim}"
                )));
            }
        }
        if let Some(p) = phase_of.iter().find(|p| (p.norm() - 1.0).abs() > UNITARY_TOL) {
            return Err(Error::NotUnitary((p.norm() - 1.0).abs()));
        }
        Ok(Self {
            target_of,
            phase_of,
        })
    }

    pub fn dim(&self) -> usize {
        self.target_of.len()
    }

    pub fn target_of(&self) -> &[usize] {
        &self.target_of
    }

    pub fn phase_of(&self) -> &[Complex64] {
        &self.phase_of
    }

    /// Dense matrix with `phase_of[i]` at `(target_of[i], i)`.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for (src, (&dst, &ph)) in self.target_of.iter().zip(&self.phase_of).enumerate() {
            m[(dst, src)] = ph;
        }
        m
    }

    pub fn inverse(&self) -> Self {
        let mut target_of = vec![0; self.dim()];
        let mut phase_of = vec![ONE; self.dim()];
        for (src, (&dst, &ph)) in self.target_of.iter().zip(&self.phase_of).enumerate() {
            target_of[dst] = src;
            phase_of[dst] = ph.conj();
        }
        Self {
            target_of,
            phase_of,
        }
    }
}

/// Cyclic increment (`Up`) or decrement (`Down`) on `dim` levels. Interior
/// moves carry phase +1; the wrap-around move carries `wrap`.
///
/// `(Up, Plus)`, `(Up, Minus)`, `(Down, Plus)`, `(Down, Minus)` are the four
/// unitaries whose pairwise half-sums give the truncated ladder operators.
pub fn cyclic_shift(dim: usize, direction: Direction, wrap: WrapSign) -> Result<PermutationPhaseUnitary> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let mut phase_of = vec![ONE; dim];
    let target_of: Vec<usize> = match direction {
        Direction::Up => {
            phase_of[dim - 1] = wrap.value();
            (0..dim).map(|i| (i + 1) % dim).collect()
        }
        Direction::Down => {
            phase_of[0] = wrap.value();
            (0..dim).map(|i| (i + dim - 1) % dim).collect()
        }
    };
    Ok(PermutationPhaseUnitary {
        target_of,
        phase_of,
    })
}

/// Which control qubits gate an operation, and on which bit pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlSpec {
    qubits: RegisterSlice,
    pattern: usize,
}

impl ControlSpec {
    /// `pattern` is read with the first control qubit as its most significant bit.
    pub fn new(qubits: RegisterSlice, pattern: usize) -> Result<Self> {
        if pattern >> qubits.len() != 0 {
            return Err(Error::PatternLength {
                pattern: usize::BITS as usize - pattern.leading_zeros() as usize,
                controls: qubits.len(),
            });
        }
        Ok(Self { qubits, pattern })
    }

    /// Pattern given as a bit string such as `"01"`.
    pub fn from_bits(qubits: RegisterSlice, bits: &str) -> Result<Self> {
        if bits.len() != qubits.len() {
            return Err(Error::PatternLength {
                pattern: bits.len(),
                controls: qubits.len(),
            });
        }
        let pattern = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::InvalidPermutation(format!("bad control pattern {bits:?}")))?;
        Ok(Self { qubits, pattern })
    }

    pub fn qubits(&self) -> &RegisterSlice {
        &self.qubits
    }

    pub fn pattern(&self) -> usize {
        self.pattern
    }
}

/// Applies `gate` to `target`, identity elsewhere.
pub fn apply_single(state: &StateVector, gate: &SingleQubitGate, target: usize) -> Result<StateVector> {
    let n = state.num_qubits();
    if target >= n {
        return Err(Error::QubitOutOfRange {
            qubit: target,
            num_qubits: n,
        });
    }
    let mut amps = state.amplitudes().to_vec();
    apply_single_in_place(&mut amps, n, gate, target);
    Ok(StateVector::from_raw_parts(n, amps))
}

/// In-place single-qubit kernel over a raw amplitude buffer of `2^num_qubits`.
pub(crate) fn apply_single_in_place(
    amps: &mut [Complex64],
    num_qubits: usize,
    gate: &SingleQubitGate,
    target: usize,
) {
    let stride = 1usize << (num_qubits - 1 - target);
    let [[a, b], [c, d]] = gate.m;
    for block in amps.chunks_exact_mut(stride << 1) {
        let (lo, hi) = block.split_at_mut(stride);
        for (x0, x1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (v0, v1) = (*x0, *x1);
            *x0 = a * v0 + b * v1;
            *x1 = c * v0 + d * v1;
        }
    }
}

/// A permutation unitary bound to a target register (and optional controls)
/// of a fixed-size register, ready to be applied repeatedly.
#[derive(Clone, Debug)]
pub struct PermKernel {
    num_qubits: usize,
    target_mask: usize,
    /// `dest_bits[i]` = target-register bits of `target_of[i]` scattered into position.
    dest_bits: Vec<usize>,
    phase_of: Vec<Complex64>,
    target: SliceMap,
    control_mask: usize,
    control_value: usize,
}

impl PermKernel {
    pub fn new(
        num_qubits: usize,
        unitary: &PermutationPhaseUnitary,
        target: &RegisterSlice,
        control: Option<&ControlSpec>,
    ) -> Result<Self> {
        target.validate(num_qubits)?;
        if 1usize.checked_shl(target.len() as u32) != Some(unitary.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "unitary of dim {} on a {}-qubit register",
                unitary.dim(),
                target.len()
            )));
        }
        let (control_mask, control_value) = match control {
            Some(ctrl) => {
                ctrl.qubits.validate(num_qubits)?;
                if let Some(&q) = ctrl.qubits.qubits().iter().find(|&&q| target.contains(q)) {
                    return Err(Error::OverlappingRegisters(q));
                }
                let map = SliceMap::new(ctrl.qubits.qubits(), num_qubits);
                (map.mask(), map.scatter(ctrl.pattern))
            }
            None => (0, 0),
        };
        let map = SliceMap::new(target.qubits(), num_qubits);
        let dest_bits = unitary.target_of.iter().map(|&t| map.scatter(t)).collect();
        Ok(Self {
            num_qubits,
            target_mask: map.mask(),
            dest_bits,
            phase_of: unitary.phase_of.clone(),
            target: map,
            control_mask,
            control_value,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Writes the image of `src` into `dst`. Both buffers hold `2^num_qubits` amplitudes.
    pub fn apply_into(&self, src: &[Complex64], dst: &mut [Complex64]) {
        debug_assert_eq!(src.len(), 1 << self.num_qubits);
        debug_assert_eq!(dst.len(), src.len());
        let keep = !self.target_mask;
        for (i, &a) in src.iter().enumerate() {
            if i & self.control_mask == self.control_value {
                let sub = self.target.gather(i);
                dst[(i & keep) | self.dest_bits[sub]] = a * self.phase_of[sub];
            } else {
                dst[i] = a;
            }
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "kernel built for {} qubits, state has {}",
                self.num_qubits,
                state.num_qubits()
            )));
        }
        let mut out = vec![ZERO; state.dim()];
        self.apply_into(state.amplitudes(), &mut out);
        Ok(StateVector::from_raw_parts(self.num_qubits, out))
    }
}

/// Applies `unitary` to `target`, optionally conditioned on `control`.
pub fn apply_perm_unitary(
    state: &StateVector,
    unitary: &PermutationPhaseUnitary,
    target: &RegisterSlice,
    control: Option<&ControlSpec>,
) -> Result<StateVector> {
    PermKernel::new(state.num_qubits(), unitary, target, control)?.apply(state)
}
