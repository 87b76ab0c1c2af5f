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

//! Statevector storage, register slices and exact (non-sampled) measurement.
//!
//! Bit ordering: qubit 0 is the most significant bit of a basis index, so the
//! ket `|b0 b1 ... b(n-1)>` lives at index `sum b_k * 2^(n-1-k)` and `|01>` is
//! index 1.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `| ||psi|| - 1 |` for a state tagged as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance accepted by [`StateVector::from_amplitudes`] before renormalizing.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// Outcomes with probability below this carry no post-measurement state.
pub const PROB_FLOOR: f64 = 1e-14;

/// A normalized pure state on `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Amplitudes with no normalization guarantee, e.g. a branch of an ancilla
/// register before post-selection.
#[derive(Clone, Debug, PartialEq)]
pub struct RawState {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn dim_of(num_qubits: usize) -> usize {
    1usize << num_qubits
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl StateVector {
    /// The computational basis ket `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let dim = dim_of(num_qubits);
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, num_qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// `|0...0>`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Builds a state from explicit amplitudes. The norm must be within
    /// [`INPUT_NORM_TOL`] of one; the stored amplitudes are rescaled to unit norm.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let raw = RawState::new(num_qubits, amps)?;
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let norm = raw.norm();
        if (norm - 1.0).abs() > INPUT_NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: INPUT_NORM_TOL,
            });
        }
        Ok(raw.scaled_to_unit(norm))
    }

    /// Builds a state from real amplitudes; convenience for tests and scenarios.
    pub fn from_real(num_qubits: usize, amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(
            num_qubits,
            amps.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        )
    }

    /// Equal superposition of the listed basis indices.
    pub fn uniform_over(num_qubits: usize, indices: &[usize]) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let dim = dim_of(num_qubits);
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    num_qubits,
                });
            }
            amps[i] += Complex64::new(1.0, 0.0);
        }
        let norm = norm_sqr(&amps).sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm, tol: 0.0 });
        }
        Ok(RawState { num_qubits, amps }.scaled_to_unit(norm))
    }

    pub(crate) fn from_raw_parts(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), dim_of(num_qubits));
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    /// `|amp|^2` per basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        inner_product(&self.amps, &other.amps)
    }

    /// `self ⊗ other`, with `self` on the more significant qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amps: kron(&self.amps, &other.amps),
        }
    }

    /// Multiplies every amplitude by `e^{i theta}`.
    pub fn with_global_phase(&self, theta: f64) -> StateVector {
        let phase = Complex64::from_polar(1.0, theta);
        StateVector {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    /// The same amplitudes, without the normalization tag.
    pub fn to_raw(&self) -> RawState {
        RawState {
            num_qubits: self.num_qubits,
            amps: self.amps.clone(),
        }
    }

    /// Exact measurement of `register`: one record per bit pattern, in
    /// ascending pattern order.
    pub fn measure(&self, register: &RegisterSlice) -> Result<Vec<OutcomeRecord>> {
        measure_register(self, register)
    }

    /// Probability of each bit pattern on `register`.
    pub fn marginal(&self, register: &RegisterSlice) -> Result<Vec<f64>> {
        marginal_distribution(self, register)
    }
}

impl RawState {
    pub fn new(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let expected = dim_of(num_qubits);
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: amps.len(),
            });
        }
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    /// Rescales to unit norm, or `None` when the squared norm is below
    /// [`PROB_FLOOR`].
    pub fn normalize(&self) -> Option<StateVector> {
        let p = self.norm_sqr();
        (p >= PROB_FLOOR).then(|| self.clone().scaled_to_unit(p.sqrt()))
    }

    fn scaled_to_unit(self, norm: f64) -> StateVector {
        let inv = 1.0 / norm;
        StateVector {
            num_qubits: self.num_qubits,
            amps: self.amps.into_iter().map(|a| a * inv).collect(),
        }
    }
}

/// `<a|b>` over plain amplitude slices.
pub fn inner_product(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

pub(crate) fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}

/// An ordered list of distinct qubits. The first listed qubit is the most
/// significant bit of a pattern read from the slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterSlice {
    qubits: Vec<usize>,
}

impl RegisterSlice {
    pub fn new(qubits: Vec<usize>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::EmptyRegister);
        }
        for (k, q) in qubits.iter().enumerate() {
            if qubits[..k].contains(q) {
                return Err(Error::DuplicateQubit(*q));
            }
        }
        Ok(Self { qubits })
    }

    /// Qubits `start..start + len`.
    pub fn range(start: usize, len: usize) -> Result<Self> {
        Self::new((start..start + len).collect())
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.qubits.contains(&qubit)
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        match self.qubits.iter().find(|&&q| q >= num_qubits) {
            Some(&qubit) => Err(Error::QubitOutOfRange { qubit, num_qubits }),
            None => Ok(()),
        }
    }

    /// Qubits of an `num_qubits` register not in this slice, ascending.
    pub fn complement(&self, num_qubits: usize) -> Vec<usize> {
        (0..num_qubits).filter(|q| !self.contains(*q)).collect()
    }
}

/// Gathers and scatters the bits of a register slice inside a full basis index.
#[derive(Clone, Debug)]
pub(crate) struct SliceMap {
    /// Bit positions (0 = least significant), in slice order.
    positions: Vec<u32>,
    mask: usize,
    /// Lowest bit position when the slice is a contiguous run in MSB-first order.
    contiguous_shift: Option<u32>,
}

impl SliceMap {
    pub(crate) fn new(qubits: &[usize], num_qubits: usize) -> Self {
        let positions: Vec<u32> = qubits
            .iter()
            .map(|&q| (num_qubits - 1 - q) as u32)
            .collect();
        let mask = positions.iter().fold(0usize, |m, &p| m | (1 << p));
        let contiguous = positions.windows(2).all(|w| w[0] == w[1] + 1);
        let contiguous_shift = (contiguous && !positions.is_empty()).then(|| *positions.last().unwrap());
        Self {
            positions,
            mask,
            contiguous_shift,
        }
    }

    pub(crate) fn width(&self) -> usize {
        self.positions.len()
    }

    pub(crate) fn mask(&self) -> usize {
        self.mask
    }

    #[inline]
    pub(crate) fn gather(&self, index: usize) -> usize {
        if let Some(shift) = self.contiguous_shift {
            return (index & self.mask) >> shift;
        }
        self.positions
            .iter()
            .fold(0usize, |acc, &p| (acc << 1) | ((index >> p) & 1))
    }

    #[inline]
    pub(crate) fn scatter(&self, sub: usize) -> usize {
        if let Some(shift) = self.contiguous_shift {
            return sub << shift;
        }
        let w = self.positions.len();
        self.positions
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &p)| acc | (((sub >> (w - 1 - k)) & 1) << p))
    }
}

/// One branch of an exact register measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeRecord {
    /// Measured pattern; the first qubit of the slice is the most significant bit.
    pub pattern: usize,
    /// Number of measured qubits.
    pub width: usize,
    pub probability: f64,
    /// Renormalized state of the unmeasured qubits; `None` below [`PROB_FLOOR`].
    pub post_state: Option<StateVector>,
}

impl OutcomeRecord {
    /// The pattern as a bit string, e.g. `"01"`.
    pub fn bits(&self) -> String {
        format_bits(self.pattern, self.width)
    }
}

pub fn format_bits(value: usize, width: usize) -> String {
    (0..width)
        .map(|k| {
            if (value >> (width - 1 - k)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

impl fmt::Display for OutcomeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: p={:.12}", self.bits(), self.probability)
    }
}

/// Unnormalized restriction of `state` to `pattern` on `register`, as a
/// state of the remaining qubits (in ascending qubit order).
pub fn project_register(
    state: &StateVector,
    register: &RegisterSlice,
    pattern: usize,
) -> Result<RawState> {
    register.validate(state.num_qubits)?;
    let n = state.num_qubits;
    if pattern >= dim_of(register.len()) {
        return Err(Error::IndexOutOfRange {
            index: pattern,
            num_qubits: register.len(),
        });
    }
    let measured = SliceMap::new(register.qubits(), n);
    let rest = SliceMap::new(&register.complement(n), n);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim_of(rest.width())];
    let base = measured.scatter(pattern);
    for (r, slot) in amps.iter_mut().enumerate() {
        *slot = state.amps[base | rest.scatter(r)];
    }
    Ok(RawState {
        num_qubits: rest.width(),
        amps,
    })
}

/// Exact measurement of `register` in the computational basis.
pub fn measure_register(state: &StateVector, register: &RegisterSlice) -> Result<Vec<OutcomeRecord>> {
    register.validate(state.num_qubits)?;
    let n = state.num_qubits;
    let measured = SliceMap::new(register.qubits(), n);
    let rest = SliceMap::new(&register.complement(n), n);
    let rest_dim = dim_of(rest.width());
    let mut branches = vec![vec![Complex64::new(0.0, 0.0); rest_dim]; dim_of(measured.width())];
    for (i, a) in state.amps.iter().enumerate() {
        branches[measured.gather(i)][rest.gather(i)] = *a;
    }
    Ok(branches
        .into_iter()
        .enumerate()
        .map(|(pattern, amps)| {
            let raw = RawState {
                num_qubits: rest.width(),
                amps,
            };
            OutcomeRecord {
                pattern,
                width: measured.width(),
                probability: raw.norm_sqr(),
                post_state: raw.normalize(),
            }
        })
        .collect())
}

/// Probability of reading each pattern on `register`.
pub fn marginal_distribution(state: &StateVector, register: &RegisterSlice) -> Result<Vec<f64>> {
    register.validate(state.num_qubits)?;
    let measured = SliceMap::new(register.qubits(), state.num_qubits);
    let mut probs = vec![0.0; dim_of(measured.width())];
    for (i, a) in state.amps.iter().enumerate() {
        probs[measured.gather(i)] += a.norm_sqr();
    }
    Ok(probs)
}
