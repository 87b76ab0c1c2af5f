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

//! Coined discrete-time quantum walk on a cycle of `2^w` positions.
//!
//! Register layout: walker qubits first (most significant), coin qubit last.
//! One step tosses the coin with the rotation `S_c(phi)`, then moves the
//! walker up one position when the coin reads 1 and down one when it reads 0,
//! wrapping around the cycle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{
    apply_single_in_place, coin_gate, cyclic_shift, ControlSpec, Direction, PermKernel, SingleQubitGate,
    WrapSign,
};
use crate::statevec::{marginal_distribution, RegisterSlice, StateVector, NORM_TOL};

/// Tolerance on the total probability of a position distribution.
pub const DISTRIBUTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub walker_qubits: usize,
    pub steps: usize,
    pub coin_angle_deg: f64,
    pub initial_walker: StateVector,
    pub initial_coin: StateVector,
}

impl WalkConfig {
    /// Walker starting at basis position `start`, coin in `|0>`.
    pub fn from_position(walker_qubits: usize, steps: usize, coin_angle_deg: f64, start: usize) -> Result<Self> {
        Ok(Self {
            walker_qubits,
            steps,
            coin_angle_deg,
            initial_walker: StateVector::basis(walker_qubits, start)?,
            initial_coin: StateVector::zero(1)?,
        })
    }

    /// Walker in `(|start> + |start+1>)/sqrt2`, coin in `|0>`.
    pub fn superposed(walker_qubits: usize, steps: usize, coin_angle_deg: f64, start: usize) -> Result<Self> {
        let dim = 1usize << walker_qubits;
        if start >= dim {
            return Err(Error::IndexOutOfRange {
                index: start,
                num_qubits: walker_qubits,
            });
        }
        Ok(Self {
            walker_qubits,
            steps,
            coin_angle_deg,
            initial_walker: StateVector::uniform_over(walker_qubits, &[start, (start + 1) % dim])?,
            initial_coin: StateVector::zero(1)?,
        })
    }

    pub fn with_coin(mut self, coin: StateVector) -> Self {
        self.initial_coin = coin;
        self
    }

    pub fn with_walker(mut self, walker: StateVector) -> Self {
        self.walker_qubits = walker.num_qubits();
        self.initial_walker = walker;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.walker_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if self.initial_walker.num_qubits() != self.walker_qubits {
            return Err(Error::DimensionMismatch(format!(
                "initial walker has {} qubits, config says {}",
                self.initial_walker.num_qubits(),
                self.walker_qubits
            )));
        }
        if self.initial_coin.num_qubits() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "coin state must be one qubit, got {}",
                self.initial_coin.num_qubits()
            )));
        }
        for s in [&self.initial_walker, &self.initial_coin] {
            let norm = s.norm();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized { norm, tol: NORM_TOL });
            }
        }
        Ok(())
    }
}

/// Probability of finding the walker at each position.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionDistribution {
    probabilities: Vec<f64>,
}

impl PositionDistribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if !probabilities.len().is_power_of_two() || probabilities.len() < 2 {
            return Err(Error::NotPowerOfTwo(probabilities.len()));
        }
        if let Some(p) = probabilities.iter().find(|p| **p < -1e-14 || !p.is_finite()) {
            return Err(Error::DimensionMismatch(format!("invalid probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_TOL {
            return Err(Error::NotNormalized {
                norm: total,
                tol: DISTRIBUTION_TOL,
            });
        }
        Ok(Self { probabilities })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn walker_qubits(&self) -> usize {
        self.probabilities.len().trailing_zeros() as usize
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Total mass on positions with the given parity (0 even, 1 odd).
    pub fn parity_mass(&self, parity: usize) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(x, _)| x % 2 == parity % 2)
            .map(|(_, p)| p)
            .sum()
    }

    /// The distribution translated by `shift` positions around the cycle.
    pub fn shifted(&self, shift: isize) -> Self {
        let n = self.len() as isize;
        let mut out = vec![0.0; self.len()];
        for (x, p) in self.probabilities.iter().enumerate() {
            out[(x as isize + shift).rem_euclid(n) as usize] = *p;
        }
        Self { probabilities: out }
    }

    /// `1/2 sum |p - q|`.
    pub fn total_variation(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "distributions over {} and {} positions",
                self.len(),
                other.len()
            )));
        }
        Ok(0.5
            * self
                .probabilities
                .iter()
                .zip(&other.probabilities)
                .map(|(p, q)| (p - q).abs())
                .sum::<f64>())
    }

    /// Equal-weight mixture of two distributions.
    pub fn average(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("mixture of unequal lengths".into()));
        }
        Ok(Self {
            probabilities: self
                .probabilities
                .iter()
                .zip(&other.probabilities)
                .map(|(p, q)| 0.5 * (p + q))
                .collect(),
        })
    }
}

/// Reusable walk engine holding the joint walker⊗coin amplitudes.
#[derive(Clone, Debug)]
pub struct WalkEngine {
    walker_qubits: usize,
    coin: SingleQubitGate,
    up: PermKernel,
    down: PermKernel,
    amps: Vec<Complex64>,
    scratch: Vec<Complex64>,
    steps_taken: usize,
}

impl WalkEngine {
    pub fn new(initial: &StateVector, coin_angle_deg: f64) -> Result<Self> {
        let n = initial.num_qubits();
        if n < 2 {
            return Err(Error::DimensionMismatch(format!(
                "walk register needs a walker and a coin qubit, got {n} qubits"
            )));
        }
        let walker_qubits = n - 1;
        let dim = 1usize << walker_qubits;
        let walker = RegisterSlice::range(0, walker_qubits)?;
        let coin_reg = RegisterSlice::new(vec![walker_qubits])?;
        let up = PermKernel::new(
            n,
            &cyclic_shift(dim, Direction::Up, WrapSign::Plus)?,
            &walker,
            Some(&ControlSpec::new(coin_reg.clone(), 1)?),
        )?;
        let down = PermKernel::new(
            n,
            &cyclic_shift(dim, Direction::Down, WrapSign::Plus)?,
            &walker,
            Some(&ControlSpec::new(coin_reg, 0)?),
        )?;
        Ok(Self {
            walker_qubits,
            coin: coin_gate(coin_angle_deg),
            up,
            down,
            amps: initial.amplitudes().to_vec(),
            scratch: vec![Complex64::new(0.0, 0.0); initial.dim()],
            steps_taken: 0,
        })
    }

    pub fn from_config(cfg: &WalkConfig) -> Result<Self> {
        cfg.validate()?;
        Self::new(&cfg.initial_walker.tensor(&cfg.initial_coin), cfg.coin_angle_deg)
    }

    pub fn step(&mut self) {
        let n = self.walker_qubits + 1;
        apply_single_in_place(&mut self.amps, n, &self.coin, self.walker_qubits);
        self.up.apply_into(&self.amps, &mut self.scratch);
        self.down.apply_into(&self.scratch, &mut self.amps);
        self.steps_taken += 1;
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn state(&self) -> StateVector {
        StateVector::from_raw_parts(self.walker_qubits + 1, self.amps.clone())
    }

    /// Walker marginal with the coin traced out.
    pub fn positions(&self) -> Vec<f64> {
        self.amps
            .chunks_exact(2)
            .map(|pair| pair[0].norm_sqr() + pair[1].norm_sqr())
            .collect()
    }
}

/// One walk step `T * (I ⊗ S_c(phi))` on a walker⊗coin state.
pub fn walk_step(state: &StateVector, coin_angle_deg: f64) -> Result<StateVector> {
    let mut engine = WalkEngine::new(state, coin_angle_deg)?;
    engine.step();
    Ok(engine.state())
}

pub fn run_walk(cfg: &WalkConfig) -> Result<PositionDistribution> {
    let mut engine = WalkEngine::from_config(cfg)?;
    for _ in 0..cfg.steps {
        engine.step();
    }
    PositionDistribution::new(engine.positions())
}

/// Walk from `(|start> + |start+1>)/sqrt2` with the coin in `|0>`.
///
/// Even and odd starting positions occupy disjoint parity sectors at every
/// step, so the result equals `D(x)/2 + D(x-1)/2` where `D` is the walk from
/// `start` alone.
pub fn run_walk_superposed(
    walker_qubits: usize,
    steps: usize,
    coin_angle_deg: f64,
    start: usize,
) -> Result<PositionDistribution> {
    run_walk(&WalkConfig::superposed(walker_qubits, steps, coin_angle_deg, start)?)
}

/// Position marginal of an arbitrary walker⊗coin state.
pub fn position_marginal(state: &StateVector) -> Result<PositionDistribution> {
    let w = state.num_qubits().saturating_sub(1);
    PositionDistribution::new(marginal_distribution(state, &RegisterSlice::range(0, w)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkStatistics {
    pub mean: f64,
    pub stddev: f64,
}

/// Mean and standard deviation of the signed displacement from `center`,
/// unwrapped into `(-2^(w-1), 2^(w-1)]`.
pub fn walk_statistics(d: &PositionDistribution, center: usize) -> WalkStatistics {
    let n = d.len() as i64;
    let half = n / 2;
    let mut mean = 0.0;
    let mut second = 0.0;
    for (x, p) in d.probabilities.iter().enumerate() {
        let mut disp = (x as i64 - center as i64).rem_euclid(n);
        if disp > half {
            disp -= n;
        }
        mean += p * disp as f64;
        second += p * (disp * disp) as f64;
    }
    WalkStatistics {
        mean,
        stddev: (second - mean * mean).max(0.0).sqrt(),
    }
}
