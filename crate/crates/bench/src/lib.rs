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

//! Fixtures shared by the criterion benches.

use lcu_core::{Complex64, StateVector};

/// A dense, deterministic, normalized state on `num_qubits` qubits with no zero amplitudes.
pub fn spread_state(num_qubits: usize) -> StateVector {
    let dim = 1usize << num_qubits;
    let amps: Vec<Complex64> = (0..dim)
        .map(|i| {
            let t = i as f64 * 0.618_033_988_749_895;
            Complex64::new(1.0 + t.sin(), t.cos())
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(num_qubits, amps.into_iter().map(|a| a / norm).collect())
        .expect("normalized by construction")
}
