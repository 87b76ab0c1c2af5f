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

use lcu_core::{run_walk, walk_step, Complex64, StateVector, WalkConfig};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn coin_state() -> impl Strategy<Value = StateVector> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU).prop_map(|(theta, phase)| {
        let (s, c) = (theta / 2.0).sin_cos();
        StateVector::from_amplitudes(1, vec![Complex64::new(c, 0.0), Complex64::from_polar(s, phase)]).unwrap()
    })
}

#[test]
fn three_qubit_two_step_walk_matches_dense_square() {
    // 16x16 step unitary assembled column by column from single-step images
    let w = 3;
    let dim = 1 << (w + 1);
    let mut step = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..dim {
        let image = walk_step(&StateVector::basis(w + 1, j).unwrap(), 45.0).unwrap();
        for (i, a) in image.amplitudes().iter().enumerate() {
            step[(i, j)] = *a;
        }
    }
    let start = StateVector::basis(w, 4).unwrap().tensor(&StateVector::zero(1).unwrap());
    let v = &step * &step * DVector::from_column_slice(start.amplitudes());
    let expect: Vec<f64> = (0..8).map(|x| v[2 * x].norm_sqr() + v[2 * x + 1].norm_sqr()).collect();

    let got = run_walk(&WalkConfig::from_position(w, 2, 45.0, 4).unwrap()).unwrap();
    for (a, b) in got.probabilities().iter().zip(&expect) {
        assert!((a - b).abs() < 1e-12);
    }
    // two balanced steps from 4: positions 2, 4, 6
    assert!((expect[2] + expect[4] + expect[6] - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_sector_is_fixed(w in 2usize..7, t in 0usize..40, seed in any::<usize>(), coin in coin_state(), phi in -180.0f64..180.0) {
        let n = 1usize << w;
        let x0 = seed % n;
        let cfg = WalkConfig::from_position(w, t, phi, x0).unwrap().with_coin(coin);
        let d = run_walk(&cfg).unwrap();
        let wrong: f64 = d
            .probabilities()
            .iter()
            .enumerate()
            .filter(|(x, _)| (x + n - x0 + t) % 2 == 1)
            .map(|(_, p)| p)
            .sum();
        prop_assert!(wrong <= 1e-12);
        prop_assert!((d.total() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn translation_covariance(w in 2usize..7, t in 0usize..40, a in any::<usize>(), b in any::<usize>(), coin in coin_state()) {
        let n = 1usize << w;
        let (x0, shift) = (a % n, b % n);
        let base = run_walk(&WalkConfig::from_position(w, t, 45.0, x0).unwrap().with_coin(coin.clone())).unwrap();
        let moved = run_walk(&WalkConfig::from_position(w, t, 45.0, (x0 + shift) % n).unwrap().with_coin(coin)).unwrap();
        let tv = base.shifted(shift as isize).total_variation(&moved).unwrap();
        prop_assert!(tv <= 1e-12);
    }
}
