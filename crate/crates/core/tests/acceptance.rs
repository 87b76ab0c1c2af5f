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

//! Acceptance criteria, one line per criterion. Every check is run against an
//! oracle assembled here from dense Kronecker products, independent of the
//! permutation kernels under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lcu_core::{
    cyclic_shift, fidelity, ladder_matrix, lcu_circuit, lcu_vs_oracle_check, pauli_expectations, pps,
    reconstruct, run_walk, run_walk_superposed, Branch, Complex64, DensityMatrix, Direction, LadderKind,
    PermKernel, RegisterSlice, StateVector, WalkConfig, WalkEngine, WrapSign,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = DMatrix<Complex64>;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn eye(n: usize) -> M {
    M::identity(n, n)
}

fn h() -> M {
    M::from_row_slice(2, 2, &[c(S), c(S), c(S), c(-S)])
}

/// Cyclic shift written out from its sum-of-outer-products form.
fn shift_matrix(dim: usize, up: bool, wrap: f64) -> M {
    let mut m = M::zeros(dim, dim);
    for i in 0..dim {
        if up {
            if i + 1 < dim {
                m[(i + 1, i)] = c(1.0);
            } else {
                m[(0, i)] = c(wrap);
            }
        } else if i > 0 {
            m[(i - 1, i)] = c(1.0);
        } else {
            m[(dim - 1, 0)] = c(wrap);
        }
    }
    m
}

fn projector(dim: usize, k: usize) -> M {
    let mut m = M::zeros(dim, dim);
    m[(k, k)] = c(1.0);
    m
}

/// Whole-register unitary of the two-ancilla circuit.
fn dense_lcu(w: usize) -> M {
    let d = 1 << w;
    let us = [
        shift_matrix(d, true, 1.0),
        shift_matrix(d, true, -1.0),
        shift_matrix(d, false, 1.0),
        shift_matrix(d, false, -1.0),
    ];
    let prepare = h().kronecker(&h()).kronecker(&eye(d));
    let select = us
        .iter()
        .enumerate()
        .fold(M::zeros(4 * d, 4 * d), |acc, (k, u)| acc + projector(4, k).kronecker(u));
    let unprepare = eye(2).kronecker(&h()).kronecker(&eye(d));
    unprepare * select * prepare
}

fn coin(phi_deg: f64) -> M {
    let (s, co) = phi_deg.to_radians().sin_cos();
    M::from_row_slice(2, 2, &[c(co), c(-s), c(s), c(co)])
}

/// Walk step on walker ⊗ coin: coin toss then coin-conditioned shift.
fn dense_walk_step(w: usize, phi_deg: f64) -> M {
    let d = 1 << w;
    let toss = eye(d).kronecker(&coin(phi_deg));
    let shift = shift_matrix(d, true, 1.0).kronecker(&projector(2, 1))
        + shift_matrix(d, false, 1.0).kronecker(&projector(2, 0));
    shift * toss
}

fn random_state(rng: &mut impl Rng, n: usize) -> StateVector {
    let amps: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(n, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let a = M::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).unwrap()
}

fn pure(s: &StateVector) -> DensityMatrix {
    DensityMatrix::from_pure(s).unwrap()
}

fn tv(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let ok = parts.iter().all(|p| p.ok);
    let detail = parts
        .iter()
        .filter(|p| !ok || !p.detail.is_empty())
        .map(|p| format!("{}{}", if p.ok { "" } else { "FAILED " }, p.detail))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    check(elapsed < limit, format!("{elapsed:.2?} < {limit:?}"))
}

fn c1_basis_scenario() -> Outcome {
    let t0 = Instant::now();
    let r = lcu_circuit(&StateVector::basis(2, 1).unwrap()).unwrap();
    let p = |b| r.probability(b);
    let f_add = fidelity(&pure(r.post_state(Branch::Add).unwrap()), &pure(&StateVector::basis(2, 2).unwrap())).unwrap();
    let f_sub = fidelity(&pure(r.post_state(Branch::Sub).unwrap()), &pure(&StateVector::basis(2, 0).unwrap())).unwrap();
    let elapsed = t0.elapsed();
    all(vec![
        check(
            (p(Branch::Add) - 0.5).abs() <= 1e-12 && (p(Branch::Sub) - 0.5).abs() <= 1e-12,
            format!("p00={:.15} p10={:.15}", p(Branch::Add), p(Branch::Sub)),
        ),
        check(
            p(Branch::AddBoundary) <= 1e-12 && p(Branch::SubBoundary) <= 1e-12,
            format!("p01={:.1e} p11={:.1e}", p(Branch::AddBoundary), p(Branch::SubBoundary)),
        ),
        check(
            (f_add - 1.0).abs() <= 1e-12 && (f_sub - 1.0).abs() <= 1e-12,
            format!("F(00,|10>)={f_add:.15} F(10,|00>)={f_sub:.15}"),
        ),
        within(elapsed, Duration::from_secs(1)),
    ])
}

fn c2_superposition_scenario() -> Outcome {
    let t0 = Instant::now();
    let psi = StateVector::from_real(2, &[0.0, S, S, 0.0]).unwrap();
    let r = lcu_circuit(&psi).unwrap();
    let p = |b| r.probability(b);
    let up = StateVector::from_real(2, &[0.0, 0.0, S, S]).unwrap();
    let f_add = fidelity(&pure(r.post_state(Branch::Add).unwrap()), &pure(&up)).unwrap();
    // branch 10 against K applied directly
    let k = ladder_matrix(4, LadderKind::Sub).unwrap();
    let expect = k.matrix() * DVector::from_column_slice(psi.amplitudes());
    let n = expect.norm();
    let got = r.post_state(Branch::Sub).unwrap();
    let overlap: Complex64 = got.amplitudes().iter().zip(expect.iter()).map(|(g, e)| g.conj() * e / n).sum();
    let f_sub = overlap.norm_sqr();
    let elapsed = t0.elapsed();
    all(vec![
        check(
            (p(Branch::Add) - 0.5).abs() <= 1e-12 && (p(Branch::Sub) - 0.5).abs() <= 1e-12,
            format!("p00={:.15} p10={:.15}", p(Branch::Add), p(Branch::Sub)),
        ),
        check((f_add - 1.0).abs() <= 1e-12, format!("F(00,(|10>+|11>)/sqrt2)={f_add:.15}")),
        check((f_sub - 1.0).abs() <= 1e-12, format!("F(10,K psi)={f_sub:.15}")),
        within(elapsed, Duration::from_secs(1)),
    ])
}

fn c3_oracle_equivalence() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut worst_op = 0.0f64;
    let mut worst_dense = 0.0f64;
    for w in 1..=4 {
        let d = 1 << w;
        let circuit = dense_lcu(w);
        for _ in 0..100 {
            let psi = random_state(&mut rng, w);
            worst_op = worst_op.max(lcu_vs_oracle_check(&psi).unwrap());

            let mut input = DVector::zeros(4 * d);
            input.rows_mut(0, d).copy_from(&DVector::from_column_slice(psi.amplitudes()));
            let joint = &circuit * input;
            let r = lcu_circuit(&psi).unwrap();
            for b in Branch::ALL {
                let block = joint.rows(b.pattern() * d, d);
                for (g, e) in r.branch(b).raw.amplitudes().iter().zip(block.iter()) {
                    worst_dense = worst_dense.max((g - e).norm());
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    all(vec![
        check(worst_op <= 1e-10, format!("max |branch - Op psi/sqrt2| = {worst_op:.1e}")),
        check(worst_dense <= 1e-10, format!("max |branch - dense circuit| = {worst_dense:.1e}")),
        within(elapsed, Duration::from_secs(10)),
    ])
}

fn c4_decomposition() -> Outcome {
    let mut exact = true;
    let mut worst_unitary = 0.0f64;
    for d in [2usize, 4, 8, 16] {
        let u: Vec<M> = [
            (Direction::Up, WrapSign::Plus),
            (Direction::Up, WrapSign::Minus),
            (Direction::Down, WrapSign::Plus),
            (Direction::Down, WrapSign::Minus),
        ]
        .iter()
        .map(|&(dir, s)| cyclic_shift(d, dir, s).unwrap().to_dense())
        .collect();
        for m in &u {
            worst_unitary = worst_unitary.max((m.adjoint() * m - eye(d)).camax());
        }
        let half = c(0.5);
        let lm = |k| ladder_matrix(d, k).unwrap().matrix().clone();
        exact &= lm(LadderKind::Add) == (&u[0] + &u[1]) * half;
        exact &= lm(LadderKind::AddBoundary) == (&u[0] - &u[1]) * half;
        exact &= lm(LadderKind::Sub) == (&u[2] + &u[3]) * half;
        exact &= lm(LadderKind::SubBoundary) == (&u[2] - &u[3]) * half;
    }
    all(vec![
        check(exact, "K+, J+, K, J equal (U0±U1)/2, (U2±U3)/2 exactly for d in {2,4,8,16}"),
        check(worst_unitary <= 1e-12, format!("max |U†U - I| = {worst_unitary:.1e}")),
    ])
}

fn c5_probability_split() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let psi = random_state(&mut rng, 1 + i % 4);
        let r = lcu_circuit(&psi).unwrap();
        let p = |b| r.probability(b);
        worst = worst
            .max((p(Branch::Add) + p(Branch::AddBoundary) - 0.5).abs())
            .max((p(Branch::Sub) + p(Branch::SubBoundary) - 0.5).abs());
    }
    check(worst <= 1e-12, format!("max |p00+p01-1/2|, |p10+p11-1/2| = {worst:.1e}"))
}

fn c6_fig7_walk() -> Outcome {
    let t0 = Instant::now();
    let cfg = WalkConfig::from_position(8, 128, 45.0, 128).unwrap();
    let mut engine = WalkEngine::from_config(&cfg).unwrap();
    let mut worst_norm = 0.0f64;
    for _ in 0..cfg.steps {
        engine.step();
        worst_norm = worst_norm.max((engine.norm() - 1.0).abs());
    }
    let positions = engine.positions();
    let odd: f64 = positions.iter().skip(1).step_by(2).sum();
    let elapsed = t0.elapsed();
    all(vec![
        check(odd < 1e-12, format!("odd-position mass {odd:.1e}")),
        check(worst_norm <= 1e-10, format!("max per-step norm drift {worst_norm:.1e}")),
        within(elapsed, Duration::from_secs(5)),
    ])
}

fn c7_fig8_walk() -> Outcome {
    let single = run_walk(&WalkConfig::from_position(8, 128, 45.0, 128).unwrap()).unwrap();
    let sup = run_walk_superposed(8, 128, 45.0, 128).unwrap();
    let d = single.probabilities();
    let expect: Vec<f64> = (0..256).map(|x| 0.5 * d[x] + 0.5 * d[(x + 255) % 256]).collect();
    let dist = tv(sup.probabilities(), &expect);
    check(dist <= 1e-12, format!("TV to D(x)/2 + D(x-1)/2 = {dist:.1e}"))
}

fn c8_walk_oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for w in 1..=4 {
        let d = 1usize << w;
        for phi in [45.0, 30.0, 0.0, 90.0, 137.5] {
            let step = dense_walk_step(w, phi);
            for _ in 0..3 {
                let start = rng.gen_range(0..d);
                let coin_state = random_state(&mut rng, 1);
                let mut v = DVector::from_column_slice(
                    StateVector::basis(w, start).unwrap().tensor(&coin_state).amplitudes(),
                );
                for t in 0..=8 {
                    let expect: Vec<f64> = (0..d).map(|x| v[2 * x].norm_sqr() + v[2 * x + 1].norm_sqr()).collect();
                    let cfg = WalkConfig::from_position(w, t, phi, start)
                        .unwrap()
                        .with_coin(coin_state.clone());
                    let got = run_walk(&cfg).unwrap();
                    worst = worst.max(tv(got.probabilities(), &expect));
                    v = &step * v;
                }
            }
        }
    }
    check(worst <= 1e-12, format!("max TV vs dense step-matrix powers = {worst:.1e}"))
}

fn c9_tomography() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let rho = random_density(&mut rng, 4);
        let e = pauli_expectations(&rho).unwrap();
        let back = reconstruct(&e);
        worst = worst.max((back.matrix() - rho.matrix()).camax());
        let again = pauli_expectations(&back).unwrap();
        for (a, b) in e.values().iter().zip(again.values()) {
            worst = worst.max((a - b).abs());
        }
    }
    let eps = 1e-5;
    let ev = pps(4, eps).unwrap().eigenvalues();
    let low = (1.0 - eps) / 16.0;
    let spectrum = ev[..15]
        .iter()
        .map(|e| (e - low).abs())
        .fold((ev[15] - (low + eps)).abs(), f64::max);
    all(vec![
        check(worst <= 1e-10, format!("round-trip deviation {worst:.1e}")),
        check(spectrum <= 1e-12, format!("pps(4, 1e-5) spectrum deviation {spectrum:.1e}")),
    ])
}

fn c10_performance() -> Outcome {
    let n = 20;
    let state = StateVector::basis(n, 12345).unwrap();
    let kernel = PermKernel::new(
        n,
        &cyclic_shift(1 << n, Direction::Up, WrapSign::Plus).unwrap(),
        &RegisterSlice::range(0, n).unwrap(),
        None,
    )
    .unwrap();
    let mut out = vec![c(0.0); state.dim()];
    let t0 = Instant::now();
    kernel.apply_into(state.amplitudes(), &mut out);
    let shift_time = t0.elapsed();
    let moved = out[12346] == c(1.0);

    let t0 = Instant::now();
    let cfg = WalkConfig::from_position(16, 128, 45.0, 1 << 15).unwrap();
    let d = run_walk(&cfg).unwrap();
    let walk_time = t0.elapsed();
    all(vec![
        check(moved, ""),
        check(
            shift_time < Duration::from_millis(100),
            format!("20-qubit shift {shift_time:.2?} < 100ms"),
        ),
        check(
            walk_time < Duration::from_secs(60) && (d.total() - 1.0).abs() < 1e-10,
            format!("w=16 128-step walk {walk_time:.2?} < 60s"),
        ),
    ])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1 basis-state scenario", c1_basis_scenario),
        ("C2 superposition scenario", c2_superposition_scenario),
        ("C3 LCU vs oracle, w=1..4", c3_oracle_equivalence),
        ("C4 decomposition identities", c4_decomposition),
        ("C5 probability split", c5_probability_split),
        ("C6 walk from 128, odd mass", c6_fig7_walk),
        ("C7 superposed walk", c7_fig8_walk),
        ("C8 walk vs dense oracle", c8_walk_oracle),
        ("C9 tomography round trip", c9_tomography),
        ("C10 performance", c10_performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = run();
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        failed += usize::from(!outcome.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
