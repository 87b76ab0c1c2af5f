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

//! Density matrices, pseudo-pure states and ideal Pauli tomography.

use std::fmt;

use log::warn;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::{StateVector, NORM_TOL};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated before a matrix counts as not positive semidefinite.
pub const PSD_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_square(m: &DMatrix<Complex64>) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::InvalidDensityMatrix(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn hermitian_defect(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).camax()
}

fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    // symmetric_eigenvalues reads the lower triangle only; symmetrize first
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        check_square(&m)?;
        let herm = hermitian_defect(&m);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = m.trace();
        if (tr - ONE).norm() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")));
        }
        let lowest = min_eigenvalue(&m);
        if lowest < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { m })
    }

    /// `|s><s|`.
    pub fn from_pure(s: &StateVector) -> Result<Self> {
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm, tol: NORM_TOL });
        }
        let a = s.amplitudes();
        Ok(Self {
            m: DMatrix::from_fn(a.len(), a.len(), |r, c| a[r] * a[c].conj()),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        trace_of_product(&self.m, &self.m).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.m.symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// A traceless Hermitian matrix: a density matrix with its maximally mixed part removed.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationMatrix {
    m: DMatrix<Complex64>,
}

impl DeviationMatrix {
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }
}

/// `Tr(a b)` without forming the product.
pub fn trace_of_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// `|Tr(a b)| / sqrt(Tr(a^2) Tr(b^2))` on arbitrary square matrices.
pub fn normalized_overlap(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?} matrices",
            a.shape(),
            b.shape()
        )));
    }
    let pa = trace_of_product(a, a).re;
    let pb = trace_of_product(b, b).re;
    if pa <= 0.0 || pb <= 0.0 {
        return Err(Error::ZeroPurity);
    }
    Ok(trace_of_product(a, b).norm() / (pa * pb).sqrt())
}

/// Normalized-overlap fidelity `|Tr(rho sigma)| / sqrt(Tr(rho^2) Tr(sigma^2))`.
///
/// This equals `|<psi|phi>|^2` on pure states but is not the Uhlmann fidelity
/// on mixed states.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    normalized_overlap(&rho.m, &sigma.m)
}

/// The same functional evaluated on deviation matrices.
pub fn deviation_fidelity(a: &DeviationMatrix, b: &DeviationMatrix) -> Result<f64> {
    normalized_overlap(&a.m, &b.m)
}

/// `(1 - eps) I / 2^n + eps |0..0><0..0|`.
pub fn pps(num_qubits: usize, epsilon: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::PolarizationOutOfRange(epsilon));
    }
    let dim = 1usize << num_qubits;
    let mixed = (1.0 - epsilon) / dim as f64;
    let mut m = DMatrix::from_diagonal_element(dim, dim, Complex64::new(mixed, 0.0));
    m[(0, 0)] += Complex64::new(epsilon, 0.0);
    Ok(DensityMatrix { m })
}

/// `rho - Tr(rho)/dim * I`.
pub fn deviation(rho: &DensityMatrix) -> DeviationMatrix {
    deviation_of(&rho.m)
}

pub fn deviation_of(m: &DMatrix<Complex64>) -> DeviationMatrix {
    let dim = m.nrows();
    let shift = m.trace() / dim as f64;
    let mut out = m.clone();
    for i in 0..dim {
        out[(i, i)] -= shift;
    }
    DeviationMatrix { m: out }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Entry `<b ^ flip| P |b>` for input bit `b`.
    fn column_entry(self, bit: usize) -> Complex64 {
        match (self, bit) {
            (Pauli::I, _) | (Pauli::X, _) | (Pauli::Z, 0) => ONE,
            (Pauli::Z, _) => -ONE,
            (Pauli::Y, 0) => Complex64::new(0.0, 1.0),
            (Pauli::Y, _) => Complex64::new(0.0, -1.0),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Pauli string number `index`, qubit 0 leftmost, lexicographic in `I < X < Y < Z`.
pub fn pauli_string(num_qubits: usize, index: usize) -> Vec<Pauli> {
    (0..num_qubits)
        .map(|q| Pauli::ALL[(index >> (2 * (num_qubits - 1 - q))) & 3])
        .collect()
}

pub fn pauli_label(num_qubits: usize, index: usize) -> String {
    pauli_string(num_qubits, index).into_iter().map(Pauli::letter).collect()
}

/// Sparse form of a Pauli string: column `j` has its single entry
/// `phase(j)` at row `j ^ flip_mask`.
struct SparsePauli {
    flip_mask: usize,
    ops: Vec<Pauli>,
}

impl SparsePauli {
    fn new(num_qubits: usize, index: usize) -> Self {
        let ops = pauli_string(num_qubits, index);
        let flip_mask = ops
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0, |m, (q, _)| m | 1 << (num_qubits - 1 - q));
        Self { flip_mask, ops }
    }

    fn phase(&self, column: usize) -> Complex64 {
        let n = self.ops.len();
        self.ops
            .iter()
            .enumerate()
            .map(|(q, p)| p.column_entry((column >> (n - 1 - q)) & 1))
            .product()
    }
}

/// `Tr(rho P)` for all `4^k` Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliExpectations {
    num_qubits: usize,
    values: Vec<f64>,
}

impl PauliExpectations {
    pub fn new(num_qubits: usize, values: Vec<f64>) -> Result<Self> {
        let expected = 1usize << (2 * num_qubits);
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: values.len(),
            });
        }
        if (values[0] - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "identity expectation {} is not 1",
                values[0]
            )));
        }
        Ok(Self { num_qubits, values })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Look up by label such as `"XZ"`.
    pub fn get(&self, label: &str) -> Option<f64> {
        if label.len() != self.num_qubits {
            return None;
        }
        let mut index = 0;
        for ch in label.chars() {
            let p = match ch {
                'I' => 0,
                'X' => 1,
                'Y' => 2,
                'Z' => 3,
                _ => return None,
            };
            index = index * 4 + p;
        }
        Some(self.values[index])
    }
}

impl fmt::Display for PauliExpectations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            writeln!(f, "{} {:+.12}", pauli_label(self.num_qubits, i), v)?;
        }
        Ok(())
    }
}

fn qubits_of(dim: usize) -> Result<usize> {
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Ideal tomography readout.
pub fn pauli_expectations(rho: &DensityMatrix) -> Result<PauliExpectations> {
    let k = qubits_of(rho.dim())?;
    let dim = rho.dim();
    let mut values = Vec::with_capacity(1 << (2 * k));
    for index in 0..1usize << (2 * k) {
        let p = SparsePauli::new(k, index);
        let v: Complex64 = (0..dim)
            .map(|j| rho.m[(j, j ^ p.flip_mask)] * p.phase(j))
            .sum();
        debug_assert!(v.im.abs() < HERMITIAN_TOL);
        values.push(v.re);
    }
    Ok(PauliExpectations { num_qubits: k, values })
}

/// Linear inversion `rho = sum_P <P> P / 2^k`. An unphysical (non-PSD)
/// result is logged and returned anyway.
pub fn reconstruct(e: &PauliExpectations) -> DensityMatrix {
    let k = e.num_qubits;
    let dim = 1usize << k;
    let scale = 1.0 / dim as f64;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for (index, &v) in e.values.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let p = SparsePauli::new(k, index);
        for j in 0..dim {
            m[(j ^ p.flip_mask, j)] += p.phase(j) * (v * scale);
        }
    }
    let lowest = min_eigenvalue(&m);
    if lowest < -PSD_TOL {
        warn!("reconstructed density matrix is not positive semidefinite (eigenvalue {lowest:e})");
    }
    DensityMatrix { m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn pure(n: usize, amps: &[f64]) -> DensityMatrix {
        DensityMatrix::from_pure(&StateVector::from_real(n, amps).unwrap()).unwrap()
    }

    fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
        let a = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let m = &a * a.adjoint();
        let tr = m.trace();
        DensityMatrix::new(m / tr).unwrap()
    }

    #[test]
    fn pure_projectors() {
        assert_eq!(pure(1, &[1.0, 0.0]).matrix(), &DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]));
        let plus = pure(1, &[S, S]);
        assert!(plus.matrix().iter().all(|v| (v - c(0.5)).norm() < 1e-15));
        let p = pure(2, &[0.0, 1.0, 0.0, 0.0]);
        for ((r, k), v) in (0..4).flat_map(|r| (0..4).map(move |k| (r, k))).zip(p.matrix().transpose().iter()) {
            assert_eq!(*v, if (r, k) == (1, 1) { ONE } else { ZERO });
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let not_unit = DMatrix::from_diagonal_element(2, 2, c(1.0));
        assert!(DensityMatrix::new(not_unit).is_err());
        let not_psd = DMatrix::from_row_slice(2, 2, &[c(1.5), ZERO, ZERO, c(-0.5)]);
        assert!(DensityMatrix::new(not_psd).is_err());
        let not_herm = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.1), ZERO, c(0.5)]);
        assert!(DensityMatrix::new(not_herm).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let rho = pure(2, &[0.0, S, S, 0.0]);
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-15);
        let a = pure(2, &[1.0, 0.0, 0.0, 0.0]);
        let b = pure(2, &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        // <psi|phi> = 1/sqrt2  =>  |<psi|phi>|^2 = 1/2
        let phi = pure(2, &[S, S, 0.0, 0.0]);
        assert!((fidelity(&a, &phi).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_purity_is_rejected() {
        let dev = deviation(&pps(2, 0.0).unwrap());
        assert_eq!(deviation_fidelity(&dev, &dev), Err(Error::ZeroPurity));
        let a = pure(1, &[1.0, 0.0]);
        assert!(matches!(fidelity(&a, &pure(2, &[1.0, 0.0, 0.0, 0.0])), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pps_cases() {
        assert_eq!(pps(4, 1.0).unwrap(), pure(4, &{
            let mut v = [0.0; 16];
            v[0] = 1.0;
            v
        }));
        let mixed = pps(4, 0.0).unwrap();
        assert_eq!(mixed.matrix(), &DMatrix::from_diagonal_element(16, 16, c(1.0 / 16.0)));
        let eps = 1e-5;
        let p = pps(4, eps).unwrap();
        assert!((p.matrix()[(0, 0)].re - ((1.0 - eps) / 16.0 + eps)).abs() < 1e-18);
        assert!((p.matrix()[(5, 5)].re - (1.0 - eps) / 16.0).abs() < 1e-18);
        assert!((p.matrix().trace() - ONE).norm() < 1e-15);
        assert!(matches!(pps(4, 1.5), Err(Error::PolarizationOutOfRange(_))));
        assert!(pps(4, -0.1).is_err());
    }

    #[test]
    fn pps_spectrum() {
        for eps in [0.0, 1e-5, 0.3, 1.0] {
            let ev = pps(4, eps).unwrap().eigenvalues();
            let low = (1.0 - eps) / 16.0;
            assert!((ev[15] - (low + eps)).abs() < 1e-12);
            assert!(ev[..15].iter().all(|e| (e - low).abs() < 1e-12));
        }
    }

    #[test]
    fn deviation_cases() {
        let d = deviation(&pps(3, 0.0).unwrap());
        assert!(d.matrix().camax() < 1e-16);

        let eps = 0.25;
        let d = deviation(&pps(4, eps).unwrap());
        let mut expect = DMatrix::from_diagonal_element(16, 16, c(-eps / 16.0));
        expect[(0, 0)] += c(eps);
        assert!((d.matrix() - expect).camax() < 1e-15);
        assert!(d.matrix().trace().norm() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_density(&mut rng, 4);
        let d = deviation(&rho);
        let shifted = d.matrix() + DMatrix::from_diagonal_element(4, 4, c(0.25));
        assert!((deviation_of(&shifted).matrix() - d.matrix()).camax() < 1e-15);
    }

    #[test]
    fn deviation_fidelity_of_pps_is_that_of_the_pure_target() {
        // the deviation of a PPS is proportional to the deviation of |0..0><0..0|
        let a = deviation(&pps(4, 1e-5).unwrap());
        let b = deviation(&pps(4, 1.0).unwrap());
        assert!((deviation_fidelity(&a, &b).unwrap() - 1.0).abs() < 1e-10);
        assert!(fidelity(&pps(4, 1e-5).unwrap(), &pps(4, 1.0).unwrap()).unwrap() < 0.26);
    }

    #[test]
    fn pauli_readout() {
        let zero = pure(1, &[1.0, 0.0]);
        let e = pauli_expectations(&zero).unwrap();
        assert_eq!(e.values(), &[1.0, 0.0, 0.0, 1.0]);
        let plus = pauli_expectations(&pure(1, &[S, S])).unwrap();
        assert!((plus.get("X").unwrap() - 1.0).abs() < 1e-15);
        assert!(plus.get("Z").unwrap().abs() < 1e-15);
        let yplus = DensityMatrix::from_pure(
            &StateVector::from_amplitudes(1, vec![c(S), Complex64::new(0.0, S)]).unwrap(),
        )
        .unwrap();
        assert!((pauli_expectations(&yplus).unwrap().get("Y").unwrap() - 1.0).abs() < 1e-15);

        let mixed = pauli_expectations(&pps(3, 0.0).unwrap()).unwrap();
        assert_eq!(mixed.values()[0], 1.0);
        assert!(mixed.values()[1..].iter().all(|v| v.abs() < 1e-15));
        assert_eq!(pauli_label(2, 7), "XZ");
        assert_eq!(mixed.get("IIQ"), None);

        let odd = DensityMatrix::new(DMatrix::from_diagonal_element(3, 3, c(1.0 / 3.0))).unwrap();
        assert_eq!(pauli_expectations(&odd), Err(Error::NotPowerOfTwo(3)));
    }

    #[test]
    fn reconstruct_cases() {
        let mut values = vec![0.0; 16];
        values[0] = 1.0;
        let r = reconstruct(&PauliExpectations::new(2, values).unwrap());
        assert!((r.matrix() - DMatrix::from_diagonal_element(4, 4, c(0.25))).camax() < 1e-15);

        let proj = pure(2, &[0.0, 1.0, 0.0, 0.0]);
        let back = reconstruct(&pauli_expectations(&proj).unwrap());
        assert!((back.matrix() - proj.matrix()).camax() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=3 {
            let rho = random_density(&mut rng, 1 << k);
            let back = reconstruct(&pauli_expectations(&rho).unwrap());
            assert!((back.matrix() - rho.matrix()).camax() < 1e-10);
        }

        assert!(PauliExpectations::new(1, vec![1.0; 3]).is_err());
        assert!(PauliExpectations::new(1, vec![0.5, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn unphysical_reconstruction_is_returned() {
        // <Z> = 2 is outside the Bloch ball
        let e = PauliExpectations::new(1, vec![1.0, 0.0, 0.0, 2.0]).unwrap();
        let r = reconstruct(&e);
        assert!((r.matrix()[(1, 1)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_symmetry_and_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_density(&mut rng, 4);
            let b = random_density(&mut rng, 4);
            assert!((fidelity(&a, &b).unwrap() - fidelity(&b, &a).unwrap()).abs() < 1e-12);
            let amps: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let s = StateVector::from_amplitudes(2, amps.into_iter().map(|a| a / n).collect()).unwrap();
            let f = fidelity(
                &DensityMatrix::from_pure(&s).unwrap(),
                &DensityMatrix::from_pure(&s.with_global_phase(rng.gen_range(0.0..6.3))).unwrap(),
            )
            .unwrap();
            assert!((f - 1.0).abs() < 1e-12);
        }
    }
}
