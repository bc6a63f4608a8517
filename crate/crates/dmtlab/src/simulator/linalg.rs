//! Minimal dense complex linear algebra for the simulator.
//!
//! The channel matrices here are at most a handful of rows and columns, so
//! a dependency-free row-major matrix and a cyclic Jacobi eigensolver are
//! entirely adequate and keep every operation easy to audit.

use num_complex::Complex64;
use thiserror::Error;

/// Relative off-diagonal Frobenius mass at which the Jacobi sweep stops.
const JACOBI_TOL: f64 = 1e-12;

/// Relative Hermiticity defect accepted by the eigensolver.
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds tolerance)")]
    NotHermitian { defect: f64 },
    #[error("dimension mismatch: {lhs_rows}×{lhs_cols} · {rhs_rows}×{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("Jacobi iteration failed to converge")]
    NoConvergence,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `A · A†` — the rows×rows Gram matrix (Hermitian PSD).
    pub fn times_adjoint(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * self.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `A† · A` — the cols×cols Gram matrix (Hermitian PSD).
    pub fn adjoint_times(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.rows {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − A†‖_F`, zero for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols
            && self.hermiticity_defect() <= HERMITIAN_TOL * self.frobenius_norm().max(1.0)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self.get(i, j).norm_sqr();
                }
            }
        }
        acc.sqrt()
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    hermitian_eigendecomposition(a).map(|(vals, _)| vals)
}

/// Full eigendecomposition `A = V Λ V†` of a Hermitian matrix by cyclic
/// Jacobi rotations: eigenvalues descending, eigenvectors as the matching
/// columns of the returned unitary matrix.
pub fn hermitian_eigendecomposition(
    a: &ComplexMatrix,
) -> Result<(Vec<f64>, ComplexMatrix), LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let norm = a.frobenius_norm();
    let defect = a.hermiticity_defect();
    if defect > HERMITIAN_TOL * norm.max(1.0) {
        return Err(LinalgError::NotHermitian { defect });
    }

    let mut m = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_TOL * norm;

    let mut converged = norm == 0.0 || n == 1;
    for _ in 0..100 {
        if converged || m.off_diagonal_norm() <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m.get(p, q);
                let babs = b.norm();
                if babs <= tol / (n * n) as f64 {
                    continue;
                }
                // Phase-factor the pivot so the rotation angle solves the
                // real symmetric 2×2 problem.
                let delta = m.get(q, q).re - m.get(p, p).re;
                let tau = delta / (2.0 * babs);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = (b / babs) * (t * c);

                // Column update: M ← M·J with J_pp = c, J_pq = s,
                // J_qp = −s̄, J_qq = c (identity elsewhere).
                for i in 0..n {
                    let mip = m.get(i, p);
                    let miq = m.get(i, q);
                    m.set(i, p, mip * c - miq * s.conj());
                    m.set(i, q, mip * s + miq * c);
                }
                // Row update: M ← J†·M.
                for j in 0..n {
                    let mpj = m.get(p, j);
                    let mqj = m.get(q, j);
                    m.set(p, j, mpj * c - mqj * s);
                    m.set(q, j, mpj * s.conj() + mqj * c);
                }
                // Accumulate eigenvectors: V ← V·J.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c - viq * s.conj());
                    v.set(i, q, vip * s + viq * c);
                }
            }
        }
    }
    if !converged && m.off_diagonal_norm() > tol {
        return Err(LinalgError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    #[test]
    fn identity_and_diagonal_eigenvalues() {
        let eye = ComplexMatrix::identity(2);
        assert_eq!(hermitian_eigenvalues(&eye).unwrap(), vec![1.0, 1.0]);

        let mut d = ComplexMatrix::zeros(2, 2);
        d.set(0, 0, Complex64::new(1.0, 0.0));
        d.set(1, 1, Complex64::new(3.0, 0.0));
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![3.0, 1.0]);
    }

    #[test]
    fn known_two_by_two() {
        // [[2, i], [−i, 2]] has eigenvalues 3 and 1.
        let mut a = ComplexMatrix::zeros(2, 2);
        a.set(0, 0, Complex64::new(2.0, 0.0));
        a.set(0, 1, Complex64::new(0.0, 1.0));
        a.set(1, 0, Complex64::new(0.0, -1.0));
        a.set(1, 1, Complex64::new(2.0, 0.0));
        let vals = hermitian_eigenvalues(&a).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_of_tall_matrix_is_rank_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_matrix(&mut rng, 3, 2);
        let gram = g.times_adjoint(); // 3×3 of rank ≤ 2
        let vals = hermitian_eigenvalues(&gram).unwrap();
        assert_eq!(vals.len(), 3);
        assert!(vals[0] > 0.0 && vals[1] > 0.0);
        assert!(vals[2].abs() <= 1e-10 * gram.frobenius_norm().max(1.0));
    }

    #[test]
    fn reconstruction_residual_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=6usize {
            let g = random_matrix(&mut rng, n, n);
            let a = g.times_adjoint();
            let (vals, v) = hermitian_eigendecomposition(&a).unwrap();
            let mut lambda = ComplexMatrix::zeros(n, n);
            for (i, &l) in vals.iter().enumerate() {
                lambda.set(i, i, Complex64::new(l, 0.0));
            }
            let rebuilt = v.mul(&lambda).unwrap().mul(&v.adjoint()).unwrap();
            let mut diff = 0.0;
            for i in 0..n {
                for j in 0..n {
                    diff += (rebuilt.get(i, j) - a.get(i, j)).norm_sqr();
                }
            }
            assert!(
                diff.sqrt() <= 1e-8 * a.frobenius_norm(),
                "n={n}: residual {}",
                diff.sqrt()
            );
            // Eigenvalues descending.
            assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let mut a = ComplexMatrix::zeros(2, 2);
        a.set(0, 1, Complex64::new(1.0, 0.0));
        a.set(1, 0, Complex64::new(0.5, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&a),
            Err(LinalgError::NotHermitian { .. })
        ));
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigenvalues(&b),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn trace_and_determinant_are_preserved() {
        // Eigenvalue sum/product must match trace/det for PSD matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let g = random_matrix(&mut rng, 3, 3);
            let a = g.times_adjoint();
            let vals = hermitian_eigenvalues(&a).unwrap();
            let trace: f64 = (0..3).map(|i| a.get(i, i).re).sum();
            assert!((vals.iter().sum::<f64>() - trace).abs() <= 1e-9 * trace.abs().max(1.0));
        }
    }

    #[test]
    fn matrix_algebra_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_matrix(&mut rng, 2, 3);
        let b = a.adjoint();
        assert_eq!(b.rows(), 3);
        assert_eq!(b.cols(), 2);
        assert_eq!(a.get(0, 2).conj(), b.get(2, 0));

        let aat = a.times_adjoint();
        let ata = a.adjoint_times();
        assert_eq!(aat.rows(), 2);
        assert_eq!(ata.rows(), 3);
        assert!(aat.is_hermitian() && ata.is_hermitian());

        let via_mul = a.mul(&a.adjoint()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((via_mul.get(i, j) - aat.get(i, j)).norm() < 1e-12);
            }
        }

        let sum = a.add(&a).unwrap();
        assert!((sum.get(1, 1) - a.get(1, 1) * 2.0).norm() < 1e-15);
        let scaled = a.scale(2.0);
        assert!((scaled.get(1, 1) - sum.get(1, 1)).norm() < 1e-15);
        assert!(a.mul(&a).is_err());
    }
}
