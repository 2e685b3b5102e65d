//! Dense complex matrices sized for two-qubit work, plus the eigen machinery
//! everything else leans on: a cyclic Jacobi eigensolver for Hermitian
//! matrices, the positive-semidefinite square root, and partial traces.
//!
//! Matrices are stored row-major. State vectors are n x 1 matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Frobenius residual below which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues of a nominally PSD matrix in `[-PSD_CLAMP, 0)` are clamped to
/// zero by [`ComplexMatrix::sqrt_psd`]; anything lower is an error.
pub const PSD_CLAMP: f64 = 1e-10;

/// Eigenvalues at or below this are flushed to exact zero before a matrix
/// square root; see [`ComplexMatrix::sqrt_psd`].
pub(crate) const SQRT_ZERO_FLOOR: f64 = 1e-12;

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
const JACOBI_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps; well-conditioned 4x4 inputs need fewer than ten.
const MAX_SWEEPS: usize = 60;

/// Eigenvalues closer than this are ordered by their eigenvectors' dominant
/// component instead of by value, keeping degenerate output deterministic.
const DEGENERACY_TOL: f64 = 1e-9;

/// Which tensor factor survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::WrongShape {
                op: "ComplexMatrix::new",
                expected_rows: rows,
                expected_cols: cols,
                rows: data.len(),
                cols: 1,
            });
        }
        Ok(Self { rows, cols, data })
    }

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

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Column vector (n x 1) from a slice of amplitudes.
    pub fn column_vector(entries: &[Complex64]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` indexes the slow (first) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `self - self^dagger`; zero for Hermitian input.
    pub fn hermitian_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Frobenius norm of `self^dagger self - I`; zero for unitary input.
    pub fn unitary_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        match self.adjoint().matmul(self) {
            Ok(p) => p.sub(&Self::identity(self.rows)).map_or(f64::INFINITY, |d| d.frobenius_norm()),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    pub fn column(&self, j: usize) -> Self {
        let data = (0..self.rows).map(|i| self.get(i, j)).collect();
        Self {
            rows: self.rows,
            cols: 1,
            data,
        }
    }

    /// Inner product `<self|other>` for column vectors (conjugate-linear in self).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.cols != 1 || other.cols != 1 || self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "inner",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Outer product `|self><other|` for column vectors.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        if self.cols != 1 || other.cols != 1 {
            return Err(Error::DimensionMismatch {
                op: "outer",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: other.rows,
                rhs_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                out.set(i, j, self.data[i] * other.data[j].conj());
            }
        }
        Ok(out)
    }

    /// Trace out one qubit of a 4x4 two-qubit operator, keeping the other.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<Self> {
        if self.rows != 4 || self.cols != 4 {
            return Err(Error::WrongShape {
                op: "partial_trace",
                expected_rows: 4,
                expected_cols: 4,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Self::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += match keep {
                        Subsystem::A => self.get(2 * i + k, 2 * j + k),
                        Subsystem::B => self.get(2 * k + i, 2 * k + j),
                    };
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Eigenvalues come back in descending order; near-degenerate groups are
    /// ordered by the index of each eigenvector's largest-magnitude component,
    /// and every eigenvector is phased so that component is real positive.
    /// Both choices exist purely so repeated runs and golden files agree.
    pub fn eigh(&self) -> Result<EigenSystem> {
        if self.rows != self.cols {
            return Err(Error::WrongShape {
                op: "eigh",
                expected_rows: self.rows,
                expected_cols: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let res = self.hermitian_residual();
        if !(res <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian(res));
        }
        if !self.is_finite() {
            return Err(Error::NonFinite("eigh input"));
        }

        let n = self.rows;
        // Work on the exactly Hermitian average of the matrix and its adjoint.
        let mut a = self.add(&self.adjoint())?.scale(Complex64::new(0.5, 0.0));
        let mut v = Self::identity(n);

        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= JACOBI_TOL {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > JACOBI_TOL {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }

        let raw: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();

        // Descending eigenvalue order, then deterministic tie handling.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| raw[j].partial_cmp(&raw[i]).unwrap());
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && (raw[order[end - 1]] - raw[order[end]]).abs() <= DEGENERACY_TOL {
                end += 1;
            }
            order[start..end].sort_by_key(|&k| dominant_component(&v, k));
            start = end;
        }

        let mut eigenvalues = Vec::with_capacity(n);
        let mut eigenvectors = Self::zeros(n, n);
        for (out_col, &src_col) in order.iter().enumerate() {
            eigenvalues.push(raw[src_col]);
            let k = dominant_component(&v, src_col);
            let pivot = v.get(k, src_col);
            let phase = if pivot.norm() > 0.0 {
                pivot.conj() / pivot.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            for i in 0..n {
                eigenvectors.set(i, out_col, v.get(i, src_col) * phase);
            }
        }

        Ok(EigenSystem {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Square root of a positive-semidefinite Hermitian matrix.
    ///
    /// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as round-off zeros;
    /// anything below that window is rejected. Eigenvalues below
    /// `SQRT_ZERO_FLOOR` are flushed to zero before the root is taken: a true
    /// zero eigenvalue comes out of the solver as noise of order 1e-16, and
    /// `sqrt` would amplify that to 1e-8, which then enters traces of
    /// products with `sqrt(rho)` linearly. Flushing keeps the root of a
    /// rank-deficient matrix exactly rank-deficient.
    pub fn sqrt_psd(&self) -> Result<Self> {
        let eig = self.eigh()?;
        let min = eig
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -PSD_CLAMP {
            return Err(Error::NotPositive(min));
        }
        let root = eig.apply(|lambda| {
            let floored = if lambda <= SQRT_ZERO_FLOOR { 0.0 } else { lambda };
            Complex64::new(floored.sqrt(), 0.0)
        });
        // Symmetrize away the last bits of round-off.
        Ok(root.add(&root.adjoint())?.scale(Complex64::new(0.5, 0.0)))
    }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Eigenvalues (descending) with the matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// Assemble `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                let vi = self.eigenvectors.get(i, k);
                for j in 0..n {
                    let v = out.get(i, j) + w * vi * self.eigenvectors.get(j, k).conj();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `V diag(lambda) V^dagger`; equals the input matrix up to round-off.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|lambda| Complex64::new(lambda, 0.0))
    }

    pub fn span(&self) -> f64 {
        let max = self.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = self.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        max - min
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a.get(p, q).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Index of the largest-magnitude entry of column `col`; first wins on ties.
fn dominant_component(v: &ComplexMatrix, col: usize) -> usize {
    let mut best = 0;
    let mut best_mag = -1.0;
    for i in 0..v.rows() {
        let mag = v.get(i, col).norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    best
}

/// One two-sided rotation zeroing the (p, q) element of Hermitian `a`,
/// accumulated into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let abs = apq.norm();
    if abs <= f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / abs;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sp = s * phase; // s e^{i phi}
    let spc = s * phase.conj(); // s e^{-i phi}

    let n = a.rows();
    // Right multiplication by the rotation (columns p and q).
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, c * aip + spc * aiq);
        a.set(i, q, -sp * aip + c * aiq);
    }
    // Left multiplication by its adjoint (rows p and q).
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, c * apj + sp * aqj);
        a.set(q, j, -spc * apj + c * aqj);
    }
    // The pivot pair is now zero analytically; make it exact and keep the
    // diagonal real.
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p);
    let dq = a.get(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));

    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, c * vip + spc * viq);
        v.set(i, q, -sp * vip + c * viq);
    }
}
