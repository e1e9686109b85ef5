//! Dense complex matrices sized for the desk-scale problems in this crate
//! (dimensions up to a few thousand), plus the Hermitian null-space routine
//! shared by the invariant solver and the projection oracle.

use faer::{c64, linalg::solvers::SelfAdjointEigen, Mat, Side};
use num_complex::Complex64;

use crate::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
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
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Complex64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Complex64]) {
        debug_assert_eq!(v.len(), self.rows);
        for (r, &x) in v.iter().enumerate() {
            self.set(r, c, x);
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// self · other, naive triple loop in i-k-j order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Kronecker product; `self` indexes the major (leftmost) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self.get(ar, ac);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for br in 0..other.rows {
                    for bc in 0..other.cols {
                        out.set(
                            ar * other.rows + br,
                            ac * other.cols + bc,
                            a * other.get(br, bc),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.sub(other).frobenius_norm()
    }

    /// ‖self − I‖_F without forming the difference.
    pub fn distance_from_identity(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let mut x = self.get(r, c);
                if r == c {
                    x -= Complex64::new(1.0, 0.0);
                }
                acc += x.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Spectral bookkeeping for a thresholded Hermitian null space.
#[derive(Clone, Copy, Debug)]
pub struct NullspaceGap {
    /// Largest eigenvalue that was still classified as null.
    pub max_retained: Option<f64>,
    /// Smallest eigenvalue that was rejected.
    pub min_rejected: Option<f64>,
}

/// Orthonormal null-space basis of a Hermitian PSD matrix.
pub struct Nullspace {
    /// n×k matrix whose columns span the eigenvalue-below-threshold space.
    pub basis: CMatrix,
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub gap: NullspaceGap,
}

/// Eigendecomposition-based null space: eigenvectors whose eigenvalue is at
/// most `threshold`. The input must be Hermitian; only the lower triangle is
/// read.
pub fn hermitian_nullspace(g: &CMatrix, threshold: f64) -> Result<Nullspace> {
    assert_eq!(g.rows(), g.cols());
    let n = g.rows();
    let mat: Mat<c64> = Mat::from_fn(n, n, |r, c| g.get(r, c));
    let eigen = SelfAdjointEigen::new(mat.as_ref(), Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    // Eigenvalues come back sorted in nondecreasing order.
    let eigenvalues: Vec<f64> = (0..n).map(|i| eigen.S().column_vector()[i].re).collect();
    let retained = eigenvalues
        .iter()
        .take_while(|&&ev| ev <= threshold)
        .count();
    let u = eigen.U();
    let mut basis = CMatrix::zeros(n, retained);
    for k in 0..retained {
        for r in 0..n {
            basis.set(r, k, u[(r, k)]);
        }
    }
    canonicalize_column_phases(&mut basis);
    Ok(Nullspace {
        basis,
        gap: NullspaceGap {
            max_retained: retained.checked_sub(1).map(|i| eigenvalues[i]),
            min_rejected: eigenvalues.get(retained).copied(),
        },
        eigenvalues,
    })
}

/// Rotate each column so its largest-modulus entry is real positive. Purely
/// presentational: spans and orthonormality are unchanged, output becomes
/// reproducible up to eigensolver determinism.
fn canonicalize_column_phases(m: &mut CMatrix) {
    for c in 0..m.cols() {
        let mut best = 0usize;
        let mut best_norm = 0.0f64;
        for r in 0..m.rows() {
            let nn = m.get(r, c).norm_sqr();
            if nn > best_norm + 1e-24 {
                best_norm = nn;
                best = r;
            }
        }
        let pivot = m.get(best, c);
        if best_norm > 0.0 {
            let phase = pivot / pivot.norm();
            for r in 0..m.rows() {
                let v = m.get(r, c) * phase.conj();
                m.set(r, c, v);
            }
        }
    }
}

/// Upper bound (in radians) on the largest principal angle between the spans
/// of two matrices with orthonormal columns.
///
/// Uses the sine-based residual ‖B − A(AᴴB)‖_F, which stays accurate for
/// angles near zero where the cosine route loses all precision; the bound is
/// evaluated in both directions so equal dimensions imply equal spans.
pub fn principal_angle_bound(a: &CMatrix, b: &CMatrix) -> f64 {
    let one_way = |x: &CMatrix, y: &CMatrix| -> f64 {
        let coeff = x.adjoint().mul(y);
        let proj = x.mul(&coeff);
        y.frobenius_distance(&proj)
    };
    let s = one_way(a, b).max(one_way(b, a)).min(1.0);
    s.asin()
}
