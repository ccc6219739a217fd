//! Small dense linear algebra: complex square matrices for Fock-space
//! operators and fixed 5x5 real matrices for the de Sitter group.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{i phi}`.
pub fn phase(phi: f64) -> C64 {
    C64::new(libm::cos(phi), libm::sin(phi))
}

/// Hermitian inner product, antilinear in the first slot.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    libm::sqrt(a.iter().map(|x| x.norm_sqr()).sum())
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Multiply on the right by a diagonal matrix given by its entries.
    pub fn mul_diag_right(&self, d: &[C64]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * d[j])
    }

    /// Multiply on the left by a diagonal matrix given by its entries.
    pub fn mul_diag_left(&self, d: &[C64]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| d[i] * self[(i, j)])
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    /// `||self - other||` in operator norm.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).op_norm()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == ZERO)
    }

    /// Stack the entries into one long vector (row-major).
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi
/// rotations on the columns. Sweeps stop once every column pair is
/// orthogonal to relative precision 1e-15 or after 60 sweeps.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    // Work on the orientation with fewer columns.
    let a = if m.cols > m.rows { m.adjoint() } else { m.clone() };
    let (rows, cols) = (a.rows, a.cols);
    let mut columns: Vec<Vec<C64>> = (0..cols).map(|j| a.column(j)).collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = columns[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = columns[q].iter().map(|x| x.norm_sqr()).sum();
                let gamma = inner(&columns[p], &columns[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                // Rotate so that <c_p, c_q> vanishes; the phase of gamma is
                // absorbed into column q.
                let e = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..rows {
                    let xp = columns[p][i];
                    let xq = columns[q][i] * e.conj();
                    columns[p][i] = xp * c - xq * s;
                    columns[q][i] = (xp * s + xq * c) * e;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = columns.iter().map(|c| norm(c)).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    sv
}

/// Numerical rank of the span of `vectors`: the number of singular values
/// above `rel_tol` times the largest one.
pub fn span_rank(vectors: &[Vec<C64>], rel_tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let len = vectors[0].len();
    let m = CMatrix::from_fn(len, vectors.len(), |i, j| vectors[j][i]);
    let sv = singular_values(&m);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * top).count()
}

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt with
/// re-orthogonalisation; directions with residual norm below `tol` are dropped.
pub fn orthonormal_basis(vectors: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = norm(&w);
        if n > tol {
            basis.push(w.iter().map(|x| x / n).collect());
        }
    }
    basis
}

/// Distance of `v` from the span of an orthonormal basis.
pub fn distance_to_span(basis: &[Vec<C64>], v: &[C64]) -> f64 {
    let mut w = v.to_vec();
    for b in basis {
        let c = inner(b, &w);
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= c * bi;
        }
    }
    norm(&w)
}

/// Real 5x5 matrix acting on ambient R^5.
pub type Mat5 = [[f64; 5]; 5];

pub fn mat5_identity() -> Mat5 {
    let mut m = [[0.0; 5]; 5];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn mat5_diag(d: [f64; 5]) -> Mat5 {
    let mut m = [[0.0; 5]; 5];
    for i in 0..5 {
        m[i][i] = d[i];
    }
    m
}

pub fn mat5_mul(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat5_add(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = *a;
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn mat5_sub(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = *a;
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn mat5_scale(a: &Mat5, s: f64) -> Mat5 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn mat5_transpose(a: &Mat5) -> Mat5 {
    let mut out = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat5_apply(a: &Mat5, x: &[f64; 5]) -> [f64; 5] {
    let mut y = [0.0; 5];
    for i in 0..5 {
        y[i] = (0..5).map(|k| a[i][k] * x[k]).sum();
    }
    y
}

/// Largest absolute entry of `a - b`.
pub fn mat5_max_diff(a: &Mat5, b: &Mat5) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// Determinant by LU with partial pivoting.
pub fn mat5_det(a: &Mat5) -> f64 {
    let mut m = *a;
    let mut det = 1.0;
    for col in 0..5 {
        let pivot = (col..5)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..5 {
            let f = m[r][col] / m[col][col];
            for c in col..5 {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal_and_rank_one() {
        let d = CMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(0.0, -5.0), ONE]);
        let sv = singular_values(&d);
        assert!((sv[0] - 5.0).abs() < 1e-14);
        assert!((sv[1] - 3.0).abs() < 1e-14);
        assert!((sv[2] - 1.0).abs() < 1e-14);

        // u v^* has a single singular value |u||v|.
        let u = [C64::new(1.0, 1.0), C64::new(0.0, 2.0)];
        let v = [C64::new(2.0, 0.0), C64::new(1.0, -1.0), I];
        let m = CMatrix::from_fn(2, 3, |i, j| u[i] * v[j].conj());
        let sv = singular_values(&m);
        assert!((sv[0] - norm(&u) * norm(&v)).abs() < 1e-12);
        assert!(sv[1].abs() < 1e-12);
    }

    #[test]
    fn span_rank_detects_dependence() {
        let a = vec![ONE, ZERO, I];
        let b = vec![ZERO, ONE, ZERO];
        let c: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x * C64::new(2.0, 1.0) - y).collect();
        assert_eq!(span_rank(&[a.clone(), b.clone()], 1e-9), 2);
        assert_eq!(span_rank(&[a, b, c], 1e-9), 2);
    }

    #[test]
    fn det_of_permutation_and_scaling() {
        let mut p = mat5_identity();
        p.swap(0, 3);
        assert_eq!(mat5_det(&p), -1.0);
        assert!((mat5_det(&mat5_diag([2.0, 1.0, -1.0, 3.0, 0.5])) + 3.0).abs() < 1e-14);
    }
}
