//! Dense real and complex matrices.
//!
//! Row-major `Vec` storage, no external linear-algebra dependency. The sizes
//! here are desk scale (≤ 4096), so plain triple loops and explicit
//! Kronecker products are fine.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a * other.get(k, l),
                        );
                    }
                }
            }
        }
        out
    }
}

/// Dense symmetric real matrix; both triangles stored, set through
/// [`SymmetricMatrix::set_sym`] so asymmetry is unrepresentable.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Validates entry-wise symmetry of a general matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        let dim = m.rows();
        for i in 0..dim {
            for j in (i + 1)..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidArgument(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { dim, data: m.data().to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both (i,j) and (j,i).
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        m.data.copy_from_slice(&self.data);
        m
    }

    pub fn add(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        SymmetricMatrix { dim: self.dim, data }
    }

    pub fn sub(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        SymmetricMatrix { dim: self.dim, data }
    }

    pub fn scale(&self, s: f64) -> SymmetricMatrix {
        SymmetricMatrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// `self ⊗ other`, symmetric again.
    pub fn kron(&self, other: &SymmetricMatrix) -> SymmetricMatrix {
        let m = self.to_matrix().kron(&other.to_matrix());
        SymmetricMatrix { dim: m.rows(), data: m.data().to_vec() }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
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

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.norm()))
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a * other.get(k, l),
                        );
                    }
                }
            }
        }
        out
    }

    /// `max |(U†U − I)_{ij}|`; zero for a unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        self.adjoint()
            .matmul(self)
            .sub(&ComplexMatrix::identity(self.rows))
            .max_abs()
    }
}

/// Largest singular value of `m`, via power iteration on `m†m`.
///
/// Deterministic: the start vector comes from a fixed SplitMix64 stream.
/// Accurate to a relative ~1e-10, which is plenty for tolerance checks; when
/// the top singular values are nearly degenerate the estimate still converges
/// in value (just not in vector).
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    let n = m.cols();
    if n == 0 || m.rows() == 0 {
        return 0.0;
    }
    let mut rng = crate::rng::SplitMix64::new(0x9E37_79B9_0000_0001);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    normalize(&mut v);
    let mh = m.adjoint();
    let mut lambda = 0.0f64;
    for _ in 0..400 {
        let w = mh.mul_vec(&m.mul_vec(&v));
        let nw = norm(&w);
        if nw < 1e-300 {
            return 0.0;
        }
        let next = nw; // ‖M†M v‖ for unit v converges to λ_max
        v = w;
        normalize(&mut v);
        if (next - lambda).abs() <= 1e-11 * next.max(1e-300) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let i = Matrix::identity(2);
        assert_eq!(a.matmul(&i), a);
    }

    #[test]
    fn kron_dimensions_and_values() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let i = Matrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 2), 1.0);
        assert_eq!(k.get(1, 3), 1.0);
        assert_eq!(k.get(0, 3), 0.0);
    }

    #[test]
    fn symmetric_rejects_asymmetry() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(SymmetricMatrix::from_matrix(&m).is_err());
    }

    #[test]
    fn operator_norm_closed_forms() {
        // I vs X on one qubit: ‖I − X‖ = 2.
        let mut x = ComplexMatrix::zeros(2, 2);
        x.set(0, 1, Complex64::new(1.0, 0.0));
        x.set(1, 0, Complex64::new(1.0, 0.0));
        let d = ComplexMatrix::identity(2).sub(&x);
        assert!((operator_norm(&d) - 2.0).abs() < 1e-9);

        // U vs e^{iθ}U: ‖(1−e^{iθ})U‖ = 2|sin(θ/2)|.
        let theta = 0.7f64;
        let u = ComplexMatrix::identity(3);
        let d = u.sub(&u.scale(Complex64::from_polar(1.0, theta)));
        assert!((operator_norm(&d) - 2.0 * (theta / 2.0).sin().abs()) < 1e-9);

        // Zero matrix.
        assert_eq!(operator_norm(&ComplexMatrix::zeros(3, 3)), 0.0);
    }
}
