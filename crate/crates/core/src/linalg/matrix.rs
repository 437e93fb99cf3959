use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Read access shared by square and rectangular dense matrices.
pub trait DenseView {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// Row-major entries.
    fn data(&self) -> &[C64];
}

/// Dense `n × n` complex matrix, stored row-major. `n ≥ 2`, all entries finite.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

/// Dense rectangular complex matrix, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Binary operation selector for [`mat_arith`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatOp {
    Add,
    Mul,
    /// Scales the first operand; the second operand is only checked for shape.
    Scale(C64),
}

fn check_finite(data: &[C64]) -> Result<()> {
    match data
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(i) => Err(Error::input(format!(
            "non-finite matrix entry at position {i}"
        ))),
        None => Ok(()),
    }
}

impl CMatrix {
    /// Builds a matrix from `n²` row-major entries.
    pub fn from_row_major(n: usize, data: Vec<C64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!(
                "matrix dimension must be at least 2, got {n}"
            )));
        }
        if data.len() != n * n {
            return Err(Error::input(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(CMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input(
                "matrix rows must all have length equal to the row count",
            ));
        }
        Self::from_row_major(n, rows.concat())
    }

    /// Convenience constructor from real entries; panics on malformed input.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows).expect("valid real matrix literal")
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 2, "matrix dimension must be at least 2");
        CMatrix {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, C64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    /// Elementary matrix `E_{r,s}` (zero-based indices).
    pub fn elementary(n: usize, r: usize, s: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(r, s)] = C64::new(1.0, 0.0);
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Jordan block `J_n(λ)`: `λ` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(n: usize, lambda: C64) -> Self {
        let mut m = Self::scalar(n, lambda);
        for i in 0..n - 1 {
            m[(i, i + 1)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::input(
                "columns must all have length equal to the column count",
            ));
        }
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                data[i * n + j] = z;
            }
        }
        Self::from_row_major(n, data)
    }

    pub fn is_finite(&self) -> bool {
        check_finite(&self.data).is_ok()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: C64) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// `self + c·I`.
    pub fn shift(&self, c: C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += c;
        }
        out
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self * other)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::input(format!(
                "dimension mismatch: {}×{} vs {}×{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }

    /// Row-major vectorization, `vec(A)[r·n + s] = a_{r,s}`.
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }

    pub fn to_rect(&self) -> RectMatrix {
        RectMatrix {
            rows: self.n,
            cols: self.n,
            data: self.data.clone(),
        }
    }

    /// `max |a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Elementwise addition, matrix product or scaling of `a`.
pub fn mat_arith(a: &CMatrix, b: &CMatrix, op: MatOp) -> Result<CMatrix> {
    match op {
        MatOp::Add => a.checked_add(b),
        MatOp::Mul => a.checked_mul(b),
        MatOp::Scale(c) => {
            a.same_dim(b)?;
            Ok(a.scale(c))
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix addition");
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix subtraction");
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        CMatrix { n, data }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}×{}) [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.6e}{:+.6e}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl DenseView for CMatrix {
    fn rows(&self) -> usize {
        self.n
    }
    fn cols(&self) -> usize {
        self.n
    }
    fn data(&self) -> &[C64] {
        &self.data
    }
}

impl RectMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "expected {} entries for a {rows}×{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(RectMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Stacks the given vectors as the rows of a matrix.
    pub fn from_row_vectors(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("row vectors must share a common length"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for RectMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RectMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl DenseView for RectMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn data(&self) -> &[C64] {
        &self.data
    }
}

pub(crate) fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_is_neutral() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-3.0, 0.5)],
            vec![c(0.0, 1.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(&CMatrix::identity(2) * &a, a);
        assert_eq!(&a * &CMatrix::identity(2), a);
    }

    #[test]
    fn elementary_products() {
        let e12 = CMatrix::elementary(2, 0, 1);
        let e21 = CMatrix::elementary(2, 1, 0);
        assert_eq!(&e12 * &e21, CMatrix::elementary(2, 0, 0));
        assert_eq!(&e21 * &e12, CMatrix::elementary(2, 1, 1));
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(CMatrix::from_row_major(2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(CMatrix::from_row_major(1, vec![c(0.0, 0.0)]).is_err());
        assert!(CMatrix::from_row_major(2, vec![c(f64::NAN, 0.0); 4]).is_err());
        assert!(CMatrix::from_row_major(2, vec![c(0.0, f64::INFINITY); 4]).is_err());
        let a = CMatrix::identity(2);
        let b = CMatrix::identity(3);
        assert!(mat_arith(&a, &b, MatOp::Add).is_err());
        assert!(mat_arith(&a, &b, MatOp::Mul).is_err());
    }

    #[test]
    fn arith_dispatch() {
        let a = CMatrix::identity(3);
        let s = mat_arith(&a, &a, MatOp::Scale(c(0.0, 2.0))).unwrap();
        assert_eq!(s, CMatrix::scalar(3, c(0.0, 2.0)));
        assert_eq!(
            mat_arith(&a, &a, MatOp::Add).unwrap(),
            CMatrix::scalar(3, c(2.0, 0.0))
        );
    }
}
