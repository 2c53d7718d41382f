use std::fmt;
use std::ops::{Index, IndexMut};

use super::number::{CycNum, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix over Q(ω).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> CycMatrix {
        CycMatrix { rows, cols, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(dim: usize) -> CycMatrix {
        let mut m = CycMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = CycNum::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> CycMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<CycMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::ShapeMismatch { left: (r, c), right: (1, bad.len()) });
        }
        Ok(CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<CycNum>) -> CycMatrix {
        let n = entries.len();
        let mut m = CycMatrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// The outer product `u v†`.
    pub fn outer(u: &[CycNum], v: &[CycNum]) -> CycMatrix {
        let vc: Vec<CycNum> = v.iter().map(CycNum::conj).collect();
        CycMatrix::from_fn(u.len(), v.len(), |i, j| &u[i] * &vc[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn check_same_shape(&self, other: &CycMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(CycMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect();
        Ok(CycMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add_assign(&mut self, other: &CycMatrix) -> Result<()> {
        self.check_same_shape(other)?;
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        Ok(())
    }

    pub fn scale(&self, s: &CycNum) -> CycMatrix {
        let data = self.data.iter().map(|x| x * s).collect();
        CycMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_rational(&self, r: &Rational) -> CycMatrix {
        let data = self.data.iter().map(|x| x.scale(r)).collect();
        CycMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        let mut out = CycMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = &self[(i, k)];
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let rhs = &other[(k, j)];
                    if !rhs.is_zero() {
                        out.data[i * other.cols + j] += &(lhs * rhs);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch { left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero();
                for (x, y) in self.row(i).iter().zip(v) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += &(x * y);
                    }
                }
                acc
            })
            .collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Result<CycNum> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch { left: self.shape(), right: (self.cols, self.rows) });
        }
        let mut acc = CycNum::zero();
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        Ok(acc)
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_of_product(&self, other: &CycMatrix) -> Result<CycNum> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        let mut acc = CycNum::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                let y = &other[(k, i)];
                if !y.is_zero() {
                    acc += &(x * y);
                }
            }
        }
        Ok(acc)
    }

    /// `Tr(A† B) = Σ conj(A_ij) B_ij`, the Hilbert-Schmidt inner product.
    pub fn hs_inner(&self, other: &CycMatrix) -> Result<CycNum> {
        self.check_same_shape(other)?;
        let mut acc = CycNum::zero();
        for (x, y) in self.data.iter().zip(&other.data) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(&x.conj() * y);
            }
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &CycMatrix) -> CycMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        CycMatrix::from_fn(rows, cols, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                return CycNum::zero();
            }
            a * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// Hermitean and idempotent, checked exactly.
    pub fn is_projector(&self) -> bool {
        self.is_hermitian() && self.mul(self).map(|sq| &sq == self).unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    /// True when the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                if i == j {
                    self[(i, j)] == self[(0, 0)]
                } else {
                    self[(i, j)].is_zero()
                }
            })
        })
    }

    /// Reduced matrix over the qutrits in `keep` (0-based, qutrit 0 is the
    /// most significant digit of the row index).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<CycMatrix> {
        let n = qutrit_count(self)?;
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        if keep_sorted.is_empty()
            || keep_sorted.len() != keep.len()
            || keep_sorted.len() >= n
            || keep_sorted.iter().any(|&q| q >= n)
        {
            return Err(Error::InvalidQutritSet { indices: keep.to_vec(), n });
        }
        let traced: Vec<usize> = (0..n).filter(|q| !keep_sorted.contains(q)).collect();
        let kept_dim = 3usize.pow(keep_sorted.len() as u32);
        let traced_dim = 3usize.pow(traced.len() as u32);

        // Assemble a full index from kept and traced digit strings.
        let compose = |kept: usize, tr: usize| -> usize {
            let mut digits = vec![0usize; n];
            let mut k = kept;
            for &q in keep_sorted.iter().rev() {
                digits[q] = k % 3;
                k /= 3;
            }
            let mut t = tr;
            for &q in traced.iter().rev() {
                digits[q] = t % 3;
                t /= 3;
            }
            digits.iter().fold(0, |acc, d| acc * 3 + d)
        };

        let mut out = CycMatrix::zeros(kept_dim, kept_dim);
        for i in 0..kept_dim {
            for j in 0..kept_dim {
                let mut acc = CycNum::zero();
                for t in 0..traced_dim {
                    let x = &self[(compose(i, t), compose(j, t))];
                    if !x.is_zero() {
                        acc += x;
                    }
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }
}

/// Number of qutrits `N` for a square `3^N`-dimensional matrix.
pub fn qutrit_count(m: &CycMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch { left: m.shape(), right: (m.cols, m.rows) });
    }
    let mut dim = m.rows;
    let mut n = 0;
    while dim > 1 && dim % 3 == 0 {
        dim /= 3;
        n += 1;
    }
    if dim != 1 {
        return Err(Error::ShapeMismatch { left: m.shape(), right: (3usize.pow(n as u32), 3usize.pow(n as u32)) });
    }
    Ok(n)
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;
    fn index(&self, (i, j): (usize, usize)) -> &CycNum {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
