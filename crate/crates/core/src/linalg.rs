//! Dense exact linear algebra over any [`Elem`] field.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::Elem;

/// Row-major matrix. Carries a zero of its field so empty shapes stay typed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    zero: Elem,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, zero: &Elem) -> Self {
        let zero = zero.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: &Elem) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize, zero: &Elem) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data, zero: zero.zero_like() }
    }

    pub fn from_cols(cols: Vec<Vec<Elem>>, rows: usize, zero: &Elem) -> Self {
        let c = cols.len();
        let mut m = Self::zeros(rows, c, zero);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, x) in col.into_iter().enumerate() {
                m.data[i * c + j] = x;
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

    pub fn zero_elem(&self) -> &Elem {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut r = Matrix::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    r.data[idx] = &r.data[idx] + &(a * b);
                }
            }
        }
        Ok(r)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::ShapeMismatch("elementwise operation".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() })
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn trace(&self) -> Elem {
        let mut acc = self.zero.clone();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn hstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.rows != o.rows {
            return Err(Error::ShapeMismatch("hstack".into()));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(o.row(i));
                r
            })
            .collect();
        Ok(Matrix::from_rows(rows, self.cols + o.cols, &self.zero))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &(&f * v);
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = self.zero.one_like();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(vec![b.to_vec()], self.rows, &self.zero)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Elem>>> = b.col_vecs().iter().map(|c| self.solve(c)).collect();
        Some(Matrix::from_cols(cols?, self.cols, &self.zero))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, &self.zero))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let rows = (0..n).map(|i| r.row(i)[n..].to_vec()).collect();
        Ok(Matrix::from_rows(rows, n, &self.zero))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Subspace of an ambient coordinate space, stored as the reduced echelon basis.
///
/// The basis vectors are the rows of a reduced row echelon matrix, which is
/// the reduced column echelon form of the matrix of basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn span(vectors: &[Vec<Elem>], ambient: usize, zero: &Elem) -> Self {
        let m = Matrix::from_rows(vectors.to_vec(), ambient, zero);
        let (r, piv) = m.rref();
        let rows = (0..piv.len()).map(|i| r.row(i)).collect();
        Subspace { ambient, basis: Matrix::from_rows(rows, ambient, zero) }
    }

    pub fn zero(ambient: usize, zero: &Elem) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient, zero) }
    }

    pub fn full(ambient: usize, zero: &Elem) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient, zero) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    /// Ambient x dim matrix whose columns are the basis.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn zero_elem(&self) -> &Elem {
        self.basis.zero_elem()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut rows = self.basis();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient, self.zero_elem()).rank() == self.dim()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut rows = self.basis();
        rows.extend(o.basis());
        Subspace::span(&rows, self.ambient, self.zero_elem())
    }
}
