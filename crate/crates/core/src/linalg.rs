//! Dense matrices over a finite field and Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    pub fn from_rows(field: &FiniteField, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(c, self[(i, j)]));
            }
        }
        out
    }

    /// In-place reduced row echelon form. Pivots are taken column by column
    /// from the left, using the first row (at or below the current pivot
    /// row) with a nonzero entry. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).unwrap();
            for j in c..self.cols {
                let v = f.mul(self[(r, j)], inv);
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self[(i, j)], f.mul(factor, self[(r, j)]));
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows removed, plus pivot columns.
    pub fn row_basis(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.row_basis();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out[(k, fc)] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                out[(k, pc)] = f.neg(r[(i, fc)]);
            }
        }
        out
    }

    /// Basis of the left kernel `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Elem::ONE;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Solve `x * self = b` for a row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.cols);
        // Columns of [self^T | b^T]
        let mut aug = Matrix::zeros(&self.field, self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(j, i)] = self[(i, j)];
            }
        }
        for (j, &v) in b.iter().enumerate() {
            aug[(j, self.rows)] = v;
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(i, self.rows)];
        }
        Some(x)
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Elem]) -> bool {
        self.solve_left(v).is_some()
    }

    /// Select columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, c)];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            writeln!(f, "  [{}]", r.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m7(rows: &[&[u32]]) -> Matrix {
        let f = FiniteField::new(7, 1).unwrap();
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Elem(v)).collect())
            .collect();
        Matrix::from_rows(&f, &rows).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = m7(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let (b, piv) = m.row_basis();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(b.row(0), &[Elem(1), Elem(0), Elem(1)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = m7(&[&[1, 2, 3, 4], &[0, 1, 5, 6]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        let prod = m.mul(&k.transpose()).unwrap();
        assert!(prod.data.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = m7(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.field(), 2));
        assert_eq!(m.determinant().unwrap(), Elem(1));
        let s = m7(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse().unwrap_err(), Error::SingularMatrix);
        assert_eq!(s.determinant().unwrap(), Elem(0));
    }

    #[test]
    fn solve_left_finds_combination() {
        let m = m7(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = m.solve_left(&[Elem(3), Elem(2), Elem(5)]).unwrap();
        assert_eq!(x, vec![Elem(3), Elem(2)]);
        assert!(m.solve_left(&[Elem(1), Elem(1), Elem(1)]).is_none());
    }
}
