//! Dense row-major matrices over a [`Field`].

use crate::gf::{Elem, Field};

#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.field == other.field && self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Panics if a row's length differs from `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `self * selfᵀ`.
    pub fn gram(&self) -> Matrix {
        self.mul(&self.transpose())
    }

    /// The matrix with the rows of `other` appended.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Columns `cols` in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn delete_column(&self, pos: usize) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != pos).collect();
        self.select_columns(&keep)
    }

    pub fn reverse_columns(&self) -> Matrix {
        let order: Vec<usize> = (0..self.cols).rev().collect();
        self.select_columns(&order)
    }

    /// Reduced row echelon form with zero rows removed, and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && !factor.is_zero() {
                    m.sub_scaled_row(i, r, factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.rows = r;
        m.data.truncate(r * m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : self · vᵀ = 0 }`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// `x · self` for a row vector `x`.
    pub fn left_mul_vec(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rows, "vector length");
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: Elem) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// row_i -= c * row_src
    fn sub_scaled_row(&mut self, i: usize, src: usize, c: Elem) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.field.sub(self.get(i, j), self.field.mul(c, s));
                self.set(i, j, v);
            }
        }
    }
}
