//! Sparse row-major matrices over [`Cyc`].

use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{Cyc, ExactError};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    /// Per row: `(column, value)` sorted by column, zeros omitted.
    data: Vec<Vec<(usize, Cyc)>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::scalar(n, &Cyc::one())
    }

    pub fn scalar(n: usize, s: &Cyc) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        if !s.is_zero() {
            for (i, row) in m.data.iter_mut().enumerate() {
                row.push((i, s.clone()));
            }
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<Cyc>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), c, "ragged matrix");
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: BTreeMap<(usize, usize), Cyc>,
    ) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for ((i, j), v) in entries {
            assert!(i < rows && j < cols);
            if !v.is_zero() {
                m.data[i].push((j, v));
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Cyc {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Cyc::zero(),
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, Cyc)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyc>> {
        let mut out = vec![vec![Cyc::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        let mut acc: Vec<Option<Cyc>> = vec![None; rhs.cols];
        let mut touched = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let p = a * b;
                    match &mut acc[*j] {
                        Some(v) => *v += &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if let Some(v) = acc[j].take() {
                    if !v.is_zero() {
                        out.data[i].push((j, v));
                    }
                }
            }
            touched.clear();
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let mut m: BTreeMap<usize, Cyc> = self.data[i].iter().cloned().collect();
            for (j, v) in &rhs.data[i] {
                let e = m.entry(*j).or_insert_with(Cyc::zero);
                *e += v;
            }
            out.data[i] = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scale(&Cyc::from_int(-1)))
    }

    pub fn scale(&self, s: &Cyc) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out.data[*j].push((i, v.clone()));
            }
        }
        out
    }

    /// Entrywise image under a map of scalars.
    pub fn map(&self, f: impl Fn(&Cyc) -> Cyc) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(j, v)| (*j, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> Cyc {
        assert!(self.is_square());
        (0..self.rows).fold(Cyc::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row[0].0 == i && row[0].1.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// `Some(λ)` when the matrix equals `λ·id` (any λ for the 0×0 matrix is 0).
    pub fn as_scalar(&self) -> Option<Cyc> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Cyc::zero());
        }
        let lam = self.get(0, 0);
        let ok = self.data.iter().enumerate().all(|(i, row)| {
            if lam.is_zero() {
                row.is_empty()
            } else {
                row.len() == 1 && row[0].0 == i && row[0].1 == lam
            }
        });
        ok.then_some(lam)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_dense();
        let mut inv = Matrix::identity(n).to_dense();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(ExactError::DivisionByZero)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        let t = &f * &a[col][j];
                        a[r][j] -= &t;
                    }
                    if !inv[col][j].is_zero() {
                        let t = &f * &inv[col][j];
                        inv[r][j] -= &t;
                    }
                }
            }
        }
        Ok(Matrix::from_dense_sized(n, n, inv))
    }

    fn from_dense_sized(rows: usize, cols: usize, d: Vec<Vec<Cyc>>) -> Matrix {
        if rows == 0 {
            return Matrix::zeros(0, cols);
        }
        Matrix::from_dense(d)
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Cyc>> {
        let mut a = self.to_dense();
        let (n, m) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(piv) = (row..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, piv);
            let p = a[row][col].inv().expect("pivot is nonzero");
            for j in col..m {
                a[row][j] = &a[row][j] * &p;
            }
            for r in 0..n {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in col..m {
                    if !a[row][j].is_zero() {
                        let t = &f * &a[row][j];
                        a[r][j] -= &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        (0..m)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Cyc::zero(); m];
                v[free] = Cyc::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[r][free];
                }
                v
            })
            .collect()
    }

    /// Kronecker product, row index `i * rhs.rows() + k`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (br, bc) = (rhs.rows, rhs.cols);
        let mut out = MatrixBuilder::new(self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for (j, x) in &self.data[i] {
                for k in 0..br {
                    for (l, y) in &rhs.data[k] {
                        out.add(i * br + k, j * bc + l, &(x * y));
                    }
                }
            }
        }
        out.build()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.inverse().is_ok()
    }

    /// Block placement helper: writes `block` at offset `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for (i, row) in block.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let target = &mut self.data[r0 + i];
            let mut m: BTreeMap<usize, Cyc> = target.drain(..).collect();
            for (j, v) in row {
                let e = m.entry(c0 + j).or_insert_with(Cyc::zero);
                *e += v;
            }
            *target = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
    }
}

/// Accumulating builder for sparse matrices.
pub struct MatrixBuilder {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Cyc>>,
}

impl MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> MatrixBuilder {
        MatrixBuilder {
            rows,
            cols,
            entries: vec![BTreeMap::new(); rows],
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: &Cyc) {
        debug_assert!(i < self.rows && j < self.cols);
        if v.is_zero() {
            return;
        }
        match self.entries[i].get_mut(&j) {
            Some(e) => *e += v,
            None => {
                self.entries[i].insert(j, v.clone());
            }
        }
    }

    pub fn build(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .entries
                .into_iter()
                .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
