use std::fmt;

use rand::Rng;

use super::field::{Field, Scalar};
use crate::error::{usage, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Build from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return usage(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            ));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Integer rows, reduced into the field. Panics on ragged input.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, r, c, |i, j| {
            assert_eq!(rows[i].len(), c, "ragged matrix rows");
            field.from_i64(rows[i][j])
        })
    }

    /// The matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in product: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        match f {
            Field::Prime(p) => {
                // Accumulate in u128 to postpone reductions.
                let b: Vec<u64> = other.data.iter().map(fp_value).collect();
                for i in 0..self.rows {
                    let mut acc = vec![0u128; other.cols];
                    for k in 0..self.cols {
                        let a = fp_value(&self.data[i * self.cols + k]) as u128;
                        if a == 0 {
                            continue;
                        }
                        let brow = &b[k * other.cols..(k + 1) * other.cols];
                        for (slot, &bv) in acc.iter_mut().zip(brow) {
                            *slot += a * bv as u128;
                        }
                    }
                    for (j, v) in acc.into_iter().enumerate() {
                        out.data[i * other.cols + j] = Scalar::Fp((v % p as u128) as u64);
                    }
                }
            }
            Field::Rational => {
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self.data[i * self.cols + k];
                        if f.is_zero(a) {
                            continue;
                        }
                        for j in 0..other.cols {
                            let t = f.mul(a, other.get(k, j));
                            let slot = &mut out.data[i * other.cols + j];
                            *slot = f.add(slot, &t);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `[a | b | …]`; all blocks must share the row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Blocks stacked vertically; all blocks must share the column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Kronecker product, `self` as the outer factor.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        Matrix::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                f.mul(
                    self.get(r / other.rows, c / other.cols),
                    other.get(r % other.rows, c % other.cols),
                )
            },
        )
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
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

    /// Reduced row echelon form and its pivot columns. The pivot for each
    /// column is the first remaining row (in current order) with a nonzero
    /// entry there, so results are deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        match self.field {
            Field::Prime(p) => {
                let mut vals: Vec<u64> = self.data.iter().map(fp_value).collect();
                let pivots = rref_fp(&mut vals, self.rows, self.cols, p);
                self.data = vals.into_iter().map(Scalar::Fp).collect();
                pivots
            }
            Field::Rational => self.rref_generic(),
        }
    }

    fn rref_generic(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..cols {
                    let t = f.mul(&factor, self.get(r, j));
                    let v = f.sub(self.get(i, j), &t);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right kernel, one per free column of the
    /// echelon form, in increasing free-column order.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(pr, fc)));
            }
        }
        k
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A matrix `P` with `P · self = 0` and rank `rows − rank(self)`: its rows
    /// are a basis of the left kernel, so `P` realizes the quotient map onto
    /// the cokernel.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Some `x` with `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return usage(format!(
                "solve: {} rows in coefficient matrix, {} in right-hand side",
                self.rows, b.rows
            ));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pr, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let id = Matrix::identity(self.field, n);
        let aug = Matrix::hstack(self.field, n, &[self, &id]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Column-space basis: the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Integer rendering for prime fields (for JSON output).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| {
                    serde_json::Value::Array(
                        self.row(r).iter().map(|x| self.field.entry_to_json(x)).collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

fn fp_value(s: &Scalar) -> u64 {
    match s {
        Scalar::Fp(x) => *x,
        Scalar::Q(_) => panic!("rational entry in a prime-field matrix"),
    }
}

fn rref_fp(m: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = super::field::pow_mod(m[r * cols + c], p - 2, p);
        for j in c..cols {
            m[r * cols + j] = m[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            let factor = m[i * cols + c];
            if i == r || factor == 0 {
                continue;
            }
            for j in c..cols {
                let t = factor * m[r * cols + j] % p;
                m[i * cols + j] = (m[i * cols + j] + p - t) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
