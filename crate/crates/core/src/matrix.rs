//! Dense matrices over `F_q` and exact linear algebra.
//!
//! Vectors are rows unless stated otherwise; kernels are right kernels returned as
//! plain coefficient vectors.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldContext, FieldElement, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("minimal polynomial is reducible; only the irreducible case is supported")]
    UnsupportedShape,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Result of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub r: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &FieldContext, rows: usize, cols: usize) -> Self {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldContext, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: &FieldContext, n: usize, c: FieldElement) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_vec(
        field: &FieldContext,
        rows: usize,
        cols: usize,
        data: Vec<FieldElement>,
    ) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// From row-major element codes; panics when a code is out of range.
    pub fn from_codes(field: &FieldContext, rows: usize, cols: usize, codes: &[u64]) -> Self {
        let data = codes
            .iter()
            .map(|&c| field.element(c).expect("entry code out of range"))
            .collect();
        Self::from_vec(field, rows, cols, data)
    }

    pub fn from_rows(field: &FieldContext, rows: &[Vec<FieldElement>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &FieldContext, rows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn diagonal(field: &FieldContext, d: &[FieldElement]) -> Self {
        let mut m = Self::zeros(field, d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Elementary matrix with a single 1 at `(i, j)`.
    pub fn unit(field: &FieldContext, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m[(i, j)] = FieldElement::ONE;
        m
    }

    pub fn random<R: Rng + ?Sized>(
        field: &FieldContext,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Self::from_vec(field, rows, cols, data)
    }

    /// Random element of `GL_n(F_q)` by rejection sampling.
    pub fn random_invertible<R: Rng + ?Sized>(field: &FieldContext, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Companion matrix of a monic polynomial `c_0 + ... + x^d`: ones on the subdiagonal,
    /// `-c_i` in the last column.
    pub fn companion(f: &Poly) -> Self {
        let field = f.field();
        let d = f.degree().expect("nonzero polynomial");
        let lead_inv = field.inv(f.leading()).unwrap();
        let mut m = Self::zeros(field, d, d);
        for i in 1..d {
            m[(i, i - 1)] = FieldElement::ONE;
        }
        for i in 0..d {
            m[(i, d - 1)] = field.neg(field.mul(f.coeffs()[i], lead_inv));
        }
        m
    }

    #[inline]
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn codes(&self) -> Vec<u64> {
        self.data.iter().map(|x| x.0).collect()
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    self[(i, j)]
                        == if i == j {
                            FieldElement::ONE
                        } else {
                            FieldElement::ZERO
                        }
                })
            })
    }

    /// Reinterprets the row-major entries as a `rows × cols` matrix.
    pub fn reshape(&self, rows: usize, cols: usize) -> Mat {
        Mat::from_vec(&self.field, rows, cols, self.data.clone())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    fn same_shape(&self, o: &Mat, what: &str) {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{}: {}x{} vs {}x{}",
            what,
            self.rows,
            self.cols,
            o.rows,
            o.cols
        );
    }

    pub fn add(&self, o: &Mat) -> Mat {
        self.same_shape(o, "add");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.field.add(*a, *b))
            .collect();
        Mat::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.same_shape(o, "sub");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.field.sub(*a, *b))
            .collect();
        Mat::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|a| self.field.neg(*a)).collect();
        Mat::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: FieldElement) -> Mat {
        let data = self.data.iter().map(|a| self.field.mul(*a, c)).collect();
        Mat::from_vec(&self.field, self.rows, self.cols, data)
    }

    /// `self + c·o`.
    pub fn add_scaled(&self, o: &Mat, c: FieldElement) -> Mat {
        self.same_shape(o, "add_scaled");
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| f.add(*a, f.mul(*b, c)))
            .collect();
        Mat::from_vec(f, self.rows, self.cols, data)
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(
            self.cols, o.rows,
            "mul: {}x{} * {}x{}",
            self.rows, self.cols, o.rows, o.cols
        );
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = o.row(k);
                let start = i * o.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[start + j] = f.add(out.data[start + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Checked product.
    pub fn try_mul(&self, o: &Mat) -> Result<Mat, MatError> {
        if self.cols != o.rows {
            return Err(MatError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in self.row(i).iter().enumerate() {
                out[j] = f.add(out[j], f.mul(a, b));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut n: u64) -> Mat {
        assert!(self.is_square());
        let mut r = Mat::identity(&self.field, self.rows);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// `self^(p^k)` by `k` successive `p`-th powers, where `p` is the characteristic.
    pub fn pow_char(&self, k: u32) -> Mat {
        let p = self.field.characteristic();
        let mut r = self.clone();
        for _ in 0..k {
            r = r.pow(p);
        }
        r
    }

    /// `self^q` with `q` the field order.
    pub fn pow_q(&self) -> Mat {
        self.pow_char(self.field.degree())
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, f: &Poly) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] = self.field.add(acc[(i, i)], c);
            }
        }
        acc
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).fold(FieldElement::ZERO, |acc, i| {
            self.field.add(acc, self[(i, i)])
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zeros(&self.field, self.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, o);
        m
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut m = Mat::zeros(&self.field, self.rows + o.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, o);
        m
    }

    pub fn block_diag(field: &FieldContext, blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Selected columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(&self.field, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows: Vec<Vec<FieldElement>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        let mut m = Mat::from_rows(&self.field, &rows);
        if idx.is_empty() {
            m.cols = self.cols;
        }
        m
    }

    /// Reduced row-echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        Rref {
            rank: pivots.len(),
            r,
            pivots,
        }
    }

    /// Reduces in place and returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).unwrap();
            if inv != FieldElement::ONE {
                for j in c..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let pv = self.data[r * cols + j];
                    if !pv.is_zero() {
                        self.data[i * cols + j] = f.add(self.data[i * cols + j], f.mul(nf, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Canonical right-kernel basis read off the rref (one vector per free column).
    pub fn right_kernel(&self) -> Vec<Vec<FieldElement>> {
        let Rref { r, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[(i, free)]);
            }
            out.push(v);
        }
        out
    }

    /// Left kernel: row vectors `v` with `v·self = 0`.
    pub fn left_kernel(&self) -> Vec<Vec<FieldElement>> {
        self.transpose().right_kernel()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n));
        let Rref { r, rank, pivots } = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    /// Some `x` with `self·x = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let bm = Mat::from_cols(&self.field, self.rows, &[b.to_vec()]);
        let Rref { r, pivots, .. } = self.hstack(&bm).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Some(x)
    }

    /// Characteristic polynomial via Hessenberg reduction.
    pub fn char_poly(&self) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                h.swap_cols(i, j + 1);
            }
            let inv = f.inv(h[(j + 1, j)]).unwrap();
            for r in j + 2..n {
                let u = f.mul(h[(r, j)], inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    h[(r, c)] = f.sub(h[(r, c)], f.mul(u, h[(j + 1, c)]));
                }
                for c in 0..n {
                    h[(c, j + 1)] = f.add(h[(c, j + 1)], f.mul(u, h[(c, r)]));
                }
            }
        }
        let x = Poly::x(f);
        let mut ps: Vec<Poly> = vec![Poly::one(f)];
        for m in 1..=n {
            let lin = x.sub(&Poly::new(f, vec![h[(m - 1, m - 1)]]));
            let mut pm = lin.mul(&ps[m - 1]);
            let mut t = FieldElement::ONE;
            for i in 1..m {
                t = f.mul(t, h[(m - i, m - i - 1)]);
                let c = f.mul(t, h[(m - i - 1, m - 1)]);
                if !c.is_zero() {
                    pm = pm.sub(&ps[m - i - 1].scale(c));
                }
            }
            ps.push(pm);
        }
        Ok(ps.pop().unwrap())
    }

    /// Minimal polynomial of `v` (a column vector) under `self`.
    pub fn vector_min_poly(&self, v: &[FieldElement]) -> Poly {
        let f = &self.field;
        let mut krylov: Vec<Vec<FieldElement>> = Vec::new();
        let mut cur = v.to_vec();
        loop {
            if krylov.is_empty() && cur.iter().all(|x| x.is_zero()) {
                return Poly::one(f);
            }
            if !krylov.is_empty() {
                let k = Mat::from_cols(f, self.rows, &krylov);
                if let Some(c) = k.solve(&cur) {
                    let mut coeffs: Vec<FieldElement> = c.iter().map(|&x| f.neg(x)).collect();
                    coeffs.push(FieldElement::ONE);
                    return Poly::new(f, coeffs);
                }
            }
            let next = self.mul_vec(&cur);
            krylov.push(cur);
            cur = next;
        }
    }

    /// Minimal polynomial as the lcm of the minimal polynomials of the standard basis vectors.
    pub fn min_poly(&self) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut acc = Poly::one(f);
        for i in 0..n {
            let mut e = vec![FieldElement::ZERO; n];
            e[i] = FieldElement::ONE;
            if !acc.is_zero() && self.eval_poly(&acc).mul_vec(&e).iter().all(|x| x.is_zero()) {
                continue;
            }
            acc = acc.lcm(&self.vector_min_poly(&e));
        }
        Ok(acc)
    }

    /// Some nonsingular `P` with `P⁻¹·self·P = b`, when both have the same irreducible
    /// minimal polynomial; `None` when the minimal polynomials differ.
    pub fn similarity_transform(&self, b: &Mat) -> Result<Option<Mat>, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare(self.rows, self.cols));
        }
        if self.shape() != b.shape() || self.field != b.field {
            return Err(MatError::ShapeMismatch(
                "similarity needs equal square shapes".into(),
            ));
        }
        let mu = self.min_poly()?;
        if !mu.is_irreducible().unwrap_or(false) {
            return Err(MatError::UnsupportedShape);
        }
        if b.min_poly()? != mu {
            return Ok(None);
        }
        let ell = mu.degree().unwrap();
        let xa = self.cyclic_basis(ell);
        let xb = b.cyclic_basis(ell);
        let p = xa.mul(&xb.inverse().expect("cyclic basis is a basis"));
        debug_assert!(p.inverse().unwrap().mul(self).mul(&p) == *b);
        Ok(Some(p))
    }

    /// Columns `[v_1, Av_1, ..., A^(ℓ-1)v_1, v_2, ...]` with the `v_i` greedily chosen among
    /// standard basis vectors; a basis whenever the minimal polynomial is irreducible of degree ℓ.
    fn cyclic_basis(&self, ell: usize) -> Mat {
        let f = &self.field;
        let n = self.rows;
        let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
        let mut span = Mat::zeros(f, 0, n);
        for i in 0..n {
            if cols.len() == n {
                break;
            }
            let mut e = vec![FieldElement::ZERO; n];
            e[i] = FieldElement::ONE;
            let candidate = span.vstack(&Mat::from_rows(f, &[e.clone()]));
            if candidate.rank() == span.rows() {
                continue;
            }
            let mut v = e;
            for _ in 0..ell {
                let next = self.mul_vec(&v);
                cols.push(v);
                v = next;
            }
            span = Mat::from_rows(f, &cols);
            let Rref { r, rank, .. } = span.rref();
            span = r.submatrix(0, 0, rank, n);
        }
        Mat::from_cols(f, n, &cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Mat) -> Mat {
        let f = &self.field;
        let mut m = Mat::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m[(i * o.rows + k, j * o.cols + l)] = f.mul(a, o[(k, l)]);
                    }
                }
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = FieldElement;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{}", self)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.0.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced basis of the row span of `vectors` (all of length `len`).
pub fn row_span(
    field: &FieldContext,
    vectors: &[Vec<FieldElement>],
    len: usize,
) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(field, vectors);
    debug_assert_eq!(m.cols(), len);
    let Rref { r, rank, .. } = m.rref();
    (0..rank).map(|i| r.row(i).to_vec()).collect()
}

/// Coefficients expressing `target` in the (independent) `basis`, or `None`.
pub fn coordinates(
    field: &FieldContext,
    basis: &[Vec<FieldElement>],
    target: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    if basis.is_empty() {
        return target.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    Mat::from_cols(field, target.len(), basis).solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FieldContext {
        FieldContext::prime(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let r = Mat::identity(&f, 3).rref();
        assert_eq!((r.rank, r.pivots.clone()), (3, vec![0, 1, 2]));
        assert!(r.r.is_identity());
        let r = Mat::zeros(&f, 2, 2).rref();
        assert_eq!((r.rank, r.pivots.len()), (0, 0));
        assert_eq!(Mat::from_codes(&f, 2, 2, &[1, 1, 1, 1]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        assert!(Mat::identity(&f, 3).right_kernel().is_empty());
        assert_eq!(Mat::zeros(&f, 2, 3).right_kernel().len(), 3);
        let k = Mat::from_codes(&f, 1, 2, &[1, 1]).right_kernel();
        assert_eq!(k, vec![vec![FieldElement(1), FieldElement(1)]]);
    }

    #[test]
    fn char_and_min_poly_examples() {
        let f = f2();
        let g = Poly::from_codes(&f, &[1, 1, 1]);
        let c = Mat::companion(&g);
        assert_eq!(c.char_poly().unwrap(), g);
        let z = Mat::zeros(&f, 3, 3);
        assert_eq!(z.char_poly().unwrap().codes(), vec![0, 0, 0, 1]);
        assert_eq!(z.min_poly().unwrap().codes(), vec![0, 1]);
        let e12 = Mat::unit(&f, 2, 2, 0, 1);
        assert_eq!(e12.min_poly().unwrap().codes(), vec![0, 0, 1]);
        assert_eq!(
            Mat::zeros(&f, 2, 3).char_poly(),
            Err(MatError::NotSquare(2, 3))
        );
    }

    #[test]
    fn similarity_examples() {
        let f = f2();
        let c = Mat::companion(&Poly::from_codes(&f, &[1, 1, 1]));
        let p = c.similarity_transform(&c).unwrap().unwrap();
        assert_eq!(p.inverse().unwrap().mul(&c).mul(&p), c);
        let a = Mat::from_codes(&f, 2, 2, &[0, 1, 1, 1]);
        let b = a.mul(&a);
        assert_eq!(b, Mat::from_codes(&f, 2, 2, &[1, 1, 1, 0]));
        let p = a.similarity_transform(&b).unwrap().unwrap();
        assert_eq!(p.inverse().unwrap().mul(&a).mul(&p), b);
        let c3 = Mat::companion(&Poly::from_codes(&f, &[1, 1, 0, 1]));
        let d3 = Mat::companion(&Poly::from_codes(&f, &[1, 0, 1, 1]));
        assert_eq!(c3.similarity_transform(&d3).unwrap(), None);
        let d = Mat::diagonal(&f, &[FieldElement(0), FieldElement(1)]);
        assert_eq!(d.similarity_transform(&d), Err(MatError::UnsupportedShape));
    }

    #[test]
    fn similarity_non_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FieldContext::prime(3).unwrap();
        let c = Mat::companion(&Poly::from_codes(&f, &[1, 0, 1]));
        let a = Mat::block_diag(&f, &[c.clone(), c.clone(), c]);
        for _ in 0..10 {
            let q = Mat::random_invertible(&f, 6, &mut rng);
            let b = q.inverse().unwrap().mul(&a).mul(&q);
            let p = a.similarity_transform(&b).unwrap().unwrap();
            assert_eq!(p.inverse().unwrap().mul(&a).mul(&p), b);
        }
    }

    #[test]
    fn random_invertible_examples() {
        let f = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(Mat::random_invertible(&f, 1, &mut rng).is_identity());
        let f4 = FieldContext::of_order(4).unwrap();
        let a = Mat::random_invertible(&f4, 5, &mut ChaCha8Rng::seed_from_u64(9));
        let b = Mat::random_invertible(&f4, 5, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 5);
    }

    #[test]
    fn inverse_and_solve() {
        let f = FieldContext::of_order(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = Mat::random_invertible(&f, 4, &mut rng);
            assert!(a.mul(&a.inverse().unwrap()).is_identity());
            let x: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
            assert_eq!(a.solve(&a.mul_vec(&x)).unwrap(), x);
        }
        assert!(Mat::from_codes(&f2(), 2, 2, &[1, 1, 1, 1])
            .inverse()
            .is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn cayley_hamilton(qi in 0usize..5, n in 1usize..=6, seed in any::<u64>()) {
            let q = [2u64, 3, 4, 5, 9][qi];
            let f = FieldContext::of_order(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Mat::random(&f, n, n, &mut rng);
            let cp = m.char_poly().unwrap();
            let mp = m.min_poly().unwrap();
            prop_assert_eq!(cp.degree(), Some(n));
            prop_assert!(cp.is_monic() && mp.is_monic());
            prop_assert!(m.eval_poly(&cp).is_zero());
            prop_assert!(m.eval_poly(&mp).is_zero());
            prop_assert!(cp.divrem(&mp).unwrap().1.is_zero());
            for (g, _) in mp.factor(&mut rng).unwrap() {
                let (quot, _) = mp.divrem(&g).unwrap();
                prop_assert!(!m.eval_poly(&quot).is_zero());
            }
        }

        #[test]
        fn rref_idempotent(r in 1usize..6, c in 1usize..6, seed in any::<u64>()) {
            let f = FieldContext::of_order(3).unwrap();
            let m = Mat::random(&f, r, c, &mut ChaCha8Rng::seed_from_u64(seed));
            let once = m.rref().r;
            prop_assert_eq!(once.rref().r, once.clone());
            for v in m.right_kernel() {
                prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
