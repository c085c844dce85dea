//! Dense linear algebra over GF(p).
//!
//! [`Mat`] is row-major. [`Subspace`] wraps an `n x d` matrix of full column
//! rank whose columns span the subspace.

use std::fmt;

use crate::error::{AltViolation, Error, Result};
use crate::field::{Felt, FieldCtx};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF({})", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Number of `(p-1)^2` products that fit in a `u64` accumulator on top of a
/// reduced value.
fn lazy_batch(field: FieldCtx) -> u64 {
    let pm1 = field.order() - 1;
    if pm1 == 0 {
        return u64::MAX;
    }
    ((u64::MAX - field.order()) / (pm1 * pm1)).max(1)
}

impl Mat {
    pub fn zeros(field: FieldCtx, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(field: FieldCtx, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Felt::ONE;
        }
        m
    }

    pub fn from_fn(field: FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Felt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from signed integer rows, reducing each entry mod p.
    pub fn from_rows(field: FieldCtx, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Mat::from_fn(field, rows.len(), ncols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_columns(field: FieldCtx, n: usize, columns: &[Vec<Felt>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::ShapeMismatch(format!("column of length {} in ambient {n}", c.len())));
        }
        Ok(Mat::from_fn(field, n, columns.len(), |i, j| columns[j][i]))
    }

    pub fn from_row_vecs(field: FieldCtx, cols: usize, rows: &[Vec<Felt>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("row of length {} where {cols} expected", r.len())));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Mat { field, rows: rows.len(), cols, data })
    }

    /// `n x k` matrix whose columns are the listed standard basis vectors.
    pub fn coordinate_columns(field: FieldCtx, n: usize, idx: &[usize]) -> Self {
        let mut m = Mat::zeros(field, n, idx.len());
        for (j, &i) in idx.iter().enumerate() {
            m.set(i, j, Felt::ONE);
        }
        m
    }

    pub fn field(&self) -> FieldCtx {
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Felt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Felt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Felt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Felt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: Felt) -> Mat {
        let field = self.field;
        Mat { data: self.data.iter().map(|&x| field.mul(c, x)).collect(), ..self.clone() }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn leading_columns(&self, k: usize) -> Mat {
        let idx: Vec<usize> = (0..k.min(self.cols)).collect();
        self.select_columns(&idx)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let c = self.cols;
        Ok(Mat::from_fn(self.field, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j)
            } else {
                other.get(i, j - c)
            }
        }))
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.field.order();
        let batch = lazy_batch(self.field);
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u64;
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.0 as u64;
                for (x, b) in acc.iter_mut().zip(rhs.row(k)) {
                    *x += a * b.0 as u64;
                }
                pending += 1;
                if pending == batch {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = Felt((x % p) as u32);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect())
    }

    /// `t^T * self * t`.
    pub fn congruence(&self, t: &Mat) -> Result<Mat> {
        if self.rows != self.cols || t.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "congruence of {}x{} by {}x{}",
                self.rows, self.cols, t.rows, t.cols
            )));
        }
        t.transpose().mul(&self.mul(t)?)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let field = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            for x in self.row_mut(r)[c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
            let (head, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, tail) = rest.split_at_mut(cols);
            for other in head.chunks_mut(cols).chain(tail.chunks_mut(cols)) {
                let f = other[c];
                if f.is_zero() {
                    continue;
                }
                let nf = field.neg(f);
                for (x, &y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = field.mul_add(*x, nf, y);
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

    /// Right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let field = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Mat::zeros(field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, Felt::ONE);
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, field.neg(r.get(row, f)));
            }
        }
        Subspace { basis }
    }

    pub fn determinant(&self) -> Result<Felt> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        let field = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Felt::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Felt::ZERO);
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = field.neg(det);
            }
            let piv = m.get(c, c);
            det = field.mul(det, piv);
            let inv = field.inv(piv)?;
            for i in c + 1..n {
                let f = field.mul(m.get(i, c), inv);
                if f.is_zero() {
                    continue;
                }
                let nf = field.neg(f);
                for j in c..n {
                    let v = field.mul_add(m.get(i, j), nf, m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Checks `v^T A v = 0` for all `v`: zero diagonal and `A^T = -A`.
    /// Over GF(2) this is symmetric with zero diagonal.
    pub fn check_alternating(&self) -> std::result::Result<(), AltViolation> {
        if self.rows != self.cols {
            return Err(AltViolation::NotSquare { rows: self.rows, cols: self.cols });
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return Err(AltViolation::NonzeroDiagonal { index: i });
            }
            for j in i + 1..self.cols {
                if self.get(j, i) != self.field.neg(self.get(i, j)) {
                    return Err(AltViolation::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Applies `t = I + scalar * E_{src,dst}` by congruence in place:
    /// row `dst` += scalar * row `src`, then the same on columns.
    pub(crate) fn paired_rowcol(&mut self, src: usize, dst: usize, scalar: Felt) {
        let field = self.field;
        let n = self.cols;
        for j in 0..n {
            let v = field.mul_add(self.get(dst, j), scalar, self.get(src, j));
            self.set(dst, j, v);
        }
        for i in 0..self.rows {
            let v = field.mul_add(self.get(i, dst), scalar, self.get(i, src));
            self.set(i, dst, v);
        }
    }

    /// Column `dst` += scalar * column `src`.
    pub(crate) fn add_column_multiple(&mut self, src: usize, dst: usize, scalar: Felt) {
        let field = self.field;
        for i in 0..self.rows {
            let v = field.mul_add(self.get(i, dst), scalar, self.get(i, src));
            self.set(i, dst, v);
        }
    }
}

pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    m.rref()
}

pub fn rank(m: &Mat) -> usize {
    m.rank()
}

pub fn kernel(m: &Mat) -> Subspace {
    m.kernel()
}

pub fn congruence(a: &Mat, t: &Mat) -> Result<Mat> {
    a.congruence(t)
}

/// Incrementally maintained echelon basis of a set of row vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldCtx,
    len: usize,
    rows: Vec<Vec<Felt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldCtx, len: usize) -> Self {
        Echelon { field, len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Felt]) {
        let field = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f.is_zero() {
                continue;
            }
            let nf = field.neg(f);
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.mul_add(*x, nf, y);
            }
        }
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether it was independent of the vectors so far.
    pub fn insert(&mut self, v: &[Felt]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// Whether the given vectors (all of the same length) are linearly independent.
pub fn independent(field: FieldCtx, len: usize, vectors: &[Vec<Felt>]) -> bool {
    let mut e = Echelon::new(field, len);
    vectors.iter().all(|v| e.insert(v))
}

/// A subspace of `F^n`, stored as an `n x d` basis matrix of full column rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: FieldCtx, n: usize) -> Self {
        Subspace { basis: Mat::zeros(field, n, 0) }
    }

    pub fn full(field: FieldCtx, n: usize) -> Self {
        Subspace { basis: Mat::identity(field, n) }
    }

    pub fn coordinate(field: FieldCtx, n: usize, idx: &[usize]) -> Result<Self> {
        if let Some(&i) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        Subspace::from_basis(Mat::coordinate_columns(field, n, idx))
    }

    /// Wraps a basis matrix, rejecting dependent columns.
    pub fn from_basis(basis: Mat) -> Result<Self> {
        let rank = basis.rank();
        if rank != basis.cols() {
            return Err(Error::RankDeficient { rank, cols: basis.cols() });
        }
        Ok(Subspace { basis })
    }

    pub(crate) fn from_basis_unchecked(basis: Mat) -> Self {
        debug_assert_eq!(basis.rank(), basis.cols());
        Subspace { basis }
    }

    /// Column span of an arbitrary matrix, in canonical form.
    pub fn span(generators: &Mat) -> Self {
        let (r, pivots) = generators.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let b = Mat::from_fn(r.field(), generators.rows(), rows.len(), |i, j| r.get(rows[j], i));
        Subspace { basis: b }
    }

    pub fn span_of(field: FieldCtx, n: usize, vectors: &[Vec<Felt>]) -> Result<Self> {
        Ok(Subspace::span(&Mat::from_columns(field, n, vectors)?))
    }

    pub fn field(&self) -> FieldCtx {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn into_basis(self) -> Mat {
        self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Felt>> {
        self.basis.columns()
    }

    /// Canonical representative: columns are the rows of the RREF of the
    /// transposed basis. Equal subspaces give equal canonical forms.
    pub fn canonical(&self) -> Subspace {
        Subspace::span(&self.basis)
    }

    pub fn same_space(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.canonical() == other.canonical()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field(), self.ambient_dim());
        for v in self.basis_vectors() {
            e.insert(&v);
        }
        e
    }

    pub fn contains_vector(&self, v: &[Felt]) -> bool {
        v.len() == self.ambient_dim() && self.echelon().contains(v)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.ambient_dim() == self.ambient_dim() && other.basis_vectors().iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    /// `dim(self ∩ other)`, from `dim(U+V) = dim U + dim V - dim(U ∩ V)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        let s = self.basis.hstack(&other.basis)?.rank();
        Ok(self.dim() + other.dim() - s)
    }

    /// `S^⊥` for the standard dot product; `dim S + dim S^⊥ = n` but the two
    /// may intersect.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient_dim());
        }
        self.basis.transpose().kernel()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Felt]) -> Option<Vec<Felt>> {
        let n = self.ambient_dim();
        let d = self.dim();
        if v.len() != n {
            return None;
        }
        let aug = Mat::from_fn(self.field(), n, d + 1, |i, j| if j < d { self.basis.get(i, j) } else { v[i] });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&d) {
            return None;
        }
        let mut x = vec![Felt::ZERO; d];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, d);
        }
        Some(x)
    }
}

pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    s.orthogonal_complement()
}

/// A subspace `R` with `inner ⊕ R = outer`, built by walking the canonical
/// basis of `outer` and keeping each vector that is independent of what is
/// already spanned.
pub fn complement_basis(inner: &Subspace, outer: &Subspace) -> Result<Subspace> {
    if inner.ambient_dim() != outer.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "subspaces of F^{} and F^{}",
            inner.ambient_dim(),
            outer.ambient_dim()
        )));
    }
    if !outer.contains(inner) {
        return Err(Error::NotContained);
    }
    let mut e = inner.echelon();
    let kept: Vec<Vec<Felt>> = outer.canonical().basis_vectors().into_iter().filter(|v| e.insert(v)).collect();
    let b = Mat::from_columns(outer.field(), outer.ambient_dim(), &kept)?;
    Ok(Subspace::from_basis_unchecked(b))
}
