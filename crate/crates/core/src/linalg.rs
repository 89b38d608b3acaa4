//! Dense exact linear algebra over the rationals.
//!
//! Vectors are plain `Vec<Scalar>`; matrices are row-major. Elimination
//! is ordinary Gauss-Jordan over exact rationals, skipping zero entries so
//! that the very sparse matrices arising from structure constants stay cheap.

use std::ops::Mul;

use crate::error::{ensure_len, Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += s * v`
pub fn add_scaled(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn scaled(s: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

pub fn vector_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vector_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Parse integers into a vector; convenient in tests and fixtures.
pub fn int_vector(values: &[i64]) -> Vector {
    values.iter().map(|&x| Scalar::from_int(x)).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        ensure_len("matrix entries", rows * cols, entries.len())?;
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: zero_vector(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            ensure_len(&format!("row {i} length"), c, row.len())?;
            entries.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            ensure_len(&format!("column {j} length"), rows, col.len())?;
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: scaled(s, &self.entries),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: vector_add(&self.entries, &other.entries),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: vector_sub(&self.entries, &other.entries),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        add_scaled(&mut self.entries, s, &other.entries);
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = &out.entries[r * other.cols + c] + &(a * b);
                        out.entries[r * other.cols + c] = v;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            let pivot: Vector = m.row(pivot_row)[col..].to_vec();
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let start = r * m.cols + col;
                for (offset, p) in pivot.iter().enumerate() {
                    if !p.is_zero() {
                        m.entries[start + offset] -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vector(self.cols);
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        SubspaceBasis {
            ambient_dim: self.cols,
            vectors: basis,
        }
    }

    /// Some solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        ensure_len("right-hand side", self.rows, b.len())?;
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if found != col {
                m.swap_rows(found, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = m.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// A linearly independent family of vectors in `F^ambient_dim`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vector>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim)
                .map(|i| unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    /// Independent vectors, rejecting dependent families.
    pub fn new(ambient_dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        let n = vectors.len();
        let span = SubspaceBasis::span(ambient_dim, vectors)?;
        if span.dim() != n {
            return Err(Error::Shape("basis vectors are linearly dependent".into()));
        }
        Ok(span)
    }

    /// Greedy independent subfamily spanning the same space as `vectors`,
    /// keeping the original vectors in their given order.
    pub fn span(ambient_dim: usize, vectors: Vec<Vector>) -> Result<Self> {
        let mut kept: Vec<Vector> = Vec::new();
        let mut echelon = Echelon::new(ambient_dim);
        for (i, v) in vectors.into_iter().enumerate() {
            ensure_len(&format!("vector {i} length"), ambient_dim, v.len())?;
            if echelon.insert(&v) {
                kept.push(v);
            }
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors: kept,
        })
    }

    pub fn from_units(ambient_dim: usize, indices: &[usize]) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: indices
                .iter()
                .map(|&i| unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Matrix with the basis vectors as columns.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.vectors).expect("consistent lengths")
    }

    /// Coordinates of `v` in this basis, `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        ensure_len("vector length", self.ambient_dim, v.len())?;
        self.as_columns().solve(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if is_zero_vector(v) {
            return true;
        }
        let mut e = Echelon::new(self.ambient_dim);
        for b in &self.vectors {
            e.insert(b);
        }
        !e.insert(v)
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        if other.ambient_dim != self.ambient_dim {
            return false;
        }
        let mut e = Echelon::new(self.ambient_dim);
        for b in &self.vectors {
            e.insert(b);
        }
        other.vectors.iter().all(|v| !e.insert(v))
    }

    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        ensure_len("ambient dimension", self.ambient_dim, other.ambient_dim)?;
        let all = self.vectors.iter().chain(&other.vectors).cloned().collect();
        SubspaceBasis::span(self.ambient_dim, all)
    }

    pub fn intersection_dim(&self, other: &SubspaceBasis) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }
}

/// `dim(total) - dim(sub)`, requiring `span(sub) ⊆ span(total)`.
pub fn quotient_dim(sub: &SubspaceBasis, total: &SubspaceBasis) -> Result<usize> {
    ensure_len("ambient dimension", total.ambient_dim, sub.ambient_dim)?;
    if !total.contains_subspace(sub) {
        return Err(Error::NotContained);
    }
    Ok(total.dim() - sub.dim())
}

/// A fixed basis of `total / sub`: representatives chosen greedily from
/// `total`'s own basis vectors.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    sub: SubspaceBasis,
    complement: Vec<Vector>,
}

impl QuotientBasis {
    pub fn new(sub: &SubspaceBasis, total: &SubspaceBasis) -> Result<Self> {
        quotient_dim(sub, total)?;
        let mut e = Echelon::new(total.ambient_dim);
        for v in sub.vectors() {
            e.insert(v);
        }
        let complement = total
            .vectors()
            .iter()
            .filter(|v| e.insert(v))
            .cloned()
            .collect();
        Ok(QuotientBasis {
            sub: sub.clone(),
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.complement
    }

    /// Coordinates of the class of `v` on the representatives; `None` if
    /// `v` does not lie in `total`.
    pub fn class_coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        let n = self.sub.dim();
        let mut cols: Vec<Vector> = self.sub.vectors().to_vec();
        cols.extend(self.complement.iter().cloned());
        let m = Matrix::from_columns(self.sub.ambient_dim(), &cols)?;
        Ok(m.solve(v)?.map(|x| x[n..].to_vec()))
    }
}

/// A linear map between coordinate spaces, stored as its
/// `target_dim x source_dim` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap::new(Matrix::zeros(target_dim, source_dim))
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::new(Matrix::identity(dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Image of the `i`-th source basis vector.
    pub fn image_of_basis(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.matmul(&inner.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Incremental row-echelon accumulator used for independence tests.
struct Echelon {
    rows: Vec<(usize, Vector)>,
    ambient: usize,
}

impl Echelon {
    fn new(ambient: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            ambient,
        }
    }

    /// Reduces `v` against the stored rows; stores it and returns `true`
    /// when it is independent of them.
    fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                add_scaled(&mut w, &(-f), row);
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = w[p].inv().expect("nonzero");
                let w = scaled(&inv, &w);
                for (_, row) in self.rows.iter_mut() {
                    if !row[p].is_zero() {
                        let f = row[p].clone();
                        add_scaled(row, &(-f), &w);
                    }
                }
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}
