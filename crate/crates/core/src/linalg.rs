//! Exact linear algebra over `Q(v)`.
//!
//! Two matrix shapes: [`SparseMatrix`] for module actions (weight-graded and
//! therefore very sparse) and [`Matrix`] for the small dense systems solved by
//! Gaussian elimination (weight blocks, intertwiner equations).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rf;

/// Rough size of an entry, used to pick cheap pivots.
fn weight(x: &Rf) -> usize {
    let n = x.numerator();
    let d = x.denominator();
    let span = |p: &crate::scalar::LaurentPoly| {
        if p.is_zero() {
            0
        } else {
            (p.high_exponent() - p.low_exponent() + 1) as usize
        }
    };
    span(n) + span(d)
}

// ---- dense ----

/// Dense row-major matrix over `Q(v)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rf>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rf;
    fn index(&self, (r, c): (usize, usize)) -> &Rf {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rf {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rf::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rf::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rf>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rf> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rf::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(r, c)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rf]) -> Vec<Rf> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rf::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let best = (row..self.rows)
                .filter(|&r| !self[(r, col)].is_zero())
                .min_by_key(|&r| weight(&self[(r, col)]));
            let Some(p) = best else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self[(row, col)].inv().expect("nonzero pivot");
            for c in col..self.cols {
                if !self[(row, c)].is_zero() {
                    self[(row, c)] = &self[(row, c)] * &inv;
                }
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    if !self[(row, c)].is_zero() {
                        let t = &factor * &self[(row, c)];
                        self[(r, c)] -= &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column (ascending),
    /// with that free coordinate equal to one.
    pub fn nullspace(&self) -> Vec<Vec<Rf>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rf::zero(); self.cols];
            v[free] = Rf::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rf::one();
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Ok(inv)
    }

    /// Solve `self · X = rhs` for a square nonsingular `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.rows;
        if self.cols != n || rhs.rows != n {
            return Err(Error::DimensionMismatch("solve".into()));
        }
        let k = rhs.cols;
        let mut aug = Matrix::zeros(n, n + k);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..k {
                aug[(r, n + c)] = rhs[(r, c)].clone();
            }
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut x = Matrix::zeros(n, k);
        for r in 0..n {
            for c in 0..k {
                x[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Ok(x)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self[(r, c)].is_zero() {
                    s.data[r].push((c, self[(r, c)].clone()));
                }
            }
        }
        s
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rf>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Coordinates of each target in a linearly independent `basis`.
/// Fails with [`Error::Singular`] if the basis is dependent and with
/// [`Error::Invariant`] if a target lies outside its span.
pub fn express_in_basis(basis: &[Vec<Rf>], targets: &[Vec<Rf>]) -> Result<Vec<Vec<Rf>>> {
    let n = basis.len();
    let Some(len) = basis.first().or(targets.first()).map(Vec::len) else {
        return Ok(vec![Vec::new(); targets.len()]);
    };
    let mut m = Matrix::zeros(len, n + targets.len());
    for (c, v) in basis.iter().chain(targets).enumerate() {
        if v.len() != len {
            return Err(Error::DimensionMismatch("vectors of unequal length".into()));
        }
        for (r, x) in v.iter().enumerate() {
            m[(r, c)] = x.clone();
        }
    }
    let pivots = m.rref();
    if pivots.iter().take(n).copied().ne(0..n) {
        return Err(Error::Singular);
    }
    if pivots.len() > n {
        return Err(Error::Invariant("vector outside the span of the basis".into()));
    }
    Ok((0..targets.len())
        .map(|k| (0..n).map(|r| m[(r, n + k)].clone()).collect())
        .collect())
}

// ---- sparse ----

/// Row-major sparse matrix over `Q(v)`; each row is sorted by column and
/// holds no explicit zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rf)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| Rf::one()).collect())
    }

    pub fn diagonal(d: Vec<Rf>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            if !x.is_zero() {
                m.data[i].push((i, x));
            }
        }
        m
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Rf)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rf>> = vec![BTreeMap::new(); rows];
        for (r, c, x) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            let e = acc[r].entry(c).or_insert_with(Rf::zero);
            *e += &x;
        }
        SparseMatrix {
            rows,
            cols,
            data: acc
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, x)| !x.is_zero()).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rf)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rf {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rf::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Iterate over `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rf)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "sparse mul shape");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, Rf> = BTreeMap::new();
            for (k, a) in &self.data[r] {
                for (c, b) in &other.data[*k] {
                    let p = a * b;
                    match acc.get_mut(c) {
                        Some(e) => *e += &p,
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    fn combine(&self, other: &SparseMatrix, sign: bool) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, Rf> = self.data[r].iter().cloned().collect();
            for (c, b) in &other.data[r] {
                let b = if sign { b.clone() } else { -b };
                match acc.get_mut(c) {
                    Some(e) => *e += &b,
                    None => {
                        acc.insert(*c, b);
                    }
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, false)
    }

    pub fn scale(&self, s: &Rf) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, x)| (*c, x * s)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.cols, self.rows);
        for (r, c, x) in self.entries() {
            out.data[c].push((r, x.clone()));
        }
        out
    }

    /// Kronecker product; index `(i, j)` of the result is `i * other_dim + j`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for r2 in 0..other.rows {
                let row = &mut out.data[r1 * other.rows + r2];
                for (c1, a) in &self.data[r1] {
                    for (c2, b) in &other.data[r2] {
                        row.push((c1 * other.cols + c2, a * b));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rf]) -> Vec<Rf> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rf::zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc += &(x * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rf]) -> Vec<Rf> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rf::zero(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            if v[r].is_zero() {
                continue;
            }
            for (c, x) in row {
                out[*c] += &(&v[r] * x);
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Rf> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, c, x) in self.entries() {
            m[(r, c)] = x.clone();
        }
        m
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![None; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = Some(k);
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, x) in &self.data[r] {
                if let Some(k) = pos[*c] {
                    m[(i, k)] = x.clone();
                }
            }
        }
        m
    }

    pub fn to_record(&self) -> SparseRecord {
        SparseRecord {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().map(|(r, c, x)| (r, c, x.clone())).collect(),
        }
    }

    pub fn from_record(rec: &SparseRecord) -> Result<Self> {
        for (r, c, _) in &rec.entries {
            if *r >= rec.rows || *c >= rec.cols {
                return Err(Error::Parse(format!("entry ({r},{c}) out of range")));
            }
        }
        Ok(Self::from_triplets(rec.rows, rec.cols, rec.entries.clone()))
    }
}

/// Inverse of a square matrix that maps each row class onto the column
/// class with the same key (for example a weight-preserving change of
/// basis), inverted class by class.
pub fn invert_graded<K: Ord>(m: &SparseMatrix, row_keys: &[K], col_keys: &[K]) -> Result<SparseMatrix> {
    let n = m.rows();
    if m.cols() != n || row_keys.len() != n || col_keys.len() != n {
        return Err(Error::DimensionMismatch("graded inverse".into()));
    }
    let mut classes: BTreeMap<&K, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (r, k) in row_keys.iter().enumerate() {
        classes.entry(k).or_default().0.push(r);
    }
    for (c, k) in col_keys.iter().enumerate() {
        classes.entry(k).or_default().1.push(c);
    }
    let mut trip = Vec::new();
    for (rows, cols) in classes.values() {
        if rows.len() != cols.len() {
            return Err(Error::Singular);
        }
        let inv = m.select(rows, cols).inverse()?;
        for (a, &c) in cols.iter().enumerate() {
            for (b, &r) in rows.iter().enumerate() {
                let x = &inv[(a, b)];
                if !x.is_zero() {
                    trip.push((c, r, x.clone()));
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(n, n, trip))
}

/// Serialized sparse matrix: entries in row-major order, values in canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Rf)>,
}
