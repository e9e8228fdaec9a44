//! Exact dense and sparse matrices over [`CycScalar`], echelon subspaces and
//! joint eigenspaces.

use std::collections::BTreeMap;

use super::cyclotomic::CycScalar;
use crate::error::{Error, Result};

/// Dense column vector.
pub type Vector = Vec<CycScalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![CycScalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = CycScalar::one();
    v
}

pub fn is_zero_vec(v: &[CycScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn vec_add(a: &[CycScalar], b: &[CycScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[CycScalar], b: &[CycScalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[CycScalar], c: &CycScalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

/// `acc += c * v`.
pub fn vec_axpy(acc: &mut [CycScalar], c: &CycScalar, v: &[CycScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![CycScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vector> =
            rows.iter().map(|row| row.iter().map(|&x| CycScalar::from_int(x)).collect()).collect();
        Self::from_rows(r).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Contract(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycScalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Contract("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
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
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = m.get(i, j) - &(&f * &pivot_row[j]);
                        m.set(i, j, v);
                    }
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
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = zero_vec(self.cols);
            v[free] = CycScalar::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`, or [`Error::Inconsistent`].
    pub fn solve(&self, b: &[CycScalar]) -> Result<Vector> {
        if b.len() != self.rows {
            return Err(Error::Contract("right-hand side length mismatch".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = zero_vec(self.cols);
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, cols: self.cols }
    }
}

/// Row-sparse matrix: each row is a list of `(column, value)` sorted by column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: Vec<Vec<(usize, CycScalar)>>,
    cols: usize,
}

fn collect_row(acc: BTreeMap<usize, CycScalar>) -> Vec<(usize, CycScalar)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows: vec![Vec::new(); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: (0..n).map(|i| vec![(i, CycScalar::one())]).collect(), cols: n }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, CycScalar)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, CycScalar>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry out of range");
            let e = acc[i].entry(j).or_insert_with(CycScalar::zero);
            *e += &v;
        }
        SparseMatrix { rows: acc.into_iter().map(collect_row).collect(), cols }
    }

    pub fn diagonal(diag: &[CycScalar]) -> Self {
        Self::from_entries(diag.len(), diag.len(), diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, CycScalar)] {
        &self.rows[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|p| self.rows[i][p].1.clone())
            .unwrap_or_else(|_| CycScalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.rows
            .iter()
            .map(|r| {
                let mut acc = CycScalar::zero();
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        acc += &(a * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        let e = acc.entry(*j).or_insert_with(CycScalar::zero);
                        *e += &(a * b);
                    }
                }
                collect_row(acc)
            })
            .collect();
        SparseMatrix { rows, cols: other.cols }
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!((self.rows(), self.cols), (other.rows(), other.cols), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, CycScalar> = a.iter().cloned().collect();
                for (j, v) in b {
                    let e = acc.entry(*j).or_insert_with(CycScalar::zero);
                    if sign > 0 {
                        *e += v;
                    } else {
                        *e -= v;
                    }
                }
                collect_row(acc)
            })
            .collect();
        SparseMatrix { rows, cols: self.cols }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows(), self.cols);
        }
        SparseMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect()).collect(),
            cols: self.cols,
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows(), self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows(), self.cols);
        for (i, j, v) in self.entries() {
            m.set(i, j, v.clone());
        }
        m
    }

    /// `I_left ⊗ self ⊗ I_right`.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let (r, c) = (self.rows(), self.cols);
        let mut entries = Vec::with_capacity(self.nnz() * left * right);
        for a in 0..left {
            for (i, j, v) in self.entries() {
                for b in 0..right {
                    entries.push(((a * r + i) * right + b, (a * c + j) * right + b, v.clone()));
                }
            }
        }
        Self::from_entries(left * r * right, left * c * right, entries)
    }

    /// Flattened entries in row-major order, used to span matrix algebras.
    pub fn flatten(&self) -> Vector {
        let mut v = zero_vec(self.rows() * self.cols);
        for (i, j, x) in self.entries() {
            v[i * self.cols + j] = x.clone();
        }
        v
    }
}

/// Subspace of `K^dim` held as a reduced row echelon basis.
///
/// Because each basis row has a one at its pivot and zeros at every other
/// pivot, the coordinates of a member `v` are simply `v[pivot]`.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let mut s = Self::new(dim);
        for i in 0..dim {
            s.insert(&unit_vec(dim, i));
        }
        s
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Self::new(dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[CycScalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Inserts `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[CycScalar]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of a member with respect to [`Subspace::basis`].
    pub fn coords(&self, v: &[CycScalar]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.rows == other.rows
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // solve Σ a_i u_i = Σ b_j w_j
        let k = self.dim();
        let mut cols: Vec<Vector> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.iter().map(|c| -c).collect::<Vector>()));
        let m = ExactMatrix::from_columns(self.dim, &cols);
        let mut out = Subspace::new(self.dim);
        for kv in m.kernel() {
            let mut v = zero_vec(self.dim);
            for (a, u) in kv[..k].iter().zip(&self.rows) {
                vec_axpy(&mut v, a, u);
            }
            out.insert(&v);
        }
        out
    }
}

/// Incremental independence test that also expresses dependent vectors in
/// terms of the previously accepted ones.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    /// `transforms[k]` writes `rows[k]` as a combination of accepted vectors.
    transforms: Vec<Vector>,
    accepted: usize,
}

/// Outcome of [`SpanTracker::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanResult {
    /// Independent; the vector received this index among accepted vectors.
    New(usize),
    /// Dependent; coefficients over the accepted vectors.
    Dependent(Vector),
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        SpanTracker { dim, rows: Vec::new(), pivots: Vec::new(), transforms: Vec::new(), accepted: 0 }
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn insert(&mut self, v: &[CycScalar]) -> SpanResult {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = v.to_vec();
        let mut t = zero_vec(self.accepted + 1);
        for ((row, &p), tr) in self.rows.iter().zip(&self.pivots).zip(&self.transforms) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            vec_axpy(&mut t[..tr.len()], &f, tr);
        }
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            t.truncate(self.accepted);
            return SpanResult::Dependent(t);
        };
        // new row = (v - Σ f_k rows_k) / r[p]; its transform is (e_new - t) / r[p]
        let inv = r[p].inv().expect("nonzero pivot");
        let idx = self.accepted;
        self.accepted += 1;
        let mut tr: Vector = t.iter().map(|c| -c).collect();
        tr[idx] = CycScalar::one();
        let tr = vec_scale(&tr, &inv);
        let r = vec_scale(&r, &inv);
        for x in self.transforms.iter_mut() {
            x.push(CycScalar::zero());
        }
        for (row, tk) in self.rows.iter_mut().zip(self.transforms.iter_mut()) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
                let nf = -&f;
                vec_axpy(tk, &nf, &tr);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.transforms.push(tr);
        SpanResult::New(idx)
    }
}

/// Basis of `∩_j ker(ops_j − λ_j I)` for a pairwise commuting family.
pub fn simultaneous_eigenspace(ops: &[ExactMatrix], eigenvalues: &[CycScalar]) -> Result<Vec<Vector>> {
    if ops.len() != eigenvalues.len() {
        return Err(Error::Contract("one eigenvalue per operator required".into()));
    }
    let Some(first) = ops.first() else {
        return Err(Error::Contract("empty operator family".into()));
    };
    let n = first.rows();
    if ops.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Contract("operators must be square of equal size".into()));
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if ops[i].mul(&ops[j])? != ops[j].mul(&ops[i])? {
                return Err(Error::Contract(format!("operators {i} and {j} do not commute")));
            }
        }
    }
    let mut stacked = Vec::with_capacity(n * ops.len());
    for (m, lam) in ops.iter().zip(eigenvalues) {
        let shifted = m.sub(&ExactMatrix::identity(n).scale(lam));
        for i in 0..n {
            stacked.push(shifted.row(i).to_vec());
        }
    }
    Ok(ExactMatrix::from_rows(stacked)?.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> CycScalar {
        CycScalar::from_int(v)
    }

    #[test]
    fn identity_eigenspace_is_everything() {
        let b = simultaneous_eigenspace(&[ExactMatrix::identity(3)], &[s(1)]).unwrap();
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn diagonal_eigenspace() {
        let d = ExactMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(simultaneous_eigenspace(&[d], &[s(-1)]).unwrap().len(), 1);
    }

    #[test]
    fn non_commuting_is_contract_violation() {
        let a = ExactMatrix::from_i64(&[vec![0, 1], vec![0, 0]]);
        let b = ExactMatrix::from_i64(&[vec![0, 0], vec![1, 0]]);
        assert!(matches!(simultaneous_eigenspace(&[a, b], &[s(0), s(0)]), Err(Error::Contract(_))));
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let x = a.solve(&[s(3), s(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![s(3), s(6)]);
        assert!(matches!(a.solve(&[s(1), s(0)]), Err(Error::Inconsistent)));
        assert_eq!(a.rank() + a.kernel().len(), 2);
    }

    #[test]
    fn subspace_coordinates() {
        let mut sp = Subspace::new(3);
        assert!(sp.insert(&[s(1), s(1), s(0)]));
        assert!(sp.insert(&[s(0), s(1), s(1)]));
        assert!(!sp.insert(&[s(1), s(2), s(1)]));
        let v = vec![s(2), s(5), s(3)];
        let c = sp.coords(&v).unwrap();
        let mut back = zero_vec(3);
        for (a, b) in c.iter().zip(sp.basis()) {
            vec_axpy(&mut back, a, b);
        }
        assert_eq!(back, v);
        assert!(sp.coords(&[s(1), s(0), s(0)]).is_none());
    }

    #[test]
    fn span_tracker_coefficients() {
        let vs = [vec![s(1), s(2), s(0)], vec![s(0), s(1), s(1)], vec![s(2), s(5), s(1)]];
        let mut t = SpanTracker::new(3);
        assert_eq!(t.insert(&vs[0]), SpanResult::New(0));
        assert_eq!(t.insert(&vs[1]), SpanResult::New(1));
        match t.insert(&vs[2]) {
            SpanResult::Dependent(c) => assert_eq!(c, vec![s(2), s(1)]),
            other => panic!("expected dependence, got {other:?}"),
        }
    }

    #[test]
    fn sparse_matches_dense() {
        let a = ExactMatrix::from_i64(&[vec![1, 0, 2], vec![0, 3, 0], vec![4, 0, 0]]);
        let b = ExactMatrix::from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]);
        let sp = a.to_sparse().mul(&b.to_sparse());
        assert_eq!(sp.to_dense(), a.mul(&b).unwrap());
        let k = a.to_sparse().embed(2, 1);
        assert_eq!(k.rows(), 6);
        assert_eq!(k.get(4, 5), s(0));
        assert_eq!(k.get(3, 5), s(2));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(3, &[vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]]);
        let b = Subspace::from_vectors(3, &[vec![s(0), s(1), s(0)], vec![s(0), s(0), s(1)]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[s(0), s(7), s(0)]));
    }
}
