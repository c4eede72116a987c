//! Dense exact matrices over [`Scalar`] with the linear algebra the engine
//! needs: products, Kronecker products, rank, null spaces, solving, inverses
//! and deterministic rank factorizations.
//!
//! Pivoting is always lexicographic (first usable row, first usable column),
//! so every decomposition is reproducible across runs and platforms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn scalar(n: usize, value: &Scalar) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// 1x1 matrix.
    pub fn from_scalar(s: Scalar) -> Mat {
        Mat {
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Conjugate transpose for the *-structure.
    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        if s.is_zero() {
            return Mat::zeros(self.rows, self.cols);
        }
        self.map(|x| x.mul(s))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Kronecker product with the usual ordering: row (i,p) = i*other.rows+p.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = other.at(p, q);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + p, j * other.cols + q, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Trace of the product `self * other` without forming it.
    pub fn trace_product(&self, other: &Mat) -> Scalar {
        assert_eq!(self.cols, other.rows, "trace_product dimension mismatch");
        assert_eq!(self.rows, other.cols, "trace_product dimension mismatch");
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(other.at(k, i)));
            }
        }
        acc
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns (rref, pivot column list).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero entry in this column at or below `row`
            let mut pivot_row = None;
            for r in row..m.rows {
                if !m.at(r, col).is_zero() {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).inv();
            for c in col..m.cols {
                let v = m.at(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, canonical form: each basis vector has a
    /// single free variable set to one.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec_out = vec![Scalar::zero(); self.cols];
            vec_out[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                vec_out[p] = r.at(i, free).neg();
            }
            basis.push(vec_out);
        }
        basis
    }

    /// Solve `self * x = rhs` exactly; free variables are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        // inconsistent if a pivot lands in the augmented column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.at(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| red.at(r, n + c).clone()))
    }

    /// Deterministic rank factorization `A = C * R` where `C` consists of the
    /// pivot columns of `A` and `R` of the nonzero rows of the rref.
    pub fn rank_factorize(&self) -> (Mat, Mat) {
        let (red, pivots) = self.rref();
        let r = pivots.len();
        let c_mat = Mat::from_fn(self.rows, r, |i, k| self.at(i, pivots[k]).clone());
        let r_mat = Mat::from_fn(r, self.cols, |k, j| red.at(k, j).clone());
        (c_mat, r_mat)
    }

    /// Index reshuffle implementing the tensor flip on a Kronecker-indexed
    /// square matrix: entry ((i,p),(j,q)) of the result is ((p,i),(q,j)) of
    /// the input, where the input rows factor as a*b and the output as b*a.
    pub fn tensor_flip(&self, dim_a: usize, dim_b: usize) -> Mat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert_eq!(self.cols, dim_a * dim_b);
        Mat::from_fn(dim_b * dim_a, dim_b * dim_a, |r, c| {
            let (p, i) = (r / dim_a, r % dim_a);
            let (q, j) = (c / dim_a, c % dim_a);
            self.at(i * dim_b + p, j * dim_b + q).clone()
        })
    }

    /// Partial transpose in the second tensor factor of a Kronecker-indexed
    /// square matrix with factor dimensions (dim_a, dim_b).
    pub fn partial_transpose_second(&self, dim_a: usize, dim_b: usize) -> Mat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert_eq!(self.cols, dim_a * dim_b);
        Mat::from_fn(self.rows, self.cols, |r, c| {
            let (i, p) = (r / dim_b, r % dim_b);
            let (j, q) = (c / dim_b, c % dim_b);
            self.at(i * dim_b + q, j * dim_b + p).clone()
        })
    }

    /// Partial transpose in the first tensor factor.
    pub fn partial_transpose_first(&self, dim_a: usize, dim_b: usize) -> Mat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert_eq!(self.cols, dim_a * dim_b);
        Mat::from_fn(self.rows, self.cols, |r, c| {
            let (i, p) = (r / dim_b, r % dim_b);
            let (j, q) = (c / dim_b, c % dim_b);
            self.at(j * dim_b + p, i * dim_b + q).clone()
        })
    }

    /// Multiplication contraction `M_n (x) M_n -> M_n` sending `u (x) v` to
    /// `u * v`, applied to a Kronecker-indexed matrix.
    pub fn multiply_contract(&self, n: usize) -> Mat {
        assert_eq!(self.rows, n * n);
        assert_eq!(self.cols, n * n);
        Mat::from_fn(n, n, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..n {
                acc = acc.add(self.at(i * n + k, k * n + j));
            }
            acc
        })
    }

    /// Apply a trace-pairing functional `y -> tr(G y)` to the second tensor
    /// factor of a Kronecker-indexed matrix: maps `x (x) y` to `tr(G y) x`.
    pub fn contract_second_factor(&self, dim_a: usize, dim_b: usize, g: &Mat) -> Mat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert_eq!(self.cols, dim_a * dim_b);
        assert_eq!(g.rows(), dim_b);
        Mat::from_fn(dim_a, dim_a, |r, c| {
            let mut acc = Scalar::zero();
            for p in 0..dim_b {
                for q in 0..dim_b {
                    let coeff = g.at(q, p);
                    if coeff.is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.at(r * dim_b + p, c * dim_b + q).mul(coeff));
                }
            }
            acc
        })
    }

    /// Mirror of [`Self::contract_second_factor`] on the first factor.
    pub fn contract_first_factor(&self, dim_a: usize, dim_b: usize, g: &Mat) -> Mat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert_eq!(self.cols, dim_a * dim_b);
        assert_eq!(g.rows(), dim_a);
        Mat::from_fn(dim_b, dim_b, |p, q| {
            let mut acc = Scalar::zero();
            for r in 0..dim_a {
                for c in 0..dim_a {
                    let coeff = g.at(c, r);
                    if coeff.is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.at(r * dim_b + p, c * dim_b + q).mul(coeff));
                }
            }
            acc
        })
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in +");
        assert_eq!(self.cols, other.cols, "col mismatch in +");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in -");
        assert_eq!(self.cols, other.cols, "col mismatch in -");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|x| x.neg())
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in *");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// incremental span arithmetic over sparse vectors
// ---------------------------------------------------------------------------

/// A sparse exact vector keyed by coordinate index.
pub type SparseVec = std::collections::BTreeMap<usize, Scalar>;

pub fn sparse_axpy(target: &mut SparseVec, coeff: &Scalar, src: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    for (k, v) in src {
        let entry = target.entry(*k).or_insert_with(Scalar::zero);
        *entry = entry.add(&coeff.mul(v));
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Incremental row-space builder with membership tests. The stored basis is
/// kept fully reduced (each pivot coordinate appears in exactly one basis
/// vector), so reducing a vector touches only the pivots it actually hits.
pub struct SpanBuilder {
    /// reduced basis vectors, normalized to pivot value one
    basis: Vec<SparseVec>,
    /// pivot coordinate -> position in `basis`
    pivots: std::collections::BTreeMap<usize, usize>,
}

impl Default for SpanBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl SpanBuilder {
    pub fn new() -> SpanBuilder {
        SpanBuilder {
            basis: Vec::new(),
            pivots: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut residual = v.clone();
        // Fully reduced basis: an elimination step never reintroduces a
        // pivot coordinate below the one just cleared, so one ascending
        // sweep suffices.
        loop {
            let hit = residual
                .iter()
                .find_map(|(k, _)| self.pivots.get(k).map(|&pos| (*k, pos)));
            let Some((key, pos)) = hit else { break };
            let c = residual.get(&key).unwrap().clone();
            sparse_axpy(&mut residual, &c.neg(), &self.basis[pos]);
            debug_assert!(!residual.contains_key(&key));
        }
        residual
    }

    /// Insert a vector. Returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut residual = self.reduce(v);
        let Some((&pivot, _)) = residual.iter().next() else {
            return false;
        };
        let lead = residual.get(&pivot).unwrap().clone();
        let inv = lead.inv();
        for entry in residual.values_mut() {
            *entry = entry.mul(&inv);
        }
        // keep earlier basis vectors reduced against the new pivot
        let snapshot = residual.clone();
        for vec_r in self.basis.iter_mut() {
            if let Some(c) = vec_r.get(&pivot).cloned() {
                if !c.is_zero() {
                    sparse_axpy(vec_r, &c.neg(), &snapshot);
                }
            }
        }
        self.pivots.insert(pivot, self.basis.len());
        self.basis.push(residual);
        true
    }

    /// True when `v` already lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Span with full coordinate tracking over an explicitly inserted basis; used
/// to decompose new vectors over a chosen independent family.
pub struct CoordSolver {
    basis: Vec<SparseVec>,
    /// Row-reduced copies plus their coordinates over `basis`.
    reduced: Vec<(usize, SparseVec, Vec<Scalar>)>,
}

impl CoordSolver {
    pub fn new() -> CoordSolver {
        CoordSolver {
            basis: Vec::new(),
            reduced: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Insert an independent vector; returns false (and ignores it) if it is
    /// dependent on the current basis.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (mut residual, mut combo) = self.reduce_with(&v);
        let Some((&pivot, _)) = residual.iter().next() else {
            return false;
        };
        let lead = residual.get(&pivot).unwrap().clone();
        let inv = lead.inv();
        for entry in residual.values_mut() {
            *entry = entry.mul(&inv);
        }
        // combo currently expresses v - residual; the reduced vector equals
        // (v - sum combo_i basis_i) / lead, so over the basis extended by v
        // its coordinates are (-combo_i / lead, ..., 1/lead).
        for c in combo.iter_mut() {
            *c = c.neg().mul(&inv);
        }
        combo.push(inv);
        // re-reduce earlier rows against the new pivot
        let snapshot = residual.clone();
        let combo_snapshot = combo.clone();
        for (_, vec_r, combo_r) in self.reduced.iter_mut() {
            if let Some(c) = vec_r.get(&pivot).cloned() {
                if !c.is_zero() {
                    sparse_axpy(vec_r, &c.neg(), &snapshot);
                    combo_r.resize(combo_snapshot.len(), Scalar::zero());
                    for (i, cc) in combo_snapshot.iter().enumerate() {
                        combo_r[i] = combo_r[i].sub(&c.mul(cc));
                    }
                }
            }
        }
        for (_, _, combo_r) in self.reduced.iter_mut() {
            combo_r.resize(combo.len(), Scalar::zero());
        }
        self.reduced.push((pivot, residual, combo));
        self.basis.push(v);
        true
    }

    fn reduce_with(&self, v: &SparseVec) -> (SparseVec, Vec<Scalar>) {
        let mut residual = v.clone();
        let mut coords = vec![Scalar::zero(); self.basis.len()];
        for (pivot, vec_r, combo_r) in &self.reduced {
            if let Some(c) = residual.get(pivot).cloned() {
                if !c.is_zero() {
                    sparse_axpy(&mut residual, &c.neg(), vec_r);
                    for (i, cc) in combo_r.iter().enumerate() {
                        coords[i] = coords[i].add(&c.mul(cc));
                    }
                }
            }
        }
        (residual, coords)
    }

    /// Express `v` over the inserted basis; None if it is outside the span.
    pub fn decompose(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let (residual, coords) = self.reduce_with(v);
        if residual.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}

impl Default for CoordSolver {
    fn default() -> Self {
        Self::new()
    }
}
