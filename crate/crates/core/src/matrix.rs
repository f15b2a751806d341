//! Dense exact matrices with reduced row echelon form, kernels and solving.
//!
//! Dense is deliberate: everything downstream works at desk scale
//! (dimensions of a few hundred at most), all arithmetic is exact.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Build from signed-integer rows, mostly for tests and fixtures.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            for &v in *row {
                entries.push(field.from_i64(v));
            }
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| self.field.neg(a)).collect();
        Matrix::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(r, c);
                    let v = f.add(cur, &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !f.is_zero(a) && !f.is_zero(&v[c]) {
                        acc = f.add(&acc, &f.mul(a, &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zero(self.field, self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                m.set(self.rows + r, c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(ro + r, co + c, b.get(r, c).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(self.field, rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                m.set(ri, ci, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot-column list.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize; // current pivot row
        for pc in 0..m.cols {
            if pr >= m.rows {
                break;
            }
            // find a nonzero entry in column pc at or below pr
            let mut sel = None;
            for r in pr..m.rows {
                if !f.is_zero(m.get(r, pc)) {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pr {
                for c in 0..m.cols {
                    let a = m.get(pr, c).clone();
                    let b = m.get(sel, c).clone();
                    m.set(pr, c, b);
                    m.set(sel, c, a);
                }
            }
            let inv = f.inv(m.get(pr, pc)).expect("nonzero pivot");
            for c in 0..m.cols {
                let v = f.mul(m.get(pr, c), &inv);
                m.set(pr, c, v);
            }
            for r in 0..m.rows {
                if r == pr || f.is_zero(m.get(r, pc)) {
                    continue;
                }
                let factor = m.get(r, pc).clone();
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(pr, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns of the result form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut cols = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (pi, &pc) in pivots.iter().enumerate() {
                // pivot row pi: x[pc] = -sum over free columns of entry*x[free]
                v[pc] = f.neg(r.get(pi, fc));
            }
            cols.push(v);
        }
        Matrix::from_columns(f, self.cols, &cols)
    }

    /// One solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {} rows vs rhs length {}",
                self.rows,
                b.len()
            )));
        }
        let sols = self.solve_matrix(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]))?;
        Ok(sols.map(|m| m.column(0)))
    }

    /// Solve `self * X = B` for all columns at once; `None` if any column
    /// is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve_matrix: {} rows vs rhs {} rows",
                self.rows,
                b.rows()
            )));
        }
        let f = self.field;
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut out = Matrix::zero(f, self.cols, b.cols());
        for (pi, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols() {
                out.set(pc, c, r.get(pi, self.cols + c).clone());
            }
        }
        Ok(Some(out))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self
            .solve_matrix(&Matrix::identity(self.field, self.rows))
            .expect("shapes agree")?;
        // solve_matrix returns None only on inconsistency; must also be full rank
        if self.mul(&sol).is_identity() {
            Some(sol)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A basis of the column space, as a matrix whose columns are the
    /// pivot columns of `self`.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, &pivots)
    }

    /// Flatten column-major (vec of a matrix as used for hom systems).
    pub fn vec_columns(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                v.push(self.get(r, c).clone());
            }
        }
        v
    }

    pub fn from_vec_columns(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        let mut m = Matrix::zero(field, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                m.set(r, c, v[c * rows + r].clone());
            }
        }
        m
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            acc = f.add(&acc, self.get(i, i));
        }
        acc
    }
}

/// Membership/span bookkeeping: an incrementally built subspace of k^n,
/// kept in column-echelon form for O(n·dim) reduction.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    field: FieldSpec,
    ambient: usize,
    /// echelon basis vectors; `leads[i]` is the pivot coordinate of basis[i],
    /// normalized to 1, and all other basis vectors are zero there.
    basis: Vec<Vec<Scalar>>,
    leads: Vec<usize>,
    /// expression of each echelon vector in the successfully inserted
    /// vectors, so `coordinates` can answer in the caller's basis.
    combos: Vec<Vec<Scalar>>,
}

impl SpanTracker {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        SpanTracker {
            field,
            ambient,
            basis: Vec::new(),
            leads: Vec::new(),
            combos: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduce `v` against the current basis; the remainder is zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_with_factors(v).0
    }

    fn reduce_with_factors(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let f = self.field;
        let mut v = v.to_vec();
        let mut factors = vec![f.zero(); self.basis.len()];
        for (i, (b, &lead)) in self.basis.iter().zip(&self.leads).enumerate() {
            if f.is_zero(&v[lead]) {
                continue;
            }
            let factor = v[lead].clone();
            factors[i] = factor.clone();
            for j in 0..self.ambient {
                if !f.is_zero(&b[j]) {
                    v[j] = f.sub(&v[j], &f.mul(&factor, &b[j]));
                }
            }
        }
        (v, factors)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let (mut r, factors) = self.reduce_with_factors(v);
        let lead = match r.iter().position(|x| !f.is_zero(x)) {
            Some(l) => l,
            None => return false,
        };
        let n = self.basis.len();
        // r = v - sum factors[i]*basis[i]; express in inserted vectors
        let mut combo = vec![f.zero(); n + 1];
        combo[n] = f.one();
        for (i, factor) in factors.iter().enumerate() {
            if f.is_zero(factor) {
                continue;
            }
            for (j, c) in self.combos[i].iter().enumerate() {
                combo[j] = f.sub(&combo[j], &f.mul(factor, c));
            }
        }
        let inv = f.inv(&r[lead]).expect("nonzero lead");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for x in combo.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for c in self.combos.iter_mut() {
            c.push(f.zero());
        }
        // back-reduce existing basis vectors at the new lead
        for (b, cb) in self.basis.iter_mut().zip(self.combos.iter_mut()) {
            if !f.is_zero(&b[lead]) {
                let factor = b[lead].clone();
                for i in 0..self.ambient {
                    if !f.is_zero(&r[i]) {
                        b[i] = f.sub(&b[i], &f.mul(&factor, &r[i]));
                    }
                }
                for (i, c) in combo.iter().enumerate() {
                    if !f.is_zero(c) {
                        cb[i] = f.sub(&cb[i], &f.mul(&factor, c));
                    }
                }
            }
        }
        self.basis.push(r);
        self.leads.push(lead);
        self.combos.push(combo);
        true
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Express `v` as a combination of the vectors that were successfully
    /// inserted, if it lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let (rem, factors) = self.reduce_with_factors(v);
        if !rem.iter().all(|x| f.is_zero(x)) {
            return None;
        }
        let mut coords = vec![f.zero(); self.basis.len()];
        for (i, factor) in factors.iter().enumerate() {
            if f.is_zero(factor) {
                continue;
            }
            for (j, c) in self.combos[i].iter().enumerate() {
                coords[j] = f.add(&coords[j], &f.mul(factor, c));
            }
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(q(), 2);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let m = Matrix::zero(q(), 3, 4);
        let (r, p) = m.rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // hand Gaussian elimination: [[1,2],[2,4]] -> [[1,2],[0,0]]
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_i64(q(), &[&[2, 4, 1], &[1, 3, 0], &[3, 7, 1]]);
        let (r, _) = m.rref();
        let (rr, _) = r.rref();
        assert_eq!(r, rr);
    }

    #[test]
    fn kernel_identity_empty() {
        let m = Matrix::identity(q(), 3);
        assert_eq!(m.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_zero_full() {
        let m = Matrix::zero(q(), 4, 4);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 4);
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn kernel_gf7() {
        // [[1,1]] over GF(7): kernel spanned by (6,1)
        let f = FieldSpec::gf(7).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        // normalize: second coordinate times inverse
        let s = f.inv(&v[1]).unwrap();
        assert_eq!(f.mul(&v[0], &s), f.from_i64(6));
        assert_eq!(f.mul(&v[1], &s), f.one());
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
    }

    #[test]
    fn solve_identity() {
        let m = Matrix::identity(q(), 3);
        let b = vec![q().from_i64(1), q().from_i64(-2), q().from_i64(5)];
        assert_eq!(m.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::zero(q(), 2, 2);
        let b = vec![q().from_i64(1), q().from_i64(0)];
        assert!(m.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_gf5() {
        // [[2]] x = [3] over GF(5) -> x = 4
        let f = FieldSpec::gf(5).unwrap();
        let m = Matrix::from_i64(f, &[&[2]]);
        let x = m.solve(&[f.from_i64(3)]).unwrap().unwrap();
        assert_eq!(x, vec![f.from_i64(4)]);
    }

    #[test]
    fn solve_shape_error() {
        let m = Matrix::identity(q(), 2);
        assert!(m.solve(&[q().zero()]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn span_tracker() {
        let f = q();
        let mut t = SpanTracker::new(f, 3);
        assert!(t.insert(&[f.from_i64(1), f.from_i64(1), f.from_i64(0)]));
        assert!(t.insert(&[f.from_i64(0), f.from_i64(1), f.from_i64(1)]));
        assert!(!t.insert(&[f.from_i64(1), f.from_i64(2), f.from_i64(1)]));
        assert_eq!(t.dim(), 2);
        let c = t
            .coordinates(&[f.from_i64(1), f.from_i64(2), f.from_i64(1)])
            .unwrap();
        assert_eq!(c, vec![f.one(), f.one()]);
        assert!(t
            .coordinates(&[f.zero(), f.zero(), f.one()])
            .is_none());
    }
}
