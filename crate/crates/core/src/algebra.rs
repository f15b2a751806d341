//! Finite-dimensional algebras presented by structure constants.
//!
//! The central type is [`AlgebraTable`]: an ordered basis, the structure
//! constants of the product, and the list of basis elements that are
//! primitive orthogonal idempotents summing to the identity.
//!
//! Product convention: `mul(i, j)` is the function composition "first
//! `b_j`, then `b_i`". For a path algebra this means the path of `b_j` is
//! traversed before the path of `b_i`, and the left action matrices of a
//! module then satisfy `act(x*y) = act(x)*act(y)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{Matrix, SpanTracker};
use crate::quiver::{enumerate_paths, Path, Quiver, RelationSet};

/// Quiver origin of an algebra basis, kept for fixture parsing and
/// reporting.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: Quiver,
    pub basis_paths: Vec<Path>,
}

#[derive(Clone, Debug)]
pub struct AlgebraTable {
    field: FieldSpec,
    labels: Vec<String>,
    /// `mult[i * dim + j]` holds the coordinates of `b_i * b_j`.
    mult: Vec<Vec<Scalar>>,
    /// indices of the basis elements that are the chosen primitive
    /// orthogonal idempotents; their sum is the identity
    idempotents: Vec<usize>,
    presentation: Option<Presentation>,
}

pub const DEFAULT_CLOSURE_CAP: usize = 30;

/// Hard stop for path enumeration, so inadmissible presentations with
/// exponentially many paths fail fast instead of exhausting memory.
const PATH_BUDGET: usize = 200_000;

impl AlgebraTable {
    pub fn from_parts(
        field: FieldSpec,
        labels: Vec<String>,
        mult: Vec<Vec<Scalar>>,
        idempotents: Vec<usize>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        let dim = labels.len();
        if mult.len() != dim * dim || mult.iter().any(|v| v.len() != dim) {
            return Err(Error::ShapeMismatch(
                "structure constant table has wrong shape".into(),
            ));
        }
        let a = AlgebraTable {
            field,
            labels,
            mult,
            idempotents,
            presentation,
        };
        a.check_field_size()?;
        Ok(a)
    }

    fn check_field_size(&self) -> Result<()> {
        if let FieldSpec::Gf(p) = self.field {
            if p <= self.dim() as u64 {
                return Err(Error::FieldTooSmall {
                    p,
                    dim: self.dim(),
                });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Same field, same structure constants, same idempotent choice
    /// (labels and provenance ignored).
    pub fn structurally_eq(&self, other: &AlgebraTable) -> bool {
        self.field == other.field
            && self.dim() == other.dim()
            && self.idempotents == other.idempotents
            && self.mult == other.mult
    }

    /// Coordinates of `b_i * b_j` (function order: `b_j` acts first).
    pub fn mul_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i * self.dim() + j]
    }

    pub fn zero_elem(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.zero_elem();
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    pub fn unit_elem(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_elem();
        v[i] = self.field.one();
        v
    }

    pub fn mul_elems(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let d = self.dim();
        let mut out = self.zero_elem();
        for i in 0..d {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..d {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let c = f.mul(&x[i], &y[j]);
                for (k, s) in self.mul_basis(i, j).iter().enumerate() {
                    if !f.is_zero(s) {
                        out[k] = f.add(&out[k], &f.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` in the basis.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| self.mul_elems(x, &self.unit_elem(j)))
            .collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    /// Matrix of right multiplication by `x` in the basis.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| self.mul_elems(&self.unit_elem(j), x))
            .collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    /// Exhaustive associativity check over all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j).to_vec();
                for k in 0..d {
                    let jk = self.mul_basis(j, k).to_vec();
                    let left = self.mul_elems(&ij, &self.unit_elem(k));
                    let right = self.mul_elems(&self.unit_elem(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Check the idempotent axioms: orthogonal idempotents summing to a
    /// two-sided identity.
    pub fn check_idempotents(&self) -> bool {
        let f = self.field;
        for (a, &i) in self.idempotents.iter().enumerate() {
            for (b, &j) in self.idempotents.iter().enumerate() {
                let p = self.mul_basis(i, j);
                let expected = if a == b {
                    self.unit_elem(i)
                } else {
                    self.zero_elem()
                };
                if p != expected.as_slice() {
                    return false;
                }
            }
        }
        let one = self.one();
        for k in 0..self.dim() {
            let u = self.unit_elem(k);
            if self.mul_elems(&one, &u) != u || self.mul_elems(&u, &one) != u {
                return false;
            }
        }
        let _ = f;
        true
    }

    /// Opposite algebra: same basis, transposed structure constants.
    pub fn opposite(&self) -> AlgebraTable {
        let d = self.dim();
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                mult[i * d + j] = self.mult[j * d + i].clone();
            }
        }
        AlgebraTable {
            field: self.field,
            labels: self.labels.clone(),
            mult,
            idempotents: self.idempotents.clone(),
            presentation: None,
        }
    }

    /// Trivial extension A ⋉ D(A) with product
    /// (λ,m)(λ',m') = (λλ', λm' + mλ').
    pub fn trivial_extension(&self) -> Result<AlgebraTable> {
        let d = self.dim();
        let f = self.field;
        let dd = 2 * d;
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("D({})", l)));
        let zero = vec![f.zero(); dd];
        let mut mult = vec![zero; dd * dd];
        let pad = |v: &[Scalar]| {
            let mut w = v.to_vec();
            w.resize(dd, f.zero());
            w
        };
        for i in 0..d {
            for j in 0..d {
                // b_i * b_j stays in A
                mult[i * dd + j] = pad(self.mul_basis(i, j));
                // b_i * phi_j: (b_i phi_j)(b_x) = phi_j(b_x b_i)
                let mut v = vec![f.zero(); dd];
                for x in 0..d {
                    v[d + x] = self.mul_basis(x, i)[j].clone();
                }
                mult[i * dd + (d + j)] = v;
                // phi_i * b_j: (phi_i b_j)(b_x) = phi_i(b_j b_x)
                let mut v = vec![f.zero(); dd];
                for x in 0..d {
                    v[d + x] = self.mul_basis(j, x)[i].clone();
                }
                mult[(d + i) * dd + j] = v;
                // phi * phi = 0 (already zero)
            }
        }
        AlgebraTable::from_parts(f, labels, mult, self.idempotents.clone(), None)
    }

    /// Basis of the Jacobson radical, as columns, computed from the
    /// radical of the trace form tr(L_x L_y) of the regular
    /// representation. Valid over Q and over GF(p) with p > dim, which
    /// `from_parts` enforces.
    pub fn radical_basis(&self) -> Matrix {
        let d = self.dim();
        let f = self.field;
        let lefts: Vec<Matrix> = (0..d).map(|i| self.left_mult(&self.unit_elem(i))).collect();
        let mut gram = Matrix::zero(f, d, d);
        for i in 0..d {
            for j in i..d {
                let t = lefts[i].mul(&lefts[j]).trace();
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        gram.kernel_basis()
    }

    /// Cartan matrix: entry (i,j) = multiplicity of the j-th simple in
    /// the i-th indecomposable projective, computed as
    /// dim e_j A e_i / dim End(S_j).
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let f = self.field;
        let n = self.idempotents.len();
        let rad = self.radical_basis();
        // dim End(S_j) = dim of e_j (A/rad) e_j
        let mut end_dims = vec![0usize; n];
        for (jj, &ej) in self.idempotents.iter().enumerate() {
            let mut t = SpanTracker::new(f, self.dim());
            for c in 0..rad.cols() {
                t.insert(&rad.column(c));
            }
            let rad_dim = t.dim();
            for k in 0..self.dim() {
                let v = self.mul_elems(
                    &self.unit_elem(ej),
                    &self.mul_elems(&self.unit_elem(k), &self.unit_elem(ej)),
                );
                t.insert(&v);
            }
            end_dims[jj] = t.dim() - rad_dim;
            if end_dims[jj] == 0 {
                return Err(Error::Internal("idempotent vanishes modulo radical".into()));
            }
        }
        let mut out = vec![vec![0i64; n]; n];
        for (ii, &ei) in self.idempotents.iter().enumerate() {
            for (jj, &ej) in self.idempotents.iter().enumerate() {
                let mut t = SpanTracker::new(f, self.dim());
                for k in 0..self.dim() {
                    let v = self.mul_elems(
                        &self.unit_elem(ej),
                        &self.mul_elems(&self.unit_elem(k), &self.unit_elem(ei)),
                    );
                    t.insert(&v);
                }
                let dim = t.dim();
                if dim % end_dims[jj] != 0 {
                    return Err(Error::Internal(
                        "hom dimension not divisible by simple endo dimension".into(),
                    ));
                }
                out[ii][jj] = (dim / end_dims[jj]) as i64;
            }
        }
        Ok(out)
    }

    pub fn cartan_determinant(&self) -> Result<i64> {
        let c = self.cartan_matrix()?;
        Ok(int_determinant(&c))
    }

    /// A small generating set of basis indices: the idempotents plus
    /// greedily added basis elements until the generated subalgebra is
    /// everything. For a quiver presentation this recovers vertices plus
    /// arrows.
    pub fn generators(&self) -> Vec<usize> {
        let d = self.dim();
        let mut gens: Vec<usize> = self.idempotents.clone();
        let mut span = self.closure_span(&gens);
        let mut next = 0usize;
        while span.dim() < d {
            while next < d && span.contains(&self.unit_elem(next)) {
                next += 1;
            }
            if next == d {
                break;
            }
            gens.push(next);
            span = self.closure_span(&gens);
        }
        gens
    }

    fn closure_span(&self, gens: &[usize]) -> SpanTracker {
        let mut t = SpanTracker::new(self.field, self.dim());
        t.insert(&self.one());
        for &g in gens {
            t.insert(&self.unit_elem(g));
        }
        loop {
            let before = t.dim();
            let basis = t.basis_matrix();
            'outer: for a in 0..basis.cols() {
                for b in 0..basis.cols() {
                    let p = self.mul_elems(&basis.column(a), &basis.column(b));
                    t.insert(&p);
                    if t.dim() == self.dim() {
                        break 'outer;
                    }
                }
            }
            if t.dim() == before {
                return t;
            }
        }
    }
}

/// Exact integer determinant by fraction-free Bareiss elimination.
pub fn int_determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Build the quotient of a path algebra by an admissible relation ideal.
///
/// Works by iterative linear closure: for n = 2, 3, ... the span of all
/// products u*rho*v of total length at most n is computed inside the
/// path space of length at most n; the process stops at the first n for
/// which every path of length n lies in that span. The basis is the
/// complement of the span among shorter paths.
pub fn build_algebra(q: &Quiver, rels: &RelationSet, f: FieldSpec) -> Result<AlgebraTable> {
    build_algebra_capped(q, rels, f, DEFAULT_CLOSURE_CAP)
}

pub fn build_algebra_capped(
    q: &Quiver,
    rels: &RelationSet,
    f: FieldSpec,
    cap: usize,
) -> Result<AlgebraTable> {
    rels.validate(q, f)?;
    for n in 2..=cap {
        let paths = enumerate_paths(q, n);
        if paths.len() > PATH_BUDGET {
            return Err(Error::NotAdmissible(cap));
        }
        let index: HashMap<Path, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let ideal = ideal_span(rels, f, n, &paths, &index);
        let long_paths: Vec<usize> = (0..paths.len()).filter(|&i| paths[i].len() == n).collect();
        let all_covered = long_paths.iter().all(|&i| {
            let mut v = vec![f.zero(); paths.len()];
            v[i] = f.one();
            ideal.contains(&v)
        });
        if !all_covered {
            continue;
        }
        return assemble_table(q, f, n, &paths, &index, &ideal);
    }
    Err(Error::NotAdmissible(cap))
}

fn ideal_span(
    rels: &RelationSet,
    f: FieldSpec,
    n: usize,
    paths: &[Path],
    index: &HashMap<Path, usize>,
) -> SpanTracker {
    let mut t = SpanTracker::new(f, paths.len());
    for rel in &rels.relations {
        let max_len = rel.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        let rel_src = rel.terms[0].1.source;
        let rel_tgt = rel.terms[0].1.target;
        for u in paths {
            if u.source != rel_tgt || u.len() + max_len > n {
                continue;
            }
            for v in paths {
                if v.target != rel_src || u.len() + max_len + v.len() > n {
                    continue;
                }
                // u * rho * v traverses v first, then rho, then u
                let mut vec = vec![f.zero(); paths.len()];
                for (c, p) in &rel.terms {
                    let mut arrows = v.arrows.clone();
                    arrows.extend_from_slice(&p.arrows);
                    arrows.extend_from_slice(&u.arrows);
                    let composed = Path {
                        source: v.source,
                        target: u.target,
                        arrows,
                    };
                    let idx = index[&composed];
                    vec[idx] = f.add(&vec[idx], c);
                }
                t.insert(&vec);
            }
        }
    }
    t
}

fn assemble_table(
    q: &Quiver,
    f: FieldSpec,
    n: usize,
    paths: &[Path],
    index: &HashMap<Path, usize>,
    ideal: &SpanTracker,
) -> Result<AlgebraTable> {
    // reduction tracker: ideal basis first, then accepted path units;
    // coordinates of any ambient vector then split into an ideal part
    // (dropped) and basis coordinates (kept).
    let mut red = SpanTracker::new(f, paths.len());
    let ideal_mat = ideal.basis_matrix();
    for c in 0..ideal_mat.cols() {
        assert!(red.insert(&ideal_mat.column(c)));
    }
    let ideal_dim = red.dim();
    let mut basis_paths: Vec<Path> = Vec::new();
    let mut basis_index_in_red: Vec<usize> = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let mut v = vec![f.zero(); paths.len()];
        v[i] = f.one();
        if red.insert(&v) {
            if p.len() >= n {
                return Err(Error::Internal(
                    "closure terminated but a maximal-length path survived reduction".into(),
                ));
            }
            basis_index_in_red.push(ideal_dim + basis_paths.len());
            basis_paths.push(p.clone());
        }
    }
    let dim = basis_paths.len();
    let labels: Vec<String> = basis_paths.iter().map(|p| p.label(q)).collect();
    let idempotents: Vec<usize> = (0..q.vertex_count()).collect();

    // reduce an ambient path-space vector to basis coordinates
    let reduce = |v: &[Scalar]| -> Vec<Scalar> {
        let coords = red
            .coordinates(v)
            .expect("reduction tracker spans the path space");
        basis_index_in_red
            .iter()
            .map(|&k| coords[k].clone())
            .collect()
    };

    // multiply a basis-coordinate element by a single arrow on the left
    // (append the arrow to each basis path) and reduce back to the basis
    let mul_by_arrow = |z: &[Scalar], arrow: usize| -> Vec<Scalar> {
        let mut ambient = vec![f.zero(); paths.len()];
        for (k, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            if let Some(ext) = basis_paths[k].then(arrow, q) {
                let idx = index[&ext];
                ambient[idx] = f.add(&ambient[idx], c);
            }
        }
        reduce(&ambient)
    };

    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        let p = &basis_paths[i];
        for j in 0..dim {
            let qpath = &basis_paths[j];
            let mut z = vec![f.zero(); dim];
            z[j] = f.one();
            if p.is_empty() {
                // e_v * q: survives only when q ends at v
                if qpath.target != p.source {
                    z = vec![f.zero(); dim];
                }
            } else {
                for &a in &p.arrows {
                    z = mul_by_arrow(&z, a);
                }
            }
            mult[i * dim + j] = z;
        }
    }
    AlgebraTable::from_parts(
        f,
        labels,
        mult,
        idempotents,
        Some(Presentation {
            quiver: q.clone(),
            basis_paths,
        }),
    )
}
