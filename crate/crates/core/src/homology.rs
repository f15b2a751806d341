//! Projective covers, resolutions, Ext spaces, syzygies and the
//! Auslander-Reiten translates.
//!
//! Injective-side constructions route uniformly through the duality and
//! the opposite algebra; there is no separate injective machinery.

use std::sync::Arc;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, SpanTracker};
use crate::module::{
    compose, direct_sum, hom_basis, kernel, radical_submodule, submodule, Morphism, MorphismSpace,
    Representation,
};

pub const DEFAULT_DIM_CAP: usize = 20;

/// A projective or global dimension that may have hit the search cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimBound {
    Finite(usize),
    /// the dimension is at least this cap; the search stopped here
    AtLeast(usize),
}

impl DimBound {
    pub fn as_finite(&self) -> Option<usize> {
        match self {
            DimBound::Finite(n) => Some(*n),
            DimBound::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for DimBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimBound::Finite(n) => write!(f, "{}", n),
            DimBound::AtLeast(n) => write!(f, ">={}", n),
        }
    }
}

/// Projective cover P(M) -> M, built from a greedy choice of
/// vertex-homogeneous generators of M modulo rad M. The source carries
/// summand provenance (one indecomposable projective per generator) and
/// the chosen vertex indices are returned alongside.
pub fn projective_cover(m: &Representation) -> Result<(Morphism, Vec<usize>)> {
    let alg = m.algebra().clone();
    let f = m.field();
    if m.dim() == 0 {
        let z = Representation::zero_module(alg);
        return Ok((Morphism::zero(z, m.clone()), Vec::new()));
    }
    let rad = radical_submodule(m);
    // span of rad M plus everything generated so far
    let mut covered = SpanTracker::new(f, m.dim());
    for c in 0..rad.cols() {
        covered.insert(&rad.column(c));
    }
    // generated submodule alone (for the final surjectivity check)
    let mut generated = SpanTracker::new(f, m.dim());
    let mut parts: Vec<Representation> = Vec::new();
    let mut part_vertices: Vec<usize> = Vec::new();
    let mut columns_per_part: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let n_idem = alg.idempotents().len();
    let idem_actions: Vec<Matrix> = (0..n_idem)
        .map(|k| m.act_elem(&alg.unit_elem(alg.idempotents()[k])))
        .collect();
    while covered.dim() < m.dim() {
        // find a homogeneous element outside rad M + generated
        let mut found = None;
        'search: for k in 0..n_idem {
            for j in 0..m.dim() {
                let v = idem_actions[k].column(j);
                if !covered.contains(&v) {
                    found = Some((k, v));
                    break 'search;
                }
            }
        }
        let (k, v) = found.ok_or_else(|| {
            Error::Internal("no homogeneous generator outside the covered span".into())
        })?;
        let proj = Representation::projective_at(&alg, k);
        // the projective is cut out of the regular module; its basis
        // elements are algebra elements acting on the generator
        let reg = Representation::regular(alg.clone());
        let span = alg.right_mult(&alg.unit_elem(alg.idempotents()[k]));
        let (_, incl) = submodule(&reg, &span)?;
        let mut cols = Vec::with_capacity(proj.dim());
        for t in 0..proj.dim() {
            let elem = incl.mat.column(t);
            cols.push(m.act_elem(&elem).mul_vec(&v));
        }
        for col in &cols {
            covered.insert(col);
            generated.insert(col);
        }
        parts.push(proj);
        part_vertices.push(k);
        columns_per_part.push(cols);
    }
    if generated.dim() < m.dim() {
        // Nakayama: generated + rad M = M forces generated = M
        return Err(Error::Internal(
            "cover generators do not generate despite covering the top".into(),
        ));
    }
    let (p, _, _) = direct_sum(&parts)?;
    let mut mat = Matrix::zero(f, m.dim(), p.dim());
    let mut off = 0;
    for cols in &columns_per_part {
        for col in cols {
            for (r, s) in col.iter().enumerate() {
                mat.set(r, off, s.clone());
            }
            off += 1;
        }
    }
    let cover = Morphism::new(p, m.clone(), mat)?;
    Ok((cover, part_vertices))
}

/// First syzygy: kernel of the projective cover.
pub fn syzygy(m: &Representation) -> Result<Representation> {
    let (cover, _) = projective_cover(m)?;
    Ok(kernel(&cover)?.0)
}

pub fn syzygy_power(m: &Representation, k: usize) -> Result<Representation> {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = syzygy(&cur)?;
    }
    Ok(cur)
}

/// First cosyzygy, via the dual module over the opposite algebra.
pub fn cosyzygy(m: &Representation) -> Result<Representation> {
    let op = Arc::new(m.algebra().opposite());
    let dual = m.dual_over(op);
    let om = syzygy(&dual)?;
    Ok(om.dual_over(m.algebra().clone()))
}

pub fn cosyzygy_power(m: &Representation, k: usize) -> Result<Representation> {
    let op = Arc::new(m.algebra().opposite());
    let dual = m.dual_over(op);
    let om = syzygy_power(&dual, k)?;
    Ok(om.dual_over(m.algebra().clone()))
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    Ok(syzygy(m)?.dim() == 0)
}

pub fn is_injective(m: &Representation) -> Result<bool> {
    Ok(cosyzygy(m)?.dim() == 0)
}

/// Every indecomposable projective is injective.
pub fn is_selfinjective(alg: &Arc<AlgebraTable>) -> Result<bool> {
    for k in 0..alg.idempotents().len() {
        let p = Representation::projective_at(alg, k);
        if !is_injective(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A (finite initial segment of a) minimal projective resolution:
/// `aug: P_0 -> M` and `diffs[i]: P_{i+1} -> P_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Representation,
    pub aug: Morphism,
    pub diffs: Vec<Morphism>,
    /// true when the last kernel is zero, i.e. the resolution is
    /// complete rather than truncated
    pub complete: bool,
}

impl Resolution {
    pub fn terms(&self) -> Vec<&Representation> {
        let mut v = vec![&self.aug.source];
        for d in &self.diffs {
            v.push(&d.source);
        }
        v
    }

    /// d∘d = 0 and exactness at interior terms, checked exactly.
    pub fn verify_exact(&self) -> Result<bool> {
        let mut prev: &Morphism = &self.aug;
        for d in &self.diffs {
            let comp = compose(d, prev);
            if !comp.is_zero() {
                return Ok(false);
            }
            let (ker, _) = kernel(prev)?;
            if d.rank() != ker.dim() {
                return Ok(false);
            }
            prev = d;
        }
        Ok(true)
    }
}

/// Minimal resolution by iterated projective covers, truncated at
/// `cap` differentials.
pub fn projective_resolution(m: &Representation, cap: usize) -> Result<Resolution> {
    let (aug, _) = projective_cover(m)?;
    let mut diffs = Vec::new();
    let (mut cur, mut incl) = kernel(&aug)?;
    let mut complete = cur.dim() == 0;
    while !complete && diffs.len() < cap {
        let (cover, _) = projective_cover(&cur)?;
        diffs.push(compose(&cover, &incl));
        let (next, next_incl) = kernel(&cover)?;
        incl = next_incl;
        cur = next;
        complete = cur.dim() == 0;
    }
    Ok(Resolution {
        module: m.clone(),
        aug,
        diffs,
        complete,
    })
}

/// Size budget for dimension searches: once a syzygy outgrows this,
/// the search reports an `AtLeast` bound instead of grinding on.
/// Infinite-global-dimension algebras can have syzygies that double in
/// size each step, so a pure length cap is not enough.
pub const SYZYGY_SIZE_BUDGET: usize = 256;

/// Projective dimension, capped in length and in syzygy size.
pub fn proj_dim(m: &Representation, cap: usize) -> Result<DimBound> {
    if m.dim() == 0 {
        return Ok(DimBound::Finite(0));
    }
    let mut cur = m.clone();
    for d in 0..=cap {
        if cur.dim() > SYZYGY_SIZE_BUDGET {
            return Ok(DimBound::AtLeast(d));
        }
        cur = syzygy(&cur)?;
        if cur.dim() == 0 {
            return Ok(DimBound::Finite(d));
        }
    }
    Ok(DimBound::AtLeast(cap))
}

/// Global dimension: the maximum over the simple modules, capped.
pub fn global_dim(alg: &Arc<AlgebraTable>, cap: usize) -> Result<DimBound> {
    let mut best = 0usize;
    for k in 0..alg.idempotents().len() {
        let s = Representation::simple_at(alg, k);
        match proj_dim(&s, cap)? {
            DimBound::Finite(d) => best = best.max(d),
            DimBound::AtLeast(c) => return Ok(DimBound::AtLeast(c)),
        }
    }
    Ok(DimBound::Finite(best))
}

/// dim Ext^i(M, N) as cohomology of Hom(P_., N) over the minimal
/// resolution.
pub fn ext_dim(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(hom_basis(m, n)?.dim());
    }
    let res = projective_resolution(m, i + 1)?;
    let terms = res.terms();
    if terms.len() <= i {
        // resolution ended before level i
        return Ok(0);
    }
    let h_i = hom_basis(terms[i], n)?;
    // outgoing map: precompose with d_{i+1} (absent when the
    // resolution ends at i)
    let ker_dim = if terms.len() > i + 1 {
        induced_map(&h_i, &hom_basis(terms[i + 1], n)?, &res.diffs[i])?
            .kernel_basis()
            .cols()
    } else {
        h_i.dim()
    };
    // incoming map: precompose with d_i
    let prev = if i == 1 {
        hom_basis(terms[0], n)?
    } else {
        hom_basis(terms[i - 1], n)?
    };
    let im_rank = induced_map(&prev, &h_i, &res.diffs[i - 1])?.rank();
    Ok(ker_dim - im_rank)
}

/// Matrix of "precompose with d": Hom(target(d), N) -> Hom(source(d), N)
/// in the two hom bases.
pub(crate) fn induced_map(
    from: &MorphismSpace,
    to: &MorphismSpace,
    d: &Morphism,
) -> Result<Matrix> {
    let f = from.source.field();
    let mut out = Matrix::zero(f, to.dim(), from.dim());
    for (j, b) in from.basis.iter().enumerate() {
        let img = compose(d, b);
        let coords = to
            .coordinates(&img)
            .ok_or_else(|| Error::Internal("induced image escaped the hom space".into()))?;
        for (r, c) in coords.into_iter().enumerate() {
            out.set(r, j, c);
        }
    }
    Ok(out)
}

/// Ext^1(M, N) presented at cocycle level: classes live in
/// Hom(ΩM, N) modulo restrictions from Hom(P_0, N).
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// projective cover P_0 -> M
    pub cover: Morphism,
    /// inclusion ΩM -> P_0
    pub incl: Morphism,
    pub syzygy: Representation,
    /// hom space Hom(ΩM, N)
    pub hom: MorphismSpace,
    /// coordinates (in `hom`) of the coboundary subspace
    pub coboundaries: Matrix,
    /// one cocycle representative per Ext basis class
    pub classes: Vec<Morphism>,
}

impl Ext1 {
    /// Coordinates of the class of a cocycle modulo coboundaries, in
    /// the basis `classes`.
    pub fn class_coordinates(&self, cocycle: &Morphism) -> Option<Vec<Scalar>> {
        let f = self.hom.source.field();
        let coords = self.hom.coordinates(cocycle)?;
        let mut t = SpanTracker::new(f, self.hom.dim());
        for c in 0..self.coboundaries.cols() {
            t.insert(&self.coboundaries.column(c));
        }
        let nb = t.dim();
        let mut class_idx = Vec::new();
        for m in &self.classes {
            let cc = self.hom.coordinates(m)?;
            if t.insert(&cc) {
                class_idx.push(t.dim() - 1);
            }
        }
        let full = t.coordinates(&coords)?;
        let _ = nb;
        Some(class_idx.iter().map(|&k| full[k].clone()).collect())
    }
}

/// Ext^1 with explicit cocycle representatives.
pub fn ext1_with_cocycles(m: &Representation, n: &Representation) -> Result<Ext1> {
    ext1_from_cover(m, n, None)
}

/// Same, but over a caller-supplied projective presentation of M
/// (used for the non-minimal-resolution oracle).
pub fn ext1_from_cover(
    m: &Representation,
    n: &Representation,
    cover: Option<Morphism>,
) -> Result<Ext1> {
    let cover = match cover {
        Some(c) => c,
        None => projective_cover(m)?.0,
    };
    let (om, incl) = kernel(&cover)?;
    let hom = hom_basis(&om, n)?;
    let h_p0 = hom_basis(&cover.source, n)?;
    // restriction along the inclusion: Hom(P0, N) -> Hom(ΩM, N)
    let restr = induced_map(&h_p0, &hom, &incl)?;
    let f = m.field();
    let mut t = SpanTracker::new(f, hom.dim());
    let mut cob_cols = Vec::new();
    for c in 0..restr.cols() {
        let col = restr.column(c);
        if t.insert(&col) {
            cob_cols.push(col);
        }
    }
    let cob_dim = t.dim();
    let mut classes = Vec::new();
    for i in 0..hom.dim() {
        let mut u = vec![f.zero(); hom.dim()];
        u[i] = f.one();
        if t.insert(&u) {
            classes.push(hom.combine(&u));
        }
    }
    Ok(Ext1 {
        dim: hom.dim() - cob_dim,
        cover,
        incl,
        syzygy: om,
        coboundaries: Matrix::from_columns(f, hom.dim(), &cob_cols),
        hom,
        classes,
    })
}

/// A deliberately non-minimal projective presentation: one projective
/// per vertex-homogeneous component of every basis vector.
pub fn non_minimal_cover(m: &Representation) -> Result<Morphism> {
    let alg = m.algebra().clone();
    let f = m.field();
    if m.dim() == 0 {
        let z = Representation::zero_module(alg);
        return Ok(Morphism::zero(z, m.clone()));
    }
    let reg = Representation::regular(alg.clone());
    let mut parts = Vec::new();
    let mut col_blocks: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for k in 0..alg.idempotents().len() {
        let e_act = m.act_elem(&alg.unit_elem(alg.idempotents()[k]));
        let span = alg.right_mult(&alg.unit_elem(alg.idempotents()[k]));
        let (_, p_incl) = submodule(&reg, &span)?;
        for j in 0..m.dim() {
            let v = e_act.column(j);
            if v.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            let proj = Representation::projective_at(&alg, k);
            let mut cols = Vec::with_capacity(proj.dim());
            for t in 0..proj.dim() {
                let elem = p_incl.mat.column(t);
                cols.push(m.act_elem(&elem).mul_vec(&v));
            }
            parts.push(proj);
            col_blocks.push(cols);
        }
    }
    let (p, _, _) = direct_sum(&parts)?;
    let mut mat = Matrix::zero(f, m.dim(), p.dim());
    let mut off = 0;
    for cols in &col_blocks {
        for col in cols {
            for (r, s) in col.iter().enumerate() {
                mat.set(r, off, s.clone());
            }
            off += 1;
        }
    }
    if mat.rank() != m.dim() {
        return Err(Error::Internal("non-minimal cover is not surjective".into()));
    }
    Morphism::new(p, m.clone(), mat)
}

/// Realize a cocycle φ: ΩY -> Z as a short exact sequence
/// 0 -> Z -> E -> Y -> 0 by pushout along the cover sequence of Y.
/// Returns (Z -> E, E -> Y).
pub fn extension_from_cocycle(ext: &Ext1, phi: &Morphism) -> Result<(Morphism, Morphism)> {
    let z = phi.target.clone();
    let y = ext.cover.target.clone();
    let p0 = ext.cover.source.clone();
    let f = z.field();
    if phi.source.dim() != ext.syzygy.dim() {
        return Err(Error::Precondition(
            "cocycle source must be the syzygy of the cover".into(),
        ));
    }
    let (sum, injs, _) = direct_sum(&[z.clone(), p0.clone()])?;
    // relation submodule {(φw, -ιw)}: image of ΩY -> Z ⊕ P0
    let rel = phi.mat.vstack(&ext.incl.mat.neg());
    let (e, proj) = crate::module::quotient(&sum, &rel)?;
    // Z -> E
    let f_map = compose(&injs[0], &proj);
    // E -> Y induced by (z, p) -> cover(p); solve g∘proj = [0 | cover]
    let g_on_sum = Matrix::zero(f, y.dim(), z.dim()).hstack(&ext.cover.mat);
    let g_mat = solve_right_factor(&proj.mat, &g_on_sum)?;
    let g_map = Morphism::new(e, y, g_mat)?;
    if !f_map.verify() || !g_map.verify() {
        return Err(Error::Internal("pushout maps fail the intertwining check".into()));
    }
    Ok((f_map, g_map))
}

/// Solve X * proj = target for X, given that proj has full row rank.
fn solve_right_factor(proj: &Matrix, target: &Matrix) -> Result<Matrix> {
    // transpose: proj^T X^T = target^T
    let sol = proj
        .transpose()
        .solve_matrix(&target.transpose())?
        .ok_or_else(|| Error::Internal("map does not factor through the quotient".into()))?;
    Ok(sol.transpose())
}

/// Hom(M, A) as a left module over the opposite algebra.
fn hom_into_regular_op(
    m: &Representation,
    op: &Arc<AlgebraTable>,
) -> Result<(Representation, MorphismSpace)> {
    let alg = m.algebra().clone();
    let f = m.field();
    let reg = Representation::regular(alg.clone());
    let h = hom_basis(m, &reg)?;
    let d = h.dim();
    let mut tr = SpanTracker::new(f, reg.dim() * m.dim());
    for b in &h.basis {
        tr.insert(&b.mat.vec_columns());
    }
    let mut action = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        // right action by b_i: φ -> (x -> φ(x) * b_i)
        let rm = alg.right_mult(&alg.unit_elem(i));
        let mut cols = Vec::with_capacity(d);
        for b in &h.basis {
            let img = rm.mul(&b.mat);
            let coords = tr
                .coordinates(&img.vec_columns())
                .ok_or_else(|| Error::Internal("right action left the hom space".into()))?;
            cols.push(coords);
        }
        action.push(Matrix::from_columns(f, d, &cols));
    }
    let rep = Representation::new(op.clone(), action)?;
    Ok((rep, h))
}

/// Nakayama functor ν = D Hom(−, A).
pub fn nakayama(m: &Representation) -> Result<Representation> {
    let op = Arc::new(m.algebra().opposite());
    let (h_op, _) = hom_into_regular_op(m, &op)?;
    Ok(h_op.dual_over(m.algebra().clone()))
}

/// Transpose over the opposite algebra: cokernel of
/// Hom(P0, A) -> Hom(P1, A) from the minimal presentation.
pub fn transpose(m: &Representation) -> Result<Representation> {
    let op = Arc::new(m.algebra().opposite());
    transpose_over(m, &op)
}

pub fn transpose_over(m: &Representation, op: &Arc<AlgebraTable>) -> Result<Representation> {
    let (cover, _) = projective_cover(m)?;
    let (om, incl) = kernel(&cover)?;
    let (cover1, _) = projective_cover(&om)?;
    let d = compose(&cover1, &incl); // P1 -> P0
    let (h0, h0_space) = hom_into_regular_op(&cover.source, op)?;
    let (h1, h1_space) = hom_into_regular_op(&cover1.source, op)?;
    let dmat = induced_map(&h0_space, &h1_space, &d)?;
    let dstar = Morphism::new(h0, h1, dmat)?;
    Ok(crate::module::cokernel(&dstar)?.0)
}

/// Strip the summands of `m` satisfying `drop`; returns the remaining
/// sum and the total dimension removed.
fn strip_summands(
    m: &Representation,
    seed: u64,
    drop: impl Fn(&Representation) -> Result<bool>,
) -> Result<(Representation, usize)> {
    let dec = crate::decompose::decompose(m, seed)?;
    let mut keep = Vec::new();
    let mut removed = 0usize;
    for piece in &dec.pieces {
        if drop(&piece.module)? {
            removed += piece.module.dim();
        } else {
            keep.push(piece.module.clone());
        }
    }
    if keep.is_empty() {
        return Ok((Representation::zero_module(m.algebra().clone()), removed));
    }
    let (sum, _, _) = direct_sum(&keep)?;
    Ok((sum, removed))
}

/// Auslander-Reiten translate τ = D Tr. Projective summands are
/// stripped first; the stripped dimension is returned.
pub fn tau(m: &Representation, seed: u64) -> Result<(Representation, usize)> {
    let (core, removed) = strip_summands(m, seed, is_projective)?;
    if core.dim() == 0 {
        return Ok((Representation::zero_module(m.algebra().clone()), removed));
    }
    let tr = transpose(&core)?;
    Ok((tr.dual_over(m.algebra().clone()), removed))
}

/// Inverse translate τ⁻¹ = Tr D. Injective summands are stripped
/// first; the stripped dimension is returned.
pub fn tau_inverse(m: &Representation, seed: u64) -> Result<(Representation, usize)> {
    let (core, removed) = strip_summands(m, seed, is_injective)?;
    if core.dim() == 0 {
        return Ok((Representation::zero_module(m.algebra().clone()), removed));
    }
    let op = Arc::new(m.algebra().opposite());
    let dual = core.dual_over(op);
    let tr = transpose_over(&dual, m.algebra())?;
    Ok((tr, removed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::decompose::{is_isomorphic, IsoResult};
    use crate::field::FieldSpec;
    use crate::module::top;
    use crate::quiver::{Path, Quiver, Relation, RelationSet};

    fn gf() -> FieldSpec {
        FieldSpec::gf(10007).unwrap()
    }

    fn example1(f: FieldSpec) -> Arc<AlgebraTable> {
        let q = Quiver::new(
            vec!["v".into()],
            vec![
                ("x".into(), "v".into(), "v".into()),
                ("y".into(), "v".into(), "v".into()),
            ],
        )
        .unwrap();
        let path = |names: &[&str]| {
            Path::from_names(
                &names.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                &q,
            )
            .unwrap()
        };
        let rels = RelationSet {
            relations: vec![
                Relation {
                    terms: vec![(f.one(), path(&["x", "x"]))],
                },
                Relation {
                    terms: vec![(f.one(), path(&["y", "y"]))],
                },
                Relation {
                    terms: vec![
                        (f.one(), path(&["x", "y"])),
                        (f.neg(&f.one()), path(&["y", "x"])),
                    ],
                },
            ],
        };
        Arc::new(build_algebra(&q, &rels, f).unwrap())
    }

    fn a2(f: FieldSpec) -> Arc<AlgebraTable> {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap();
        Arc::new(build_algebra(&q, &RelationSet::default(), f).unwrap())
    }

    #[test]
    fn cover_of_projective_is_iso() {
        let alg = a2(gf());
        let p1 = Representation::projective_at(&alg, 0);
        let (cover, verts) = projective_cover(&p1).unwrap();
        assert!(cover.verify());
        assert!(cover.is_iso());
        assert_eq!(verts, vec![0]);
        assert_eq!(syzygy(&p1).unwrap().dim(), 0);
        assert!(is_projective(&p1).unwrap());
    }

    #[test]
    fn example1_syzygies() {
        let alg = example1(gf());
        let reg = Representation::regular(alg.clone());
        let (y, _) = top(&reg).unwrap();
        let o1 = syzygy(&y).unwrap();
        assert_eq!(o1.dim(), 3);
        // Ω(Y) is the radical N
        let rad = radical_submodule(&reg);
        let (n, _) = submodule(&reg, &rad).unwrap();
        assert!(matches!(
            is_isomorphic(&o1, &n, 3).unwrap(),
            IsoResult::Yes(_)
        ));
        let o2 = syzygy(&o1).unwrap();
        assert_eq!(o2.dim(), 5);
    }

    #[test]
    fn cosyzygy_of_injective_vanishes() {
        let alg = a2(gf());
        let i2 = Representation::injective_at(&alg, 1);
        assert_eq!(cosyzygy(&i2).unwrap().dim(), 0);
        assert!(is_injective(&i2).unwrap());
        let s1 = Representation::simple_at(&alg, 0);
        assert!(is_injective(&s1).unwrap());
        let s2 = Representation::simple_at(&alg, 1);
        assert!(!is_injective(&s2).unwrap());
    }

    #[test]
    fn example1_selfinjective() {
        assert!(is_selfinjective(&example1(gf())).unwrap());
        assert!(!is_selfinjective(&a2(gf())).unwrap());
    }

    #[test]
    fn dims_a2() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        assert_eq!(proj_dim(&s1, 20).unwrap(), DimBound::Finite(1));
        assert_eq!(global_dim(&alg, 20).unwrap(), DimBound::Finite(1));
        let p1 = Representation::projective_at(&alg, 0);
        assert_eq!(proj_dim(&p1, 20).unwrap(), DimBound::Finite(0));
    }

    #[test]
    fn example1_infinite_gldim_capped() {
        let alg = example1(gf());
        assert_eq!(global_dim(&alg, 6).unwrap(), DimBound::AtLeast(6));
    }

    #[test]
    fn resolution_exactness() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        let res = projective_resolution(&s1, 20).unwrap();
        assert!(res.complete);
        assert_eq!(res.diffs.len(), 1);
        assert!(res.verify_exact().unwrap());
    }

    #[test]
    fn ext_examples() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        let s2 = Representation::simple_at(&alg, 1);
        let p1 = Representation::projective_at(&alg, 0);
        assert_eq!(ext_dim(&s1, &s1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s2, 1).unwrap(), 1);
        assert_eq!(ext_dim(&s2, &s1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&p1, &s1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&p1, &s2, 1).unwrap(), 0);
        // Ext^0 is Hom
        assert_eq!(ext_dim(&s1, &s1, 0).unwrap(), 1);
    }

    #[test]
    fn ext1_minimal_vs_nonminimal() {
        let alg = example1(gf());
        let reg = Representation::regular(alg.clone());
        let (y, _) = top(&reg).unwrap();
        let rad = radical_submodule(&reg);
        let (n, _) = submodule(&reg, &rad).unwrap();
        for target in [&y, &n] {
            let min = ext1_with_cocycles(&y, target).unwrap();
            let nm_cover = non_minimal_cover(&y).unwrap();
            let nm = ext1_from_cover(&y, target, Some(nm_cover)).unwrap();
            assert_eq!(min.dim, nm.dim);
        }
    }

    #[test]
    fn split_extension_from_zero_cocycle() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        let s2 = Representation::simple_at(&alg, 1);
        let ext = ext1_with_cocycles(&s1, &s2).unwrap();
        assert_eq!(ext.dim, 1);
        let zero = Morphism::zero(ext.syzygy.clone(), s2.clone());
        let (f_map, g_map) = extension_from_cocycle(&ext, &zero).unwrap();
        assert_eq!(f_map.target.dim(), 2);
        // split: g has a right inverse
        let sec = crate::module::factor_right(&g_map, &Morphism::identity(&s1)).unwrap();
        assert!(sec.is_some());
        // nonzero cocycle gives a non-split extension with middle P(1)
        let phi = ext.classes[0].clone();
        let (f2, g2) = extension_from_cocycle(&ext, &phi).unwrap();
        assert!(f2.verify() && g2.verify());
        let p1 = Representation::projective_at(&alg, 0);
        assert!(matches!(
            is_isomorphic(&f2.target, &p1, 5).unwrap(),
            IsoResult::Yes(_)
        ));
        let sec2 = crate::module::factor_right(&g2, &Morphism::identity(&s1)).unwrap();
        assert!(sec2.is_none());
    }

    #[test]
    fn nakayama_sends_projective_to_injective() {
        let alg = a2(gf());
        let p1 = Representation::projective_at(&alg, 0);
        let i1 = Representation::injective_at(&alg, 0);
        let nu = nakayama(&p1).unwrap();
        assert!(matches!(
            is_isomorphic(&nu, &i1, 9).unwrap(),
            IsoResult::Yes(_)
        ));
    }

    #[test]
    fn nakayama_fixes_regular_for_selfinjective() {
        let alg = example1(gf());
        let reg = Representation::regular(alg.clone());
        let nu = nakayama(&reg).unwrap();
        assert!(matches!(
            is_isomorphic(&nu, &reg, 13).unwrap(),
            IsoResult::Yes(_)
        ));
    }

    #[test]
    fn tau_on_a2() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        let s2 = Representation::simple_at(&alg, 1);
        let (t, stripped) = tau(&s1, 21).unwrap();
        assert_eq!(stripped, 0);
        assert!(matches!(
            is_isomorphic(&t, &s2, 17).unwrap(),
            IsoResult::Yes(_)
        ));
        // τ of a projective is zero
        let p1 = Representation::projective_at(&alg, 0);
        let (tp, stripped_p) = tau(&p1, 22).unwrap();
        assert_eq!(tp.dim(), 0);
        assert_eq!(stripped_p, 2);
    }

    #[test]
    fn tau_inverse_roundtrip() {
        let alg = a2(gf());
        let s1 = Representation::simple_at(&alg, 0);
        let (t, _) = tau(&s1, 31).unwrap();
        let (back, _) = tau_inverse(&t, 32).unwrap();
        assert!(matches!(
            is_isomorphic(&back, &s1, 33).unwrap(),
            IsoResult::Yes(_)
        ));
    }

    #[test]
    fn tau_is_second_syzygy_for_symmetric_example1() {
        let alg = example1(gf());
        let reg = Representation::regular(alg.clone());
        let (y, _) = top(&reg).unwrap();
        let (ty, _) = tau(&y, 41).unwrap();
        assert_eq!(ty.dim(), 5);
        let o2 = syzygy_power(&y, 2).unwrap();
        assert!(matches!(
            is_isomorphic(&ty, &o2, 43).unwrap(),
            IsoResult::Yes(_)
        ));
        // τ ≅ ν Ω² over a self-injective algebra
        let nu_o2 = nakayama(&o2).unwrap();
        assert!(matches!(
            is_isomorphic(&ty, &nu_o2, 47).unwrap(),
            IsoResult::Yes(_)
        ));
    }

    #[test]
    fn proj_dim_bounded_by_global_dim() {
        let alg = a2(gf());
        let g = global_dim(&alg, 20).unwrap().as_finite().unwrap();
        for k in 0..2 {
            let s = Representation::simple_at(&alg, k);
            let d = proj_dim(&s, 20).unwrap().as_finite().unwrap();
            assert!(d <= g);
        }
    }
}
