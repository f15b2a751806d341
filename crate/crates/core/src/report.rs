//! Derived-equivalence invariants of endomorphism algebras and stable
//! endomorphism rings.
//!
//! The per-algebra block collects the numeric invariants that transfer
//! along the equivalences this toolkit certifies: dimension, number of
//! simples, Cartan data, global dimension, and quiver arrow counts read
//! off as Ext¹ dimensions between the simples. Quiver extraction stops
//! at arrow counts; presentations are not unique, invariants are.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::sync::Arc;

use crate::algebra::{int_determinant, AlgebraTable};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::SpanTracker;
use crate::module::{compose, hom_basis, Representation};
use crate::decompose::end_algebra;
use crate::homology::{ext_dim, global_dim, DimBound};

impl Serialize for DimBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DimBound", 2)?;
        match self {
            DimBound::Finite(n) => {
                st.serialize_field("kind", "finite")?;
                st.serialize_field("value", n)?;
            }
            DimBound::AtLeast(n) => {
                st.serialize_field("kind", "at_least")?;
                st.serialize_field("value", n)?;
            }
        }
        st.end()
    }
}

/// Invariants of one algebra. Field names are part of the report JSON
/// schema and stay stable.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraBlock {
    pub dimension: usize,
    pub simples: usize,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_det: i64,
    pub gl_dim: DimBound,
    /// arrow counts: `arrows[i][j]` = dim Ext¹(S_i, S_j)
    pub arrows: Vec<Vec<usize>>,
    pub arrows_total: usize,
}

impl std::fmt::Display for AlgebraBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "dimension      {}", self.dimension)?;
        writeln!(f, "simples        {}", self.simples)?;
        writeln!(f, "cartan matrix  {:?}", self.cartan)?;
        writeln!(f, "cartan det     {}", self.cartan_det)?;
        writeln!(f, "gl.dim         {}", self.gl_dim)?;
        write!(f, "arrows         {} {:?}", self.arrows_total, self.arrows)
    }
}

/// The invariant block of an algebra given by structure constants.
pub fn invariants(alg: &Arc<AlgebraTable>, cap: usize) -> Result<AlgebraBlock> {
    let cartan = alg.cartan_matrix()?;
    let cartan_det = int_determinant(&cartan);
    let gl_dim = global_dim(alg, cap)?;
    let n = alg.idempotents().len();
    let simples: Vec<Representation> = (0..n)
        .map(|k| Representation::simple_at(alg, k))
        .collect();
    let mut arrows = vec![vec![0usize; n]; n];
    let mut arrows_total = 0;
    for i in 0..n {
        for j in 0..n {
            let d = ext_dim(&simples[i], &simples[j], 1)?;
            arrows[i][j] = d;
            arrows_total += d;
        }
    }
    Ok(AlgebraBlock {
        dimension: alg.dim(),
        simples: n,
        cartan,
        cartan_det,
        gl_dim,
        arrows,
        arrows_total,
    })
}

/// Pairwise comparison of two invariant blocks against the transfer
/// bounds for a chain of length `n`.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub simples_equal: bool,
    pub cartan_det_equal: bool,
    /// |gl.dim A − gl.dim B| when both are finite
    pub gl_dim_gap: Option<usize>,
    pub gap_bound: usize,
    pub gap_ok: bool,
    pub mismatches: Vec<String>,
    pub verdicts: Vec<(String, bool)>,
}

impl Comparison {
    pub fn verdict(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (name, ok) in &self.verdicts {
            writeln!(f, "{:24} {}", name, if *ok { "pass" } else { "FAIL" })?;
        }
        for m in &self.mismatches {
            writeln!(f, "mismatch: {}", m)?;
        }
        write!(f, "verdict: {}", if self.verdict() { "pass" } else { "FAIL" })
    }
}

/// Compare two invariant blocks: same number of simples (equivalently,
/// of non-isomorphic indecomposable summands of the defining modules),
/// equal Cartan determinants, and global-dimension gap at most the
/// chain length `n`.
pub fn compare(a: &AlgebraBlock, b: &AlgebraBlock, n: usize) -> Comparison {
    let mut mismatches = Vec::new();
    let simples_equal = a.simples == b.simples;
    if !simples_equal {
        mismatches.push(format!("simples {} vs {}", a.simples, b.simples));
    }
    let cartan_det_equal = a.cartan_det == b.cartan_det;
    if !cartan_det_equal {
        mismatches.push(format!("cartan_det {} vs {}", a.cartan_det, b.cartan_det));
    }
    // Both finite: the gap must be within the bound. Both beyond the
    // search cap: consistent with equality (e.g. two infinite global
    // dimensions), so not a mismatch. Mixed: one side is provably or
    // possibly far above the other; refuse to certify.
    let (gl_dim_gap, gap_ok) = match (a.gl_dim, b.gl_dim) {
        (DimBound::Finite(x), DimBound::Finite(y)) => {
            (Some(x.abs_diff(y)), x.abs_diff(y) <= n)
        }
        (DimBound::AtLeast(_), DimBound::AtLeast(_)) => (None, true),
        _ => (None, false),
    };
    if !gap_ok {
        mismatches.push(format!(
            "gl.dim gap: {} vs {} not within bound {}",
            a.gl_dim, b.gl_dim, n
        ));
    }
    let verdicts = vec![
        ("simples".to_string(), simples_equal),
        ("cartan_det".to_string(), cartan_det_equal),
        ("gl_dim_gap".to_string(), gap_ok),
    ];
    Comparison {
        simples_equal,
        cartan_det_equal,
        gl_dim_gap,
        gap_bound: n,
        gap_ok,
        mismatches,
        verdicts,
    }
}

/// End(M) together with the ideal of endomorphisms factoring through a
/// projective module and the quotient algebra on a complement basis.
#[derive(Clone, Debug)]
pub struct StableEndAlgebra {
    pub end_table: AlgebraTable,
    /// basis of the ideal, as coordinate vectors in the End basis
    pub ideal: Vec<Vec<Scalar>>,
    /// None exactly when every endomorphism factors through a
    /// projective, i.e. the stable endomorphism algebra is zero
    pub quotient: Option<AlgebraTable>,
}

impl StableEndAlgebra {
    pub fn quotient_dim(&self) -> usize {
        self.quotient.as_ref().map_or(0, |q| q.dim())
    }
}

/// End(M) modulo the endomorphisms factoring through a projective
/// module. The ideal is spanned by all composites M → P → M over the
/// indecomposable projectives P; the quotient basis starts with the
/// surviving summand idempotents, so the result is again a table with
/// primitive orthogonal idempotents.
pub fn stable_end(m: &Representation, seed: u64) -> Result<StableEndAlgebra> {
    let (table, basis) = end_algebra(m, seed)?;
    let f = m.field();
    let d = table.dim();
    let flat = m.dim() * m.dim();
    let mut coords = SpanTracker::new(f, flat);
    for b in &basis {
        coords.insert(&b.mat.vec_columns());
    }

    let alg = m.algebra().clone();
    let mut ideal_span = SpanTracker::new(f, d);
    let mut ideal: Vec<Vec<Scalar>> = Vec::new();
    for k in 0..alg.idempotents().len() {
        let p = Representation::projective_at(&alg, k);
        let to_p = hom_basis(m, &p)?;
        let from_p = hom_basis(&p, m)?;
        for a in &to_p.basis {
            for b in &from_p.basis {
                let c = coords
                    .coordinates(&compose(a, b).mat.vec_columns())
                    .ok_or_else(|| {
                        Error::Internal("projective composite escaped End".into())
                    })?;
                if ideal_span.insert(&c) {
                    ideal.push(c);
                }
            }
        }
    }

    // complement basis: classes of the surviving idempotents first,
    // then fill with remaining basis vectors
    let mut full = SpanTracker::new(f, d);
    for v in &ideal {
        full.insert(v);
    }
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    let mut quot_idem: Vec<usize> = Vec::new();
    for k in 0..table.idempotents().len() {
        let unit = table.unit_elem(k);
        if full.insert(&unit) {
            quot_idem.push(reps.len());
            reps.push(unit);
        }
    }
    for k in 0..d {
        let unit = table.unit_elem(k);
        if full.insert(&unit) {
            reps.push(unit);
        }
    }
    let qd = reps.len();
    let quotient = if qd == 0 {
        None
    } else {
        let mut mult = vec![Vec::new(); qd * qd];
        for i in 0..qd {
            for j in 0..qd {
                let prod = table.mul_elems(&reps[i], &reps[j]);
                let c = full.coordinates(&prod).ok_or_else(|| {
                    Error::Internal("quotient product escaped the span".into())
                })?;
                mult[i * qd + j] = c[ideal.len()..].to_vec();
            }
        }
        let labels = (0..qd).map(|k| format!("q_{}", k + 1)).collect();
        Some(AlgebraTable::from_parts(f, labels, mult, quot_idem, None)?)
    };
    Ok(StableEndAlgebra {
        end_table: table,
        ideal,
        quotient,
    })
}
