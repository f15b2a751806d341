//! JSON wire formats for algebras, modules and sequences.
//!
//! Scalars travel as strings ("1", "-3", "2/5") so exact rationals
//! round-trip; matrices are row-major lists of rows. Modules come in a
//! quiver form (dimension vector plus one matrix per arrow) and a
//! generic form (one matrix per algebra basis element).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{build_algebra_capped, AlgebraTable, DEFAULT_CLOSURE_CAP};
use crate::approx::SequenceData;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::module::{Morphism, Representation};
use crate::quiver::{Path, Quiver, Relation, RelationSet};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDto {
    Gf { p: u64 },
    Rational,
}

impl FieldDto {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        match self {
            FieldDto::Gf { p } => FieldSpec::gf(*p),
            FieldDto::Rational => Ok(FieldSpec::Rational),
        }
    }

    pub fn of(f: FieldSpec) -> FieldDto {
        match f {
            FieldSpec::Rational => FieldDto::Rational,
            FieldSpec::Gf(p) => FieldDto::Gf { p },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowDto {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverDto {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationTermDto {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub field: FieldDto,
    pub quiver: QuiverDto,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTermDto>>,
    #[serde(default)]
    pub closure_cap: Option<usize>,
}

pub fn algebra_from_dto(dto: &AlgebraDto) -> Result<Arc<AlgebraTable>> {
    let f = dto.field.to_spec()?;
    let arrows = dto
        .quiver
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
        .collect();
    let q = Quiver::new(dto.quiver.vertices.clone(), arrows)?;
    let mut relations = Vec::with_capacity(dto.relations.len());
    for rel in &dto.relations {
        let mut terms = Vec::with_capacity(rel.len());
        for term in rel {
            let c = f.parse(&term.coeff)?;
            let p = Path::from_names(&term.path, &q)?;
            terms.push((c, p));
        }
        relations.push(Relation { terms });
    }
    let rels = RelationSet { relations };
    let cap = dto.closure_cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    Ok(Arc::new(build_algebra_capped(&q, &rels, f, cap)?))
}

pub fn parse_algebra(text: &str) -> Result<Arc<AlgebraTable>> {
    let dto: AlgebraDto =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("algebra JSON: {}", e)))?;
    algebra_from_dto(&dto)
}

pub type MatrixRows = Vec<Vec<String>>;

pub fn matrix_to_rows(m: &Matrix) -> MatrixRows {
    let f = m.field();
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| f.format(m.get(r, c))).collect())
        .collect()
}

pub fn matrix_from_rows(f: FieldSpec, rows: &MatrixRows, nrows: usize, ncols: usize) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Input(format!(
            "matrix must be {} x {}",
            nrows, ncols
        )));
    }
    let mut out = Matrix::zero(f, nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            out.set(r, c, f.parse(s)?);
        }
    }
    Ok(out)
}

/// A module over an algebra already loaded elsewhere; `algebra` is an
/// id resolved by the caller. The quiver form gives `dims` per vertex
/// and one matrix per arrow; the generic form gives `dimension` and one
/// matrix per algebra basis label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub action: BTreeMap<String, MatrixRows>,
}

pub fn module_from_dto(dto: &ModuleDto, alg: &Arc<AlgebraTable>) -> Result<Representation> {
    let f = alg.field();
    if let Some(dims) = &dto.dims {
        let pres = alg.presentation().ok_or_else(|| {
            Error::Input("quiver-form module needs a quiver-presented algebra".into())
        })?;
        let q = pres.quiver.clone();
        for v in dims.keys() {
            if !q.vertices.contains(v) {
                return Err(Error::Input(format!("unknown vertex {:?} in dims", v)));
            }
        }
        let vdim: Vec<usize> = q
            .vertices
            .iter()
            .map(|v| dims.get(v).copied().unwrap_or(0))
            .collect();
        let total: usize = vdim.iter().sum();
        let offset: Vec<usize> = vdim
            .iter()
            .scan(0usize, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        // global matrix of each arrow, block from source to target
        let mut arrow_mats = Vec::with_capacity(q.arrows.len());
        for a in &q.arrows {
            let rows = dto.action.get(&a.name).ok_or_else(|| {
                Error::Input(format!("missing action matrix for arrow {:?}", a.name))
            })?;
            let block = matrix_from_rows(f, rows, vdim[a.target], vdim[a.source])?;
            let mut g = Matrix::zero(f, total, total);
            for r in 0..vdim[a.target] {
                for c in 0..vdim[a.source] {
                    g.set(offset[a.target] + r, offset[a.source] + c, block.get(r, c).clone());
                }
            }
            arrow_mats.push(g);
        }
        for name in dto.action.keys() {
            if q.arrow_index(name).is_err() {
                return Err(Error::Input(format!("unknown arrow {:?} in action", name)));
            }
        }
        // action of a basis path: arrows applied in traversal order
        let mut action = Vec::with_capacity(alg.dim());
        for p in &pres.basis_paths {
            let mut g = Matrix::zero(f, total, total);
            if p.is_empty() {
                for k in 0..vdim[p.source] {
                    g.set(offset[p.source] + k, offset[p.source] + k, f.one());
                }
            } else {
                g = arrow_mats[p.arrows[0]].clone();
                for &a in &p.arrows[1..] {
                    g = arrow_mats[a].mul(&g);
                }
            }
            action.push(g);
        }
        let rep = Representation::new(alg.clone(), action)?;
        if !rep.verify_action() {
            return Err(Error::Input(
                "arrow matrices do not satisfy the relations".into(),
            ));
        }
        Ok(rep)
    } else if let Some(n) = dto.dimension {
        let mut action = Vec::with_capacity(alg.dim());
        for label in alg.labels() {
            let rows = dto.action.get(label).ok_or_else(|| {
                Error::Input(format!("missing action matrix for basis element {:?}", label))
            })?;
            action.push(matrix_from_rows(f, rows, n, n)?);
        }
        let rep = Representation::new(alg.clone(), action)?;
        if !rep.verify_action() {
            return Err(Error::Input(
                "action matrices are not compatible with the structure constants".into(),
            ));
        }
        Ok(rep)
    } else {
        Err(Error::Input(
            "module needs either a dims table (quiver form) or a dimension (generic form)".into(),
        ))
    }
}

/// Serialize a module in the generic form.
pub fn module_to_dto(m: &Representation, algebra_id: Option<String>) -> ModuleDto {
    let alg = m.algebra();
    let action = alg
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), matrix_to_rows(m.action(i))))
        .collect();
    ModuleDto {
        algebra: algebra_id,
        dims: None,
        dimension: Some(m.dim()),
        action,
    }
}

pub fn parse_module(text: &str, alg: &Arc<AlgebraTable>) -> Result<Representation> {
    let dto: ModuleDto =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("module JSON: {}", e)))?;
    module_from_dto(&dto, alg)
}

/// A sequence X -> M_n -> ... -> M_1 -> Y with its approximation
/// target. `terms` lists module ids outside-in: X, the middles, then Y;
/// `maps` holds one matrix per junction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceDto {
    pub kind: String,
    pub target: String,
    pub terms: Vec<String>,
    pub maps: Vec<MatrixRows>,
}

pub fn sequence_from_dto(
    dto: &SequenceDto,
    mut resolve: impl FnMut(&str) -> Result<Representation>,
) -> Result<SequenceData> {
    match dto.kind.as_str() {
        "almost-dsplit" | "chain" => {}
        other => {
            return Err(Error::Input(format!(
                "unknown sequence kind {:?} (expected \"almost-dsplit\" or \"chain\")",
                other
            )))
        }
    }
    if dto.terms.len() < 3 {
        return Err(Error::Input("sequence needs at least three terms".into()));
    }
    if dto.kind == "almost-dsplit" && dto.terms.len() != 3 {
        return Err(Error::Input(
            "an almost-dsplit sequence has exactly one middle term".into(),
        ));
    }
    let terms: Vec<Representation> = dto
        .terms
        .iter()
        .map(|id| resolve(id))
        .collect::<Result<_>>()?;
    let target = resolve(&dto.target)?;
    if dto.maps.len() + 1 != terms.len() {
        return Err(Error::Input(format!(
            "{} terms need {} maps, got {}",
            terms.len(),
            terms.len() - 1,
            dto.maps.len()
        )));
    }
    let f = target.field();
    let mut maps = Vec::with_capacity(dto.maps.len());
    for (j, rows) in dto.maps.iter().enumerate() {
        let mat = matrix_from_rows(f, rows, terms[j + 1].dim(), terms[j].dim())?;
        maps.push(Morphism::new(terms[j].clone(), terms[j + 1].clone(), mat)?);
    }
    let x = terms[0].clone();
    let y = terms[terms.len() - 1].clone();
    let middles = terms[1..terms.len() - 1].to_vec();
    SequenceData::new(x, middles, y, maps, target)
}

pub fn sequence_to_dto(
    s: &SequenceData,
    term_ids: Vec<String>,
    target_id: String,
) -> SequenceDto {
    let kind = if s.middles.len() == 1 {
        "almost-dsplit"
    } else {
        "chain"
    };
    SequenceDto {
        kind: kind.into(),
        target: target_id,
        terms: term_ids,
        maps: s.maps.iter().map(|m| matrix_to_rows(&m.mat)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{ar_sequence, verify_almost_dsplit};
    use crate::module::radical_submodule;

    fn example1_text() -> &'static str {
        r#"{
            "field": {"kind": "gf", "p": 10007},
            "quiver": {
                "vertices": ["v"],
                "arrows": [
                    {"name": "x", "from": "v", "to": "v"},
                    {"name": "y", "from": "v", "to": "v"}
                ]
            },
            "relations": [
                [{"coeff": "1", "path": ["x", "x"]}],
                [{"coeff": "1", "path": ["y", "y"]}],
                [{"coeff": "1", "path": ["x", "y"]}, {"coeff": "-1", "path": ["y", "x"]}]
            ]
        }"#
    }

    #[test]
    fn algebra_round_trip() {
        let alg = parse_algebra(example1_text()).unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.radical_basis().cols(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            parse_algebra("{"),
            Err(Error::Input(_))
        ));
        // non-admissible: a loop with no relations never closes
        let text = r#"{
            "field": {"kind": "rational"},
            "quiver": {"vertices": ["v"], "arrows": [{"name": "x", "from": "v", "to": "v"}]},
            "relations": []
        }"#;
        assert!(matches!(parse_algebra(text), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn quiver_form_module() {
        let alg = parse_algebra(example1_text()).unwrap();
        let f = alg.field();
        // the regular module as a quiver-form input: dim 4 at "v"
        let reg = Representation::regular(alg.clone());
        let mut action = BTreeMap::new();
        let xi = alg
            .labels()
            .iter()
            .position(|l| l == "x")
            .unwrap();
        let yi = alg.labels().iter().position(|l| l == "y").unwrap();
        action.insert("x".to_string(), matrix_to_rows(reg.action(xi)));
        action.insert("y".to_string(), matrix_to_rows(reg.action(yi)));
        let dto = ModuleDto {
            algebra: None,
            dims: Some([("v".to_string(), 4usize)].into_iter().collect()),
            dimension: None,
            action,
        };
        let m = module_from_dto(&dto, &alg).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.verify_action());
        assert_eq!(radical_submodule(&m).cols(), 3);
        let _ = f;
    }

    #[test]
    fn generic_round_trip() {
        let alg = parse_algebra(example1_text()).unwrap();
        let reg = Representation::regular(alg.clone());
        let dto = module_to_dto(&reg, Some("A".into()));
        let back = module_from_dto(&dto, &alg).unwrap();
        assert_eq!(back, reg);
    }

    #[test]
    fn sequence_round_trip() {
        let alg = parse_algebra(example1_text()).unwrap();
        let reg = Representation::regular(alg.clone());
        let (y, _) = crate::module::top(&reg).unwrap();
        let seq = ar_sequence(&y, 3).unwrap();
        let dto = sequence_to_dto(
            &seq,
            vec!["X".into(), "M".into(), "Y".into()],
            "T".into(),
        );
        assert_eq!(dto.kind, "almost-dsplit");
        let text = serde_json::to_string(&dto).unwrap();
        let parsed: SequenceDto = serde_json::from_str(&text).unwrap();
        let back = sequence_from_dto(&parsed, |id| {
            Ok(match id {
                "X" => seq.x.clone(),
                "M" => seq.middles[0].clone(),
                "Y" => seq.y.clone(),
                "T" => seq.target.clone(),
                _ => unreachable!(),
            })
        })
        .unwrap();
        let report = verify_almost_dsplit(&back, 5).unwrap();
        assert!(report.verdict());
    }

    #[test]
    fn scalars_survive_rational_round_trip() {
        let f = FieldSpec::Rational;
        let m = Matrix::from_i64(f, &[&[1, -3], &[0, 7]]);
        let half = {
            let mut h = m.clone();
            h.set(0, 0, f.div(&f.one(), &f.from_i64(2)).unwrap());
            h
        };
        let rows = matrix_to_rows(&half);
        assert_eq!(rows[0][0], "1/2");
        let back = matrix_from_rows(f, &rows, 2, 2).unwrap();
        assert_eq!(back, half);
    }
}
