//! Quivers, paths and relation sets.
//!
//! A path stores its arrows in traversal order: `[a, b]` is the path that
//! follows `a` first and then `b`. The algebra product of paths `p * q`
//! composes in function order, so `p * q` traverses `q` first (see
//! [`crate::algebra`]).

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Quiver(format!("duplicate vertex name {:?}", v)));
            }
        }
        let vertex_index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Quiver(format!("unknown vertex {:?}", name)))
        };
        let mut arrow_names = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            if !arrow_names.insert(name.clone()) {
                return Err(Error::Quiver(format!("duplicate arrow name {:?}", name)));
            }
            if seen.contains(&name) {
                return Err(Error::Quiver(format!(
                    "arrow name {:?} clashes with a vertex",
                    name
                )));
            }
            out.push(Arrow {
                name,
                source: vertex_index(&from)?,
                target: vertex_index(&to)?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Quiver(format!("unknown arrow {:?}", name)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// A directed path: trivial at `source` when `arrows` is empty, otherwise
/// the arrows are listed in traversal order and compose head to tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Extend the path by one more arrow at its target; `None` when the
    /// arrow does not start where the path ends.
    pub fn then(&self, arrow_idx: usize, q: &Quiver) -> Option<Path> {
        let a = &q.arrows[arrow_idx];
        if a.source != self.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow_idx);
        Some(Path {
            source: self.source,
            target: a.target,
            arrows,
        })
    }

    /// Build from arrow names in traversal order.
    pub fn from_names(names: &[String], q: &Quiver) -> Result<Path> {
        if names.is_empty() {
            return Err(Error::Quiver("relation path must be nonempty".into()));
        }
        let first = q.arrow_index(&names[0])?;
        let mut p = Path {
            source: q.arrows[first].source,
            target: q.arrows[first].target,
            arrows: vec![first],
        };
        for name in &names[1..] {
            let idx = q.arrow_index(name)?;
            p = p.then(idx, q).ok_or_else(|| {
                Error::Quiver(format!("path not composable at arrow {:?}", name))
            })?;
        }
        Ok(p)
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A single relation: a formal linear combination of parallel paths of
/// length at least two.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn validate(&self, q: &Quiver, f: FieldSpec) -> Result<()> {
        for rel in &self.relations {
            if rel.terms.is_empty() {
                return Err(Error::Quiver("empty relation".into()));
            }
            let (_, first) = &rel.terms[0];
            for (c, p) in &rel.terms {
                if p.len() < 2 {
                    return Err(Error::Quiver(format!(
                        "relation path {:?} has length < 2",
                        p.label(q)
                    )));
                }
                if p.source != first.source || p.target != first.target {
                    return Err(Error::Quiver(
                        "relation mixes paths with different endpoints".into(),
                    ));
                }
                if f.is_zero(c) {
                    return Err(Error::Quiver("relation term with zero coefficient".into()));
                }
            }
        }
        Ok(())
    }
}

/// All paths of length up to and including `max_len`, in the canonical
/// order: trivial paths by vertex, then arrows in declaration order, then
/// longer paths length-lexicographically.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut prev_start = 0;
    for _len in 1..=max_len {
        let prev_end = all.len();
        let mut next = Vec::new();
        for p in &all[prev_start..prev_end] {
            for a in 0..q.arrows.len() {
                if let Some(ext) = p.then(a, q) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        prev_start = all.len();
        all.extend(next);
    }
    all
}
