//! Combinatorial simple polytopes and their dual boundary complexes `K(P)`.
//!
//! A polytope is recorded only through its facets and, for each vertex, the
//! set of facets meeting there. No coordinates are kept.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope dimension must be at least 1, got {0}")]
    BadDimension(i64),
    #[error("vertex {vertex} lies on {found} distinct facets, expected {expected}")]
    NotSimple {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} refers to facet index {index}, but only {count} facets exist")]
    UnknownFacetIndex {
        vertex: usize,
        index: usize,
        count: usize,
    },
    #[error("vertex {second} repeats the facet set of vertex {first}")]
    DuplicateVertex { first: usize, second: usize },
    #[error("facet name {0:?} is used twice")]
    DuplicateFacetName(String),
    #[error("facet {0} contains no vertex")]
    UnusedFacet(usize),
    #[error("fewer facets ({facets}) than dimension + 1 ({needed})")]
    TooFewFacets { facets: usize, needed: usize },
    #[error("unknown polytope name {0:?}")]
    UnknownName(String),
}

/// Wire form: `{"dim": n, "facets": ["name", ...], "vertices": [[facet indices], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    pub dim: i64,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytope {
    dim: usize,
    facet_names: Vec<String>,
    vertices: Vec<BTreeSet<usize>>,
}

impl SimplePolytope {
    pub fn parse(doc: &PolytopeDoc) -> Result<Self, PolytopeError> {
        if doc.dim < 1 {
            return Err(PolytopeError::BadDimension(doc.dim));
        }
        let dim = doc.dim as usize;
        let m = doc.facets.len();
        let mut names = BTreeSet::new();
        for name in &doc.facets {
            if !names.insert(name.as_str()) {
                return Err(PolytopeError::DuplicateFacetName(name.clone()));
            }
        }
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        let mut first_seen: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        for (vertex, raw) in doc.vertices.iter().enumerate() {
            if let Some(&index) = raw.iter().find(|&&i| i >= m) {
                return Err(PolytopeError::UnknownFacetIndex {
                    vertex,
                    index,
                    count: m,
                });
            }
            let set: BTreeSet<usize> = raw.iter().copied().collect();
            if raw.len() != dim || set.len() != dim {
                return Err(PolytopeError::NotSimple {
                    vertex,
                    expected: dim,
                    found: set.len().max(raw.len()),
                });
            }
            if let Some(&first) = first_seen.get(&set) {
                return Err(PolytopeError::DuplicateVertex {
                    first,
                    second: vertex,
                });
            }
            first_seen.insert(set.clone(), vertex);
            vertices.push(set);
        }
        if m < dim + 1 {
            return Err(PolytopeError::TooFewFacets {
                facets: m,
                needed: dim + 1,
            });
        }
        let used: BTreeSet<usize> = vertices.iter().flatten().copied().collect();
        if let Some(unused) = (0..m).find(|i| !used.contains(i)) {
            return Err(PolytopeError::UnusedFacet(unused));
        }
        Ok(Self {
            dim,
            facet_names: doc.facets.clone(),
            vertices,
        })
    }

    pub fn to_doc(&self) -> PolytopeDoc {
        PolytopeDoc {
            dim: self.dim as i64,
            facets: self.facet_names.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.facet_names.len()
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    pub fn vertices(&self) -> &[BTreeSet<usize>] {
        &self.vertices
    }

    fn renamed(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.facet_names.len());
        self.facet_names = names;
        self
    }
}

impl Serialize for SimplePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplePolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolytopeDoc::deserialize(d)?;
        SimplePolytope::parse(&doc).map_err(serde::de::Error::custom)
    }
}

/// `K(P)` together with the facet-to-vertex correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComplexMap {
    pub polytope: SimplePolytope,
    pub complex: Complex,
    /// `facet_to_vertex[f]` is the complex vertex standing for facet `f`.
    pub facet_to_vertex: Vec<VertexId>,
}

/// Facets of `K(P)` are the vertex sets of `P`; facet `f` becomes vertex `f`.
pub fn dual_complex(p: &SimplePolytope) -> DualComplexMap {
    let facets = p
        .vertices
        .iter()
        .map(|v| Simplex::from_slice(&v.iter().map(|&f| f as VertexId).collect::<Vec<_>>()))
        .collect();
    let complex = Complex::from_facets(p.dim, facets).expect("a parsed polytope has vertices");
    DualComplexMap {
        polytope: p.clone(),
        complex,
        facet_to_vertex: (0..p.num_facets() as VertexId).collect(),
    }
}

/// `Δⁿ`: `n + 1` facets, one vertex per `n`-subset of them.
pub fn simplex_polytope(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n < 1 {
        return Err(PolytopeError::BadDimension(n as i64));
    }
    let all = Simplex::from_slice(&(0..=n as VertexId).collect::<Vec<_>>());
    let vertices = all
        .subsets_of_size(n)
        .into_iter()
        .map(|s| s.vertices().iter().map(|&v| v as usize).collect())
        .collect();
    Ok(SimplePolytope {
        dim: n,
        facet_names: (0..=n).map(|i| format!("F{i}")).collect(),
        vertices,
    })
}

/// `P × Q`. Facets of `Q` are shifted by the facet count of `P`; facet names
/// are prefixed `a.` and `b.` to stay distinct.
pub fn product(p: &SimplePolytope, q: &SimplePolytope) -> SimplePolytope {
    let shift = p.num_facets();
    let facet_names = p
        .facet_names
        .iter()
        .map(|n| format!("a.{n}"))
        .chain(q.facet_names.iter().map(|n| format!("b.{n}")))
        .collect();
    let vertices = p
        .vertices
        .iter()
        .flat_map(|vp| {
            q.vertices.iter().map(move |vq| {
                vp.iter()
                    .copied()
                    .chain(vq.iter().map(|&f| f + shift))
                    .collect()
            })
        })
        .collect();
    SimplePolytope {
        dim: p.dim + q.dim,
        facet_names,
        vertices,
    }
}

/// `(Δ¹)ⁿ` with facets `x{k}-`, `x{k}+`; opposite facets are `2k`, `2k + 1`.
pub fn cube(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n < 1 {
        return Err(PolytopeError::BadDimension(n as i64));
    }
    let segment = simplex_polytope(1)?;
    let mut p = segment.clone();
    for _ in 1..n {
        p = product(&p, &segment);
    }
    let names = (1..=n)
        .flat_map(|k| [format!("x{k}-"), format!("x{k}+")])
        .collect();
    Ok(p.renamed(names))
}

/// `Δ² × Δ¹`; facets 0..=2 are the sides, 3 and 4 the two triangles.
pub fn prism() -> SimplePolytope {
    let p = product(
        &simplex_polytope(2).expect("n = 2"),
        &simplex_polytope(1).expect("n = 1"),
    );
    p.renamed(
        ["side0", "side1", "side2", "bottom", "top"]
            .map(String::from)
            .to_vec(),
    )
}

/// Triangles of the icosahedron on vertices 0 (apex), 1..=5 (upper ring),
/// 6..=10 (lower ring) and 11 (bottom).
pub(crate) fn icosahedron_triangles() -> Vec<[usize; 3]> {
    let up = |k: usize| 1 + k % 5;
    let low = |k: usize| 6 + k % 5;
    let mut t = Vec::with_capacity(20);
    for k in 0..5 {
        t.push([0, up(k), up(k + 1)]);
        t.push([up(k), up(k + 1), low(k)]);
        t.push([low(k), low(k + 1), up(k + 1)]);
        t.push([11, low(k), low(k + 1)]);
    }
    t
}

/// The regular dodecahedron: 12 pentagonal facets, 20 vertices. Its dual is
/// the icosahedron.
pub fn dodecahedron() -> SimplePolytope {
    SimplePolytope {
        dim: 3,
        facet_names: (0..12).map(|i| format!("pentagon{i}")).collect(),
        vertices: icosahedron_triangles()
            .into_iter()
            .map(|t| t.into_iter().collect())
            .collect(),
    }
}

/// `simplex-n`, `cube-n`, `prism`, `dodecahedron`.
pub fn named_polytope(name: &str) -> Result<SimplePolytope, PolytopeError> {
    let unknown = || PolytopeError::UnknownName(name.to_string());
    let sized = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .and_then(|rest| rest.parse::<usize>().ok())
    };
    if let Some(n) = sized("simplex-") {
        return simplex_polytope(n);
    }
    if let Some(n) = sized("cube-") {
        return cube(n);
    }
    match name {
        "prism" => Ok(prism()),
        "dodecahedron" => Ok(dodecahedron()),
        _ => Err(unknown()),
    }
}

/// Names of the built-in corpus, in a fixed order.
pub const CORPUS: &[&str] = &[
    "simplex-1",
    "simplex-2",
    "simplex-3",
    "simplex-4",
    "simplex-5",
    "prism",
    "cube-2",
    "cube-3",
    "cube-4",
    "dodecahedron",
];
