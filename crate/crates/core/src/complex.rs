//! Pure simplicial complexes stored by their maximal simplices.
//!
//! Vertex ids are arbitrary non-negative integers and are never relabeled:
//! bistellar moves create and delete vertices, and certificates replay the
//! literal ids.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet {index} has {found} vertices, expected {expected}")]
    WrongFacetSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("facet {index} repeats vertex {vertex}")]
    DuplicateVertexInFacet { index: usize, vertex: VertexId },
    #[error("a complex needs at least one facet")]
    EmptyComplex,
    #[error("dimension must be non-negative, got {0}")]
    NegativeDimension(i64),
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("vertex supports intersect in {0:?}")]
    VertexClash(Vec<VertexId>),
    #[error("the empty simplex has no boundary complex")]
    EmptySimplex,
    #[error("dimension {0} is too low for this check")]
    DimensionTooLow(isize),
}

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from arbitrary ids, sorting them. Returns the first
    /// repeated id as an error.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, VertexId> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0]);
        }
        Ok(Self(vertices))
    }

    /// Panicking constructor for literals in tests and builders.
    pub fn from_slice(vertices: &[VertexId]) -> Self {
        Self::new(vertices.to_vec()).expect("simplex literal repeats a vertex")
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Geometric dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<VertexId> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    /// All subsets with exactly `k` vertices, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<Simplex> {
        let n = self.0.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<VertexId>::deserialize(d)?;
        Simplex::new(v)
            .map_err(|dup| serde::de::Error::custom(format!("simplex repeats vertex {dup}")))
    }
}

/// A pure simplicial complex given by its facets.
///
/// `facet_size` is the number of vertices per facet, so the geometric
/// dimension is `facet_size - 1`. The complex `{∅}` (one empty facet,
/// dimension -1) is the join identity and the link of a facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    facet_size: usize,
    facets: BTreeSet<Simplex>,
}

impl Complex {
    /// Validating constructor: every facet must have `dim + 1` distinct ids.
    /// Repeated facets collapse.
    pub fn new(dim: i64, facets: Vec<Vec<VertexId>>) -> Result<Self, ComplexError> {
        if dim < 0 {
            return Err(ComplexError::NegativeDimension(dim));
        }
        let expected = dim as usize + 1;
        let mut set = BTreeSet::new();
        for (index, raw) in facets.into_iter().enumerate() {
            if raw.len() != expected {
                return Err(ComplexError::WrongFacetSize {
                    index,
                    expected,
                    found: raw.len(),
                });
            }
            let s = Simplex::new(raw)
                .map_err(|vertex| ComplexError::DuplicateVertexInFacet { index, vertex })?;
            set.insert(s);
        }
        Self::from_facets(expected, set)
    }

    /// Builds from already-validated simplices of a common size.
    pub(crate) fn from_facets(
        facet_size: usize,
        facets: BTreeSet<Simplex>,
    ) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        debug_assert!(facets.iter().all(|f| f.len() == facet_size));
        Ok(Self { facet_size, facets })
    }

    /// The complex `{∅}`.
    pub fn void_identity() -> Self {
        Self {
            facet_size: 0,
            facets: BTreeSet::from([Simplex::empty()]),
        }
    }

    pub fn dim(&self) -> isize {
        self.facet_size as isize - 1
    }

    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.facets.iter()
    }

    pub fn facet_set(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_support(&self) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_support().len()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.facets
            .iter()
            .filter_map(|f| f.vertices().last().copied())
            .max()
    }

    pub fn has_face(&self, s: &Simplex) -> bool {
        s.len() <= self.facet_size && self.facets.iter().any(|f| s.is_subset_of(f))
    }

    pub fn is_facet(&self, s: &Simplex) -> bool {
        self.facets.contains(s)
    }

    /// `{t : t ∩ s = ∅, t ∪ s ∈ K}` restricted to maximal members.
    pub fn link(&self, s: &Simplex) -> Result<Complex, ComplexError> {
        let facets: BTreeSet<Simplex> = self
            .facets
            .iter()
            .filter(|f| s.is_subset_of(f))
            .map(|f| f.difference(s))
            .collect();
        if facets.is_empty() {
            return Err(ComplexError::NotAFace(s.clone()));
        }
        Complex::from_facets(self.facet_size - s.len(), facets)
    }

    pub fn join(&self, other: &Complex) -> Result<Complex, ComplexError> {
        let a = self.vertex_support();
        let b = other.vertex_support();
        let clash: Vec<VertexId> = a.intersection(&b).copied().collect();
        if !clash.is_empty() {
            return Err(ComplexError::VertexClash(clash));
        }
        let facets = self
            .facets
            .iter()
            .flat_map(|k| other.facets.iter().map(move |l| k.union(l)))
            .collect();
        Complex::from_facets(self.facet_size + other.facet_size, facets)
    }

    /// Every face of dimension `d`, deduplicated and sorted.
    pub fn faces_of_dim(&self, d: isize) -> BTreeSet<Simplex> {
        if d < -1 || d >= self.facet_size as isize {
            return BTreeSet::new();
        }
        let k = (d + 1) as usize;
        self.facets
            .iter()
            .flat_map(|f| f.subsets_of_size(k))
            .collect()
    }

    /// Entry `d` counts the `d`-faces, for `d` in `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut seen: Vec<HashSet<Simplex>> = vec![HashSet::new(); self.facet_size];
        for f in &self.facets {
            for k in 1..=self.facet_size {
                seen[k - 1].extend(f.subsets_of_size(k));
            }
        }
        seen.into_iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Every ridge lies in exactly two facets and the facet graph is connected.
    pub fn is_pseudomanifold(&self) -> Result<bool, ComplexError> {
        if self.facet_size < 2 {
            return Err(ComplexError::DimensionTooLow(self.dim()));
        }
        let facets: Vec<&Simplex> = self.facets.iter().collect();
        let mut ridges: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        for (i, f) in facets.iter().enumerate() {
            for r in f.subsets_of_size(self.facet_size - 1) {
                ridges.entry(r).or_default().push(i);
            }
        }
        if ridges.values().any(|owners| owners.len() != 2) {
            return Ok(false);
        }
        let mut adjacency = vec![Vec::new(); facets.len()];
        for owners in ridges.values() {
            adjacency[owners[0]].push(owners[1]);
            adjacency[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; facets.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    pub fn is_boundary_of_simplex(&self) -> bool {
        let support = self.vertex_support();
        if support.len() != self.facet_size + 1 {
            return false;
        }
        let all = Simplex(support.into_iter().collect());
        self.facets.len() == self.facet_size + 1
            && all
                .subsets_of_size(self.facet_size)
                .iter()
                .all(|s| self.facets.contains(s))
    }

    /// Sanity test for sphere candidates: pseudomanifold with the Euler
    /// characteristic of a sphere. In dimension 0 this means two points.
    pub fn looks_like_sphere(&self) -> bool {
        match self.facet_size {
            0 => false,
            1 => self.facets.len() == 2,
            _ => {
                let d = self.dim() as i64;
                let expected = 1 + if d % 2 == 0 { 1 } else { -1 };
                self.is_pseudomanifold().unwrap_or(false)
                    && self.euler_characteristic() == expected
            }
        }
    }

    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            dim: self.dim() as i64,
            facets: self.facets.iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }
}

/// `∂t`: all codimension-one faces of `t`. For a vertex this is `{∅}`.
pub fn boundary_simplex(t: &Simplex) -> Result<Complex, ComplexError> {
    if t.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    let facets = t.subsets_of_size(t.len() - 1).into_iter().collect();
    Complex::from_facets(t.len() - 1, facets)
}

/// The complex `{t}` consisting of one simplex and its faces.
pub fn full_simplex(t: &Simplex) -> Complex {
    Complex {
        facet_size: t.len(),
        facets: BTreeSet::from([t.clone()]),
    }
}

/// Wire form: `{"dim": d, "facets": [[ids...], ...]}` with ids ascending and
/// facets in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub dim: i64,
    pub facets: Vec<Vec<VertexId>>,
}

impl TryFrom<ComplexDoc> for Complex {
    type Error = ComplexError;

    fn try_from(doc: ComplexDoc) -> Result<Self, Self::Error> {
        if doc.dim == -1 && doc.facets.len() == 1 && doc.facets[0].is_empty() {
            return Ok(Complex::void_identity());
        }
        Complex::new(doc.dim, doc.facets)
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        Complex::try_from(doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(dim: i64, facets: &[&[VertexId]]) -> Complex {
        Complex::new(dim, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    fn tetra() -> Complex {
        c(2, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn b5() -> Complex {
        c(
            2,
            &[
                &[0, 1, 4],
                &[1, 2, 4],
                &[0, 2, 4],
                &[0, 1, 5],
                &[1, 2, 5],
                &[0, 2, 5],
            ],
        )
    }

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::from_slice(v)
    }

    #[test]
    fn construction_and_errors() {
        assert_eq!(tetra().num_facets(), 4);
        assert_eq!(c(1, &[&[0, 1], &[1, 2], &[0, 2]]).num_facets(), 3);
        assert_eq!(
            Complex::new(2, vec![vec![0, 1]]),
            Err(ComplexError::WrongFacetSize {
                index: 0,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            Complex::new(1, vec![vec![3, 3]]),
            Err(ComplexError::DuplicateVertexInFacet {
                index: 0,
                vertex: 3
            })
        );
        assert_eq!(Complex::new(1, vec![]), Err(ComplexError::EmptyComplex));
        assert_eq!(
            Complex::new(-1, vec![vec![]]),
            Err(ComplexError::NegativeDimension(-1))
        );
    }

    #[test]
    fn faces() {
        assert!(tetra().has_face(&s(&[0, 1])));
        assert!(!tetra().has_face(&s(&[0, 1, 2, 3])));
        assert!(!b5().has_face(&s(&[4, 5])));
        assert!(b5().has_face(&Simplex::empty()));
    }

    #[test]
    fn links() {
        assert_eq!(b5().link(&s(&[0, 1])).unwrap(), c(0, &[&[4], &[5]]));
        assert_eq!(
            tetra().link(&s(&[0])).unwrap(),
            c(1, &[&[1, 2], &[1, 3], &[2, 3]])
        );
        assert_eq!(
            b5().link(&s(&[4])).unwrap(),
            c(1, &[&[0, 1], &[1, 2], &[0, 2]])
        );
        assert_eq!(
            b5().link(&s(&[4, 5])),
            Err(ComplexError::NotAFace(s(&[4, 5])))
        );
        assert_eq!(
            tetra().link(&s(&[0, 1, 2])).unwrap(),
            Complex::void_identity()
        );
    }

    #[test]
    fn joins() {
        let tri = c(1, &[&[0, 1], &[1, 2], &[0, 2]]);
        let pts = c(0, &[&[4], &[5]]);
        assert_eq!(tri.join(&pts).unwrap(), b5());
        assert_eq!(tri.join(&Complex::void_identity()).unwrap(), tri);
        assert_eq!(Complex::void_identity().join(&tri).unwrap(), tri);
        assert_eq!(
            c(0, &[&[0]]).join(&c(0, &[&[1]])).unwrap(),
            c(1, &[&[0, 1]])
        );
        assert_eq!(
            tri.join(&c(0, &[&[2], &[7]])),
            Err(ComplexError::VertexClash(vec![2]))
        );
    }

    #[test]
    fn boundaries() {
        assert_eq!(
            boundary_simplex(&s(&[4, 5])).unwrap(),
            c(0, &[&[4], &[5]])
        );
        assert_eq!(
            boundary_simplex(&s(&[7])).unwrap(),
            Complex::void_identity()
        );
        assert_eq!(boundary_simplex(&s(&[0, 1, 2])).unwrap().num_facets(), 3);
        assert_eq!(
            boundary_simplex(&Simplex::empty()),
            Err(ComplexError::EmptySimplex)
        );
    }

    #[test]
    fn counts() {
        assert_eq!(tetra().f_vector(), vec![4, 6, 4]);
        assert_eq!(b5().f_vector(), vec![5, 9, 6]);
        assert_eq!(tetra().euler_characteristic(), 2);
        assert_eq!(c(1, &[&[0, 1], &[1, 2], &[0, 2]]).euler_characteristic(), 0);
        assert_eq!(b5().euler_characteristic(), 2);
    }

    #[test]
    fn pseudomanifold_checks() {
        assert_eq!(tetra().is_pseudomanifold(), Ok(true));
        let two_triangles = c(
            1,
            &[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5]],
        );
        assert_eq!(two_triangles.is_pseudomanifold(), Ok(false));
        let open = c(2, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]);
        assert_eq!(open.is_pseudomanifold(), Ok(false));
        assert_eq!(
            c(0, &[&[0], &[1]]).is_pseudomanifold(),
            Err(ComplexError::DimensionTooLow(0))
        );
    }

    #[test]
    fn simplex_boundary_recognition() {
        assert!(tetra().is_boundary_of_simplex());
        assert!(!b5().is_boundary_of_simplex());
        assert!(c(0, &[&[3], &[9]]).is_boundary_of_simplex());
        assert!(!c(1, &[&[0, 1], &[1, 2]]).is_boundary_of_simplex());
    }

    #[test]
    fn subsets_enumerate_binomially() {
        let t = s(&[1, 3, 5, 7, 9]);
        assert_eq!(t.subsets_of_size(0), vec![Simplex::empty()]);
        assert_eq!(t.subsets_of_size(2).len(), 10);
        assert_eq!(t.subsets_of_size(5), vec![t.clone()]);
        assert!(t.subsets_of_size(6).is_empty());
        assert_eq!(t.subsets_of_size(2)[0], s(&[1, 3]));
        assert_eq!(t.subsets_of_size(2)[9], s(&[7, 9]));
    }

    #[test]
    fn json_is_normalized() {
        let k = Complex::new(1, vec![vec![2, 0], vec![1, 0], vec![2, 1]]).unwrap();
        let text = serde_json::to_string(&k).unwrap();
        assert_eq!(text, r#"{"dim":1,"facets":[[0,1],[0,2],[1,2]]}"#);
        let back: Complex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
        let void: Complex = serde_json::from_str(r#"{"dim":-1,"facets":[[]]}"#).unwrap();
        assert_eq!(void, Complex::void_identity());
        assert!(serde_json::from_str::<Complex>(r#"{"dim":1,"facets":[[0]]}"#).is_err());
    }
}
