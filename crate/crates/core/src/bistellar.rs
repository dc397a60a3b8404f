//! Bistellar moves `χ_σ(K) = (K − σ * ∂τ) ∪ (∂σ * τ)`.
//!
//! A move of type `i` on a pure complex of dimension `d` rewrites an
//! `(d − i)`-simplex `σ` whose link is `∂τ` for an `i`-simplex `τ` that is not
//! already a face. Type `0` subdivides a facet with a new vertex; type `d`
//! removes the vertex `σ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Simplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("no bistellar move is applicable at {0}")]
    NotApplicable(Simplex),
    #[error("move at {sigma} carries tau {given}, but the link determines {detected}")]
    StaleTau {
        sigma: Simplex,
        given: Simplex,
        detected: Simplex,
    },
    #[error("0-move tau {0} must be a single vertex outside the support")]
    TauNotFresh(Simplex),
    #[error("move at {sigma} is labelled type {given}, the complex gives type {actual}")]
    TypeMismatch {
        sigma: Simplex,
        given: usize,
        actual: usize,
    },
}

impl From<ComplexError> for MoveError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotAFace(s) => MoveError::NotAFace(s),
            other => unreachable!("link only fails on non-faces: {other}"),
        }
    }
}

/// One bistellar move. JSON: `{"type": i, "sigma": [...], "tau": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    #[serde(rename = "type")]
    pub move_type: usize,
    pub sigma: Simplex,
    pub tau: Simplex,
}

impl Move {
    /// Dimension of the complex the move lives in.
    pub fn ambient_dim(&self) -> isize {
        (self.sigma.len() + self.tau.len()) as isize - 2
    }

    /// Role swap of `σ` and `τ`; the type becomes `dim σ`.
    pub fn inverse(&self) -> Move {
        Move {
            move_type: self.sigma.len() - 1,
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
        }
    }
}

pub fn inverse_move(m: &Move) -> Move {
    m.inverse()
}

/// `i = dim K − dim σ`.
pub fn move_type_of(k: &Complex, sigma: &Simplex) -> Result<usize, MoveError> {
    if sigma.is_empty() || !k.has_face(sigma) {
        return Err(MoveError::NotAFace(sigma.clone()));
    }
    Ok(k.facet_size() - sigma.len())
}

/// The canonical fresh vertex for 0-moves: one past the largest id in use.
pub fn fresh_vertex(k: &Complex) -> VertexId {
    k.max_vertex().map_or(0, |v| v + 1)
}

/// Returns the move at `sigma` if one exists. For a facet the tau is the
/// canonical fresh vertex.
pub fn is_applicable(k: &Complex, sigma: &Simplex) -> Result<Option<Move>, MoveError> {
    let move_type = move_type_of(k, sigma)?;
    if move_type == 0 {
        return Ok(Some(Move {
            move_type,
            sigma: sigma.clone(),
            tau: Simplex::from_slice(&[fresh_vertex(k)]),
        }));
    }
    let link = k.link(sigma)?;
    Ok(link_tau(&link, move_type)
        .filter(|tau| !k.has_face(tau))
        .map(|tau| Move {
            move_type,
            sigma: sigma.clone(),
            tau,
        }))
}

/// If `link` is `∂t` for an `i`-simplex `t`, returns `t`.
fn link_tau(link: &Complex, i: usize) -> Option<Simplex> {
    if link.num_facets() != i + 1 {
        return None;
    }
    let support = link.vertex_support();
    if support.len() != i + 1 {
        return None;
    }
    let t = Simplex::from_slice(&support.into_iter().collect::<Vec<_>>());
    t.subsets_of_size(i)
        .iter()
        .all(|s| link.is_facet(s))
        .then_some(t)
}

/// Applies `m` after checking it against the complex.
pub fn apply_move(k: &Complex, m: &Move) -> Result<Complex, MoveError> {
    let actual = move_type_of(k, &m.sigma)?;
    if actual != m.move_type {
        return Err(MoveError::TypeMismatch {
            sigma: m.sigma.clone(),
            given: m.move_type,
            actual,
        });
    }
    if actual == 0 {
        if m.tau.len() != 1 || k.vertex_support().contains(&m.tau.vertices()[0]) {
            return Err(MoveError::TauNotFresh(m.tau.clone()));
        }
    } else {
        let detected = is_applicable(k, &m.sigma)?
            .ok_or_else(|| MoveError::NotApplicable(m.sigma.clone()))?
            .tau;
        if detected != m.tau {
            return Err(MoveError::StaleTau {
                sigma: m.sigma.clone(),
                given: m.tau.clone(),
                detected,
            });
        }
    }
    Ok(rewrite(k, &m.sigma, &m.tau))
}

fn rewrite(k: &Complex, sigma: &Simplex, tau: &Simplex) -> Complex {
    let mut facets: BTreeSet<Simplex> = k
        .facets()
        .filter(|f| !sigma.is_subset_of(f))
        .cloned()
        .collect();
    for s in sigma.subsets_of_size(sigma.len() - 1) {
        facets.insert(s.union(tau));
    }
    Complex::from_facets(k.facet_size(), facets).expect("a move adds at least one facet")
}

/// All applicable moves of the allowed types, ordered by `(type, sigma)`.
pub fn enumerate_moves(k: &Complex, allowed_types: &BTreeSet<usize>) -> Vec<Move> {
    let dim = k.dim();
    let mut out = Vec::new();
    for &i in allowed_types {
        if dim < 0 || i as isize > dim {
            continue;
        }
        for sigma in k.faces_of_dim(dim - i as isize) {
            if let Ok(Some(m)) = is_applicable(k, &sigma) {
                out.push(m);
            }
        }
    }
    out
}

/// Change of the f-vector caused by any move of type `move_type` on a
/// complex of dimension `dim`.
pub fn f_vector_delta(dim: usize, move_type: usize) -> Vec<i64> {
    // removed: σ ∪ ρ for ρ ⊊ τ; added: τ ∪ ρ for ρ ⊊ σ
    let sigma_len = dim - move_type + 1;
    let tau_len = move_type + 1;
    let binom = |n: usize, r: usize| -> i64 {
        if r > n {
            0
        } else {
            (0..r).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
        }
    };
    (0..=dim)
        .map(|j| {
            let size = j + 1;
            let removed = if size >= sigma_len && size - sigma_len < tau_len {
                binom(tau_len, size - sigma_len)
            } else {
                0
            };
            let added = if size >= tau_len && size - tau_len < sigma_len {
                binom(sigma_len, size - tau_len)
            } else {
                0
            };
            added - removed
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(dim: i64, facets: &[&[VertexId]]) -> Complex {
        Complex::new(dim, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::from_slice(v)
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

    fn mv(i: usize, sigma: &[VertexId], tau: &[VertexId]) -> Move {
        Move {
            move_type: i,
            sigma: s(sigma),
            tau: s(tau),
        }
    }

    #[test]
    fn types() {
        assert_eq!(move_type_of(&tetra(), &s(&[0, 1, 2])), Ok(0));
        assert_eq!(move_type_of(&b5(), &s(&[0, 1])), Ok(1));
        assert_eq!(move_type_of(&b5(), &s(&[4])), Ok(2));
        assert_eq!(
            move_type_of(&b5(), &s(&[4, 5])),
            Err(MoveError::NotAFace(s(&[4, 5])))
        );
    }

    #[test]
    fn applicability() {
        assert_eq!(
            is_applicable(&b5(), &s(&[0, 1])),
            Ok(Some(mv(1, &[0, 1], &[4, 5])))
        );
        assert_eq!(
            is_applicable(&b5(), &s(&[4])),
            Ok(Some(mv(2, &[4], &[0, 1, 2])))
        );
        assert_eq!(is_applicable(&tetra(), &s(&[0])), Ok(None));
        assert_eq!(
            is_applicable(&tetra(), &s(&[0, 1, 2])),
            Ok(Some(mv(0, &[0, 1, 2], &[4])))
        );
    }

    #[test]
    fn worked_moves() {
        let after = apply_move(&tetra(), &mv(0, &[0, 1, 2], &[4])).unwrap();
        assert_eq!(
            after,
            c(
                2,
                &[
                    &[0, 1, 3],
                    &[0, 2, 3],
                    &[1, 2, 3],
                    &[0, 1, 4],
                    &[0, 2, 4],
                    &[1, 2, 4]
                ]
            )
        );
        assert_eq!(after.f_vector(), vec![5, 9, 6]);

        let removed = apply_move(&b5(), &mv(2, &[4], &[0, 1, 2])).unwrap();
        assert_eq!(
            removed,
            c(2, &[&[0, 1, 2], &[0, 1, 5], &[0, 2, 5], &[1, 2, 5]])
        );
        assert!(removed.is_boundary_of_simplex());

        let flipped = apply_move(&b5(), &mv(1, &[0, 1], &[4, 5])).unwrap();
        assert_eq!(
            flipped,
            c(
                2,
                &[
                    &[1, 2, 4],
                    &[0, 2, 4],
                    &[1, 2, 5],
                    &[0, 2, 5],
                    &[0, 4, 5],
                    &[1, 4, 5]
                ]
            )
        );
        assert_eq!(flipped.f_vector(), vec![5, 9, 6]);
    }

    #[test]
    fn apply_errors() {
        assert_eq!(
            apply_move(&b5(), &mv(0, &[0, 1, 2], &[6])),
            Err(MoveError::NotAFace(s(&[0, 1, 2])))
        );
        assert_eq!(
            apply_move(&b5(), &mv(1, &[0, 1], &[4, 6])),
            Err(MoveError::StaleTau {
                sigma: s(&[0, 1]),
                given: s(&[4, 6]),
                detected: s(&[4, 5])
            })
        );
        assert_eq!(
            apply_move(&b5(), &mv(0, &[0, 1, 4], &[5])),
            Err(MoveError::TauNotFresh(s(&[5])))
        );
        assert_eq!(
            apply_move(&tetra(), &mv(2, &[0], &[1, 2, 3])),
            Err(MoveError::NotApplicable(s(&[0])))
        );
        assert!(matches!(
            apply_move(&b5(), &mv(2, &[0, 1], &[4, 5])),
            Err(MoveError::TypeMismatch { given: 2, actual: 1, .. })
        ));
        // any fresh tau is fine for a 0-move
        assert!(apply_move(&b5(), &mv(0, &[0, 1, 4], &[40])).is_ok());
    }

    #[test]
    fn inverses() {
        assert_eq!(
            inverse_move(&mv(0, &[0, 1, 2], &[4])),
            mv(2, &[4], &[0, 1, 2])
        );
        assert_eq!(inverse_move(&mv(1, &[0, 1], &[4, 5])), mv(1, &[4, 5], &[0, 1]));
        let m = mv(1, &[0, 1], &[4, 5]);
        let there = apply_move(&b5(), &m).unwrap();
        assert_eq!(apply_move(&there, &m.inverse()).unwrap(), b5());
    }

    #[test]
    fn enumeration() {
        assert!(enumerate_moves(&tetra(), &BTreeSet::from([1, 2])).is_empty());
        let zero = enumerate_moves(&tetra(), &BTreeSet::from([0]));
        assert_eq!(zero.len(), 4);
        assert!(zero.iter().all(|m| m.tau == s(&[4])));
        let removals = enumerate_moves(&b5(), &BTreeSet::from([2]));
        assert_eq!(
            removals,
            vec![mv(2, &[4], &[0, 1, 2]), mv(2, &[5], &[0, 1, 2])]
        );
        let all = enumerate_moves(&b5(), &BTreeSet::from([0, 1, 2]));
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| (a.move_type, &a.sigma).cmp(&(b.move_type, &b.sigma)));
        assert_eq!(all, sorted);
    }

    #[test]
    fn f_vector_deltas_in_dim_two() {
        assert_eq!(f_vector_delta(2, 0), vec![1, 3, 2]);
        assert_eq!(f_vector_delta(2, 1), vec![0, 0, 0]);
        assert_eq!(f_vector_delta(2, 2), vec![-1, -3, -2]);
        assert_eq!(f_vector_delta(3, 1), vec![0, 1, 2, 1]);
    }
}
