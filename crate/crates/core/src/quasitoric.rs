//! Characteristic matrices over simple polytopes and the freeness criterion
//! for the torus quotient.
//!
//! The subtorus `T′ ⊂ T^m` is represented as the kernel of the map
//! `T^m → T^n` induced by an integer `n × m` matrix `λ`. It acts freely on
//! the moment-angle complex exactly when, at every polytope vertex, the
//! `n × n` minor on the facets meeting there is unimodular.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{cube, simplex_polytope, PolytopeError, SimplePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasitoricError {
    #[error("lambda is {rows}x{cols}, the polytope needs {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("row {row} of lambda has {found} entries, header says {cols}")]
    RaggedRow { row: usize, found: usize, cols: usize },
    #[error("dimension must be at least 1")]
    BadDimension,
    #[error("determinant overflow at vertex {vertex}")]
    Overflow { vertex: usize },
    #[error("the torus does not act freely: {0} vertex minors are not unimodular")]
    NotFree(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Integer matrix. JSON: `{"rows": n, "cols": m, "entries": [[...], ...]}`,
/// row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let entries = (0..rows)
            .map(|r| columns.iter().map(|c| c[r]).collect())
            .collect();
        Self {
            rows,
            cols: columns.len(),
            entries,
        }
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[c]).collect()
    }

    fn check_rectangular(&self) -> Result<(), QuasitoricError> {
        if self.entries.len() != self.rows {
            return Err(QuasitoricError::ShapeMismatch {
                rows: self.entries.len(),
                cols: self.cols,
                expected_rows: self.rows,
                expected_cols: self.cols,
            });
        }
        for (row, r) in self.entries.iter().enumerate() {
            if r.len() != self.cols {
                return Err(QuasitoricError::RaggedRow {
                    row,
                    found: r.len(),
                    cols: self.cols,
                });
            }
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination. `None` on
/// overflow of the 128-bit intermediates.
pub fn determinant(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(a[k][k])?;
                let rhs = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacteristicPair {
    pub polytope: SimplePolytope,
    pub lambda: IntMatrix,
}

impl CharacteristicPair {
    pub fn new(polytope: SimplePolytope, lambda: IntMatrix) -> Result<Self, QuasitoricError> {
        lambda.check_rectangular()?;
        let (n, m) = (polytope.dim(), polytope.num_facets());
        if lambda.rows != n || lambda.cols != m {
            return Err(QuasitoricError::ShapeMismatch {
                rows: lambda.rows,
                cols: lambda.cols,
                expected_rows: n,
                expected_cols: m,
            });
        }
        Ok(Self { polytope, lambda })
    }

    /// The `n × n` minor on the facets of polytope vertex `v`.
    pub fn vertex_minor(&self, v: usize) -> Vec<Vec<i64>> {
        let facets: Vec<usize> = self.polytope.vertices()[v].iter().copied().collect();
        self.lambda
            .entries
            .iter()
            .map(|row| facets.iter().map(|&f| row[f]).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDeterminant {
    pub vertex: usize,
    pub facets: Vec<usize>,
    pub determinant: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub ok: bool,
    pub failing_vertices: Vec<VertexDeterminant>,
    /// Minor determinant at every vertex, in vertex order.
    pub determinants: Vec<i128>,
}

pub fn check_freeness(pair: &CharacteristicPair) -> Result<FreenessReport, QuasitoricError> {
    // Re-validate: fields are public and may come from untrusted JSON.
    pair.lambda.check_rectangular()?;
    let (n, m) = (pair.polytope.dim(), pair.polytope.num_facets());
    if pair.lambda.rows != n || pair.lambda.cols != m {
        return Err(QuasitoricError::ShapeMismatch {
            rows: pair.lambda.rows,
            cols: pair.lambda.cols,
            expected_rows: n,
            expected_cols: m,
        });
    }
    let mut determinants = Vec::with_capacity(pair.polytope.vertices().len());
    let mut failing_vertices = Vec::new();
    for (vertex, facets) in pair.polytope.vertices().iter().enumerate() {
        let det = determinant(&pair.vertex_minor(vertex))
            .ok_or(QuasitoricError::Overflow { vertex })?;
        determinants.push(det);
        if det.abs() != 1 {
            failing_vertices.push(VertexDeterminant {
                vertex,
                facets: facets.iter().copied().collect(),
                determinant: det,
            });
        }
    }
    Ok(FreenessReport {
        ok: failing_vertices.is_empty(),
        failing_vertices,
        determinants,
    })
}

/// `Δⁿ` with `λ = (−(e₁+⋯+eₙ), e₁, …, eₙ)`; the kernel is the diagonal circle
/// and the quotient is `ℂPⁿ`.
pub fn cpn_pair(n: usize) -> Result<CharacteristicPair, QuasitoricError> {
    if n < 1 {
        return Err(QuasitoricError::BadDimension);
    }
    let polytope = simplex_polytope(n)?;
    let mut columns = vec![vec![-1; n]];
    columns.extend((0..n).map(|k| unit(n, k)));
    CharacteristicPair::new(polytope, IntMatrix::from_columns(n, &columns))
}

/// `(Δ¹)ⁿ` with both facets of the `k`-th opposite pair mapped to `e_k`:
/// the product of `n` copies of `ℂP¹`.
pub fn cube_pair(n: usize) -> Result<CharacteristicPair, QuasitoricError> {
    if n < 1 {
        return Err(QuasitoricError::BadDimension);
    }
    let columns: Vec<Vec<i64>> = (0..2 * n).map(|f| unit(n, f / 2)).collect();
    CharacteristicPair::new(cube(n)?, IntMatrix::from_columns(n, &columns))
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDescriptor {
    pub manifold_dim: usize,
    pub torus_action_rank: usize,
    pub moment_angle_dim: usize,
    pub quotient_torus_rank: usize,
}

pub fn quotient_descriptor(pair: &CharacteristicPair) -> Result<QuotientDescriptor, QuasitoricError> {
    let report = check_freeness(pair)?;
    if !report.ok {
        return Err(QuasitoricError::NotFree(report.failing_vertices.len()));
    }
    let (n, m) = (pair.polytope.dim(), pair.polytope.num_facets());
    Ok(QuotientDescriptor {
        manifold_dim: 2 * n,
        torus_action_rank: n,
        moment_angle_dim: m + n,
        quotient_torus_rank: m - n,
    })
}
