//! Surgery ledgers: reading a reduction backwards as a chain of equivariant
//! surgeries on moment-angle complexes, and checking the chain.
//!
//! A bistellar `i`-move on `K(P)` of an `n`-polytope corresponds to an
//! equivariant surgery on `Z_P` of codimension
//!
//! * `2n` for `i = 0`, after crossing with one extra circle,
//! * `2n − 2i` for `1 ≤ i ≤ n − 2`,
//! * `2` for `i = n − 1`.
//!
//! The chain starts at `Z_{Δⁿ} × T^k = S^{2n+1} × T^k` with one circle per
//! construction 0-move. Surgeries of codimension at least three preserve
//! invariant positive scalar curvature.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bistellar::{apply_move, Move};
use crate::complex::{Complex, Simplex};
use crate::digest::{digest_hex, HASH_ALGORITHM};
use crate::polytope::{dual_complex, DualComplexMap, PolytopeDoc, SimplePolytope};
use crate::quasitoric::{check_freeness, quotient_descriptor, CharacteristicPair, QuotientDescriptor};
use crate::reduction::{replay, MoveSequence, ReductionResult, ReplayError};

/// Minimum codimension for which equivariant surgery preserves invariant
/// positive scalar curvature.
pub const CODIMENSION_THRESHOLD: usize = 3;
/// What strict reductions guarantee.
pub const PIPELINE_CODIMENSION: usize = 4;

pub const CITE_BASE: &str =
    "base-stage: Z(simplex^n) = S^(2n+1) with the standard T^(n+1)-action; S^(2n+1) x T^k has an invariant metric of positive scalar curvature (round x flat)";
pub const CITE_MOVES: &str =
    "move-to-surgery: a bistellar i-move K(P) -> K(P') gives an equivariant surgery Z_P -> Z_P' of codimension 2n (i = 0, with an extra S^1), 2n-2i (1 <= i <= n-2), 2 (i = n-1) [Buchstaber-Panov, Example 6.22, Construction 6.23]";
pub const CITE_EWALD: &str =
    "ewald: every simple n-polytope, n >= 3, is reached from the n-simplex by bistellar k-moves with 0 <= k <= n-2 through simple polytopes [Ewald 1978]";
pub const CITE_SURGERY: &str =
    "surgery-psc: equivariant surgery of codimension >= 3 preserves invariant positive scalar curvature [Berard Bergery, Theorem 11.1; Hanke, Theorem 2]";
pub const CITE_QUOTIENT: &str =
    "free-quotient: positive scalar curvature descends along free torus quotients, invariantly [Berard Bergery, Theorem C]";

pub fn citations() -> Vec<String> {
    [CITE_BASE, CITE_MOVES, CITE_EWALD, CITE_SURGERY, CITE_QUOTIENT]
        .map(String::from)
        .to_vec()
}

pub const POLYTOPALITY_UNVERIFIED: &str = "unverified";
pub const INTERMEDIATES_NOTE: &str =
    "pure pseudomanifold spheres reached from a polytopal start by bistellar moves";

/// Codimension of the surgery attached to a construction move of type `i`
/// on the dual complex of an `n`-polytope.
pub fn surgery_codimension(n: usize, construction_type: usize) -> Option<usize> {
    let i = construction_type;
    if n == 0 || i > n - 1 {
        return None;
    }
    Some(if i == 0 {
        2 * n
    } else if i == n - 1 {
        2
    } else {
        2 * n - 2 * i
    })
}

/// The same codimension read off the reduction-direction type `j = n − 1 − i`.
pub fn codimension_from_reduction_type(reduction_type: usize) -> usize {
    2 + 2 * reduction_type
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("the reduction did not reach a simplex boundary")]
    NotReduced,
    #[error("the reduction starts from {found}, the dual complex hashes to {expected}")]
    StartMismatch { expected: String, found: String },
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("certificate does not verify")]
    NotVerified,
    #[error("characteristic pair is over a different polytope")]
    PairMismatch,
    #[error("torus does not act freely ({0} failing vertices)")]
    FreenessFailed(usize),
    #[error("characteristic pair rejected: {0}")]
    BadPair(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryStep {
    pub index: usize,
    pub construction_type: usize,
    pub sigma: Simplex,
    pub tau: Simplex,
    pub codimension: usize,
    pub torus_rank_delta: i64,
    pub post_f_vector: Vec<usize>,
}

impl SurgeryStep {
    pub fn as_move(&self) -> Move {
        Move {
            move_type: self.construction_type,
            sigma: self.sigma.clone(),
            tau: self.tau.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseStage {
    pub sphere_dimension: usize,
    pub extra_circles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Annotations {
    pub polytopality: String,
    pub intermediates_verified_as: String,
}

impl Default for Annotations {
    fn default() -> Self {
        Self {
            polytopality: POLYTOPALITY_UNVERIFIED.into(),
            intermediates_verified_as: INTERMEDIATES_NOTE.into(),
        }
    }
}

/// Construction-direction ledger from `S^{2n+1} × T^k` to `Z_P`.
///
/// The polytope is kept in wire form so that an untrusted certificate can be
/// loaded and refuted rather than rejected at parse time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryCertificate {
    pub polytope: PolytopeDoc,
    pub polytope_hash: String,
    pub dual_hash: String,
    pub hash_algorithm: String,
    pub reduction_moves: MoveSequence,
    pub steps: Vec<SurgeryStep>,
    pub base_stage: BaseStage,
    /// `None` for an empty chain.
    pub min_codimension: Option<usize>,
    pub citations: Vec<String>,
    pub annotations: Annotations,
    pub verified: bool,
}

impl SurgeryCertificate {
    pub fn from_json(text: &str) -> Result<Self, LedgerError> {
        serde_json::from_str(text).map_err(|e| LedgerError::MalformedCertificate(e.to_string()))
    }
}

pub fn build_ledger(
    dual: &DualComplexMap,
    result: &ReductionResult,
) -> Result<SurgeryCertificate, LedgerError> {
    if !result.succeeded {
        return Err(LedgerError::NotReduced);
    }
    let dual_hash = digest_hex(&dual.complex);
    if result.moves.start_hash != dual_hash {
        return Err(LedgerError::StartMismatch {
            expected: dual_hash,
            found: result.moves.start_hash.clone(),
        });
    }
    let end = result.moves.replay_from(&dual.complex)?;
    if !end.is_boundary_of_simplex() {
        return Err(LedgerError::NotReduced);
    }

    let n = dual.polytope.dim();
    let construction: Vec<Move> = result.moves.moves.iter().rev().map(Move::inverse).collect();
    let mut state = end;
    let mut steps = Vec::with_capacity(construction.len());
    for (index, m) in construction.into_iter().enumerate() {
        state = apply_move(&state, &m)
            .map_err(|reason| LedgerError::Replay(ReplayError::ReplayFailure { index, reason }))?;
        let i = m.move_type;
        steps.push(SurgeryStep {
            index,
            construction_type: i,
            codimension: surgery_codimension(n, i).expect("type bounded by dimension"),
            torus_rank_delta: i64::from(i == 0),
            post_f_vector: state.f_vector(),
            sigma: m.sigma,
            tau: m.tau,
        });
    }
    debug_assert_eq!(state, dual.complex);

    let extra_circles = steps.iter().filter(|s| s.construction_type == 0).count();
    let min_codimension = steps.iter().map(|s| s.codimension).min();
    let verified = min_codimension.is_none_or(|c| c >= CODIMENSION_THRESHOLD);
    let polytope = dual.polytope.to_doc();
    Ok(SurgeryCertificate {
        polytope_hash: digest_hex(&polytope),
        polytope,
        dual_hash,
        hash_algorithm: HASH_ALGORITHM.into(),
        reduction_moves: result.moves.clone(),
        steps,
        base_stage: BaseStage {
            sphere_dimension: 2 * n + 1,
            extra_circles,
        },
        min_codimension,
        citations: citations(),
        annotations: Annotations::default(),
        verified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Recomputed minimum codimension is at least three (or the chain is empty).
    pub codimension_threshold_met: bool,
    /// Recomputed minimum codimension is at least four (or the chain is empty).
    pub pipeline_target_met: bool,
    pub claimed_verified: bool,
    pub recomputed_verified: bool,
    /// Every check passed and the certificate verifies.
    pub ok: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn record(&mut self, name: &str, failure: Option<String>) -> bool {
        let passed = failure.is_none();
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: failure.unwrap_or_else(|| "ok".into()),
        });
        passed
    }

    fn blocked(&mut self, names: &[&str], reason: &str) {
        for name in names {
            self.record(name, Some(format!("not checked: {reason}")));
        }
    }
}

const REPLAY_CHECKS: &[&str] = &[
    "dual_hash",
    "start_hash",
    "reduction_replay",
    "replay_endpoint",
    "steps_mirror_reduction",
    "codimension_formula",
    "torus_rank_delta",
    "construction_replay",
    "base_stage_sphere_dimension",
    "torus_conservation",
];

/// Recomputes everything in an untrusted certificate and reports each check.
pub fn verify_certificate(cert: &SurgeryCertificate) -> VerificationReport {
    let mut checks = Checks::default();

    checks.record(
        "hash_algorithm",
        (cert.hash_algorithm != HASH_ALGORITHM).then(|| {
            format!(
                "hash_algorithm: expected {HASH_ALGORITHM:?}, found {:?}",
                cert.hash_algorithm
            )
        }),
    );
    let polytope_hash = digest_hex(&cert.polytope);
    checks.record(
        "polytope_hash",
        (polytope_hash != cert.polytope_hash)
            .then(|| format!("polytope_hash: recorded {}, recomputed {polytope_hash}", cert.polytope_hash)),
    );
    checks.record(
        "citations",
        (cert.citations != citations()).then(|| "citations: list differs from the fixed anchors".into()),
    );
    checks.record(
        "annotations",
        (cert.annotations != Annotations::default())
            .then(|| "annotations: polytopality or intermediates note altered".into()),
    );
    let index_fault = cert
        .steps
        .iter()
        .enumerate()
        .find(|(k, s)| s.index != *k)
        .map(|(k, s)| format!("steps[{k}].index: found {}, expected {k}", s.index));
    checks.record("step_indices", index_fault);
    let count_ok = checks.record(
        "step_count",
        (cert.steps.len() != cert.reduction_moves.len()).then(|| {
            format!(
                "steps: {} steps for {} reduction moves",
                cert.steps.len(),
                cert.reduction_moves.len()
            )
        }),
    );

    let recomputed_min = cert.steps.iter().map(|s| s.codimension).min();
    let mut structural_ok = true;

    match SimplePolytope::parse(&cert.polytope) {
        Err(e) => {
            checks.record("polytope_valid", Some(format!("polytope: {e}")));
            checks.blocked(REPLAY_CHECKS, "polytope is invalid");
            structural_ok = false;
        }
        Ok(p) => {
            checks.record("polytope_valid", None);
            structural_ok &= verify_chain(cert, &p, count_ok, &mut checks);
        }
    }

    let circles: i64 = cert.steps.iter().map(|s| s.torus_rank_delta).sum();
    checks.record(
        "extra_circles",
        (circles != cert.base_stage.extra_circles as i64).then(|| {
            format!(
                "base_stage.extra_circles: recorded {}, steps add {circles}",
                cert.base_stage.extra_circles
            )
        }),
    );
    checks.record(
        "min_codimension",
        (cert.min_codimension != recomputed_min).then(|| {
            format!(
                "min_codimension: recorded {:?}, steps give {recomputed_min:?}",
                cert.min_codimension
            )
        }),
    );
    let threshold = recomputed_min.is_none_or(|c| c >= CODIMENSION_THRESHOLD);
    let target = recomputed_min.is_none_or(|c| c >= PIPELINE_CODIMENSION);
    checks.record(
        "codimension_threshold",
        (!threshold).then(|| {
            format!(
                "min_codimension {} is below {CODIMENSION_THRESHOLD}",
                recomputed_min.unwrap_or_default()
            )
        }),
    );

    let others_ok = checks.0.iter().all(|c| c.passed);
    let recomputed_verified = structural_ok && others_ok;
    checks.record(
        "verified_claim",
        (cert.verified != recomputed_verified).then(|| {
            format!(
                "verified: certificate claims {}, recomputation gives {recomputed_verified}",
                cert.verified
            )
        }),
    );
    let ok = checks.0.iter().all(|c| c.passed) && recomputed_verified;
    VerificationReport {
        checks: checks.0,
        codimension_threshold_met: threshold,
        pipeline_target_met: target,
        claimed_verified: cert.verified,
        recomputed_verified,
        ok,
    }
}

fn verify_chain(
    cert: &SurgeryCertificate,
    polytope: &SimplePolytope,
    count_ok: bool,
    checks: &mut Checks,
) -> bool {
    let n = polytope.dim();
    let m = polytope.num_facets();
    let dual = dual_complex(polytope).complex;
    let dual_hash = digest_hex(&dual);
    let mut ok = true;

    ok &= checks.record(
        "dual_hash",
        (cert.dual_hash != dual_hash)
            .then(|| format!("dual_hash: recorded {}, recomputed {dual_hash}", cert.dual_hash)),
    );
    ok &= checks.record(
        "start_hash",
        (cert.reduction_moves.start_hash != dual_hash).then(|| {
            format!(
                "reduction_moves.start_hash: {} does not match the dual complex",
                cert.reduction_moves.start_hash
            )
        }),
    );

    let moves = &cert.reduction_moves.moves;
    let end = match replay(&dual, moves) {
        Ok(end) => {
            checks.record("reduction_replay", None);
            Some(end)
        }
        Err(e) => {
            checks.record("reduction_replay", Some(format!("reduction_moves: {e}")));
            None
        }
    };
    let end_ok = end.as_ref().is_some_and(Complex::is_boundary_of_simplex);
    checks.record(
        "replay_endpoint",
        (!end_ok).then(|| "replay endpoint is not boundary of simplex".to_string()),
    );
    ok &= end_ok;

    let mirror_fault = if count_ok {
        cert.steps
            .iter()
            .zip(moves.iter().rev())
            .enumerate()
            .find(|(_, (s, m))| s.as_move() != m.inverse())
            .map(|(k, _)| {
                format!(
                    "steps[{k}]: does not invert reduction move {}",
                    moves.len() - 1 - k
                )
            })
    } else {
        Some("steps: count differs from the reduction".into())
    };
    ok &= checks.record("steps_mirror_reduction", mirror_fault);

    let codim_fault = cert.steps.iter().enumerate().find_map(|(k, s)| {
        let by_construction = surgery_codimension(n, s.construction_type);
        let by_reduction = (s.construction_type < n)
            .then(|| codimension_from_reduction_type(n - 1 - s.construction_type));
        (by_construction != Some(s.codimension) || by_reduction != Some(s.codimension)).then(|| {
            format!(
                "codimension formula violated at step {k} (recorded {}, type {} gives {:?})",
                s.codimension, s.construction_type, by_construction
            )
        })
    });
    ok &= checks.record("codimension_formula", codim_fault);

    let delta_fault = cert.steps.iter().enumerate().find_map(|(k, s)| {
        let expected = i64::from(s.construction_type == 0);
        (s.torus_rank_delta != expected).then(|| {
            format!(
                "steps[{k}].torus_rank_delta: recorded {}, expected {expected}",
                s.torus_rank_delta
            )
        })
    });
    ok &= checks.record("torus_rank_delta", delta_fault);

    let construction_fault = match &end {
        None => Some("not checked: reduction does not replay".to_string()),
        Some(start) => {
            let mut state = start.clone();
            let mut fault = None;
            for (k, s) in cert.steps.iter().enumerate() {
                match apply_move(&state, &s.as_move()) {
                    Err(e) => {
                        fault = Some(format!("steps[{k}]: {e}"));
                        break;
                    }
                    Ok(next) => state = next,
                }
                if state.f_vector() != s.post_f_vector {
                    fault = Some(format!(
                        "steps[{k}].post_f_vector: recorded {:?}, replay gives {:?}",
                        s.post_f_vector,
                        state.f_vector()
                    ));
                    break;
                }
            }
            fault.or_else(|| {
                (state != dual).then(|| "construction chain does not end at the dual complex".into())
            })
        }
    };
    ok &= checks.record("construction_replay", construction_fault);

    ok &= checks.record(
        "base_stage_sphere_dimension",
        (cert.base_stage.sphere_dimension != 2 * n + 1).then(|| {
            format!(
                "base_stage.sphere_dimension: recorded {}, expected {}",
                cert.base_stage.sphere_dimension,
                2 * n + 1
            )
        }),
    );

    let strict = moves.iter().all(|mv| mv.move_type >= 1);
    let conservation_fault = if strict {
        let expected = m as i64 - (n as i64 + 1);
        (cert.base_stage.extra_circles as i64 != expected).then(|| {
            format!(
                "base_stage.extra_circles: recorded {}, vertex count gives {expected}",
                cert.base_stage.extra_circles
            )
        })
    } else {
        None
    };
    ok &= checks.record("torus_conservation", conservation_fault);
    ok
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Established by this program's recomputation.
    Checked,
    /// A published result applied to checked hypotheses.
    Cited,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub stage: String,
    pub statement: String,
    pub basis: Basis,
    pub citation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStage {
    pub name: String,
    pub descriptor: QuotientDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PscStatement {
    pub polytope_dim: usize,
    pub facets: usize,
    pub base_stage: String,
    pub moment_angle_dim: usize,
    pub surgeries: usize,
    pub min_codimension: Option<usize>,
    pub claims: Vec<Claim>,
    pub quotient: Option<QuotientStage>,
}

/// The conclusion chain for a verified certificate. Combinatorial facts are
/// marked `checked`; the analytic consequences are marked `cited`.
pub fn psc_statement(
    cert: &SurgeryCertificate,
    pair: Option<&CharacteristicPair>,
) -> Result<PscStatement, LedgerError> {
    if !cert.verified || !verify_certificate(cert).ok {
        return Err(LedgerError::NotVerified);
    }
    let n = cert.polytope.dim as usize;
    let m = cert.polytope.facets.len();
    let k = cert.base_stage.extra_circles;
    let base = if k == 0 {
        format!("S^{}", 2 * n + 1)
    } else {
        format!("S^{} x T^{k}", 2 * n + 1)
    };
    let min = cert.min_codimension;

    let mut claims = vec![
        Claim {
            stage: "base".into(),
            statement: format!(
                "{base} (dimension {}) carries a T^{m}-invariant metric of positive scalar curvature",
                2 * n + 1 + k
            ),
            basis: Basis::Cited,
            citation: Some(CITE_BASE.into()),
        },
        Claim {
            stage: "surgeries".into(),
            statement: match min {
                Some(c) => format!(
                    "Z_P is obtained from {base} by {} equivariant surgeries, each of codimension >= {CODIMENSION_THRESHOLD} (minimum {c})",
                    cert.steps.len()
                ),
                None => format!("Z_P = {base}; no surgeries are needed"),
            },
            basis: Basis::Checked,
            citation: Some(CITE_MOVES.into()),
        },
        Claim {
            stage: "moment-angle".into(),
            statement: format!(
                "Z_P (dimension {}) carries a T^{m}-invariant metric of positive scalar curvature",
                m + n
            ),
            basis: Basis::Cited,
            citation: Some(CITE_SURGERY.into()),
        },
    ];

    let quotient = match pair {
        None => None,
        Some(pair) => {
            if pair.polytope.to_doc() != cert.polytope {
                return Err(LedgerError::PairMismatch);
            }
            let report = check_freeness(pair).map_err(|e| LedgerError::BadPair(e.to_string()))?;
            if !report.ok {
                return Err(LedgerError::FreenessFailed(report.failing_vertices.len()));
            }
            let descriptor =
                quotient_descriptor(pair).map_err(|e| LedgerError::BadPair(e.to_string()))?;
            let name = if m == n + 1 {
                format!("CP^{n}-type quotient S^{}/T'", 2 * n + 1)
            } else {
                format!("quasitoric manifold Z_P/T' over a {n}-polytope")
            };
            claims.push(Claim {
                stage: "free-action".into(),
                statement: format!(
                    "T' of rank {} acts freely on Z_P: every vertex minor of lambda is unimodular",
                    descriptor.quotient_torus_rank
                ),
                basis: Basis::Checked,
                citation: None,
            });
            claims.push(Claim {
                stage: "quotient".into(),
                statement: format!(
                    "M = {name} (dimension {}) carries a T^{n}-invariant metric of positive scalar curvature",
                    descriptor.manifold_dim
                ),
                basis: Basis::Cited,
                citation: Some(CITE_QUOTIENT.into()),
            });
            Some(QuotientStage { name, descriptor })
        }
    };

    Ok(PscStatement {
        polytope_dim: n,
        facets: m,
        base_stage: base,
        moment_angle_dim: m + n,
        surgeries: cert.steps.len(),
        min_codimension: min,
        claims,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{prism, simplex_polytope};
    use crate::quasitoric::cpn_pair;
    use crate::reduction::{reduce_to_simplex, ReductionOptions};

    fn certify(p: &SimplePolytope) -> SurgeryCertificate {
        let dual = dual_complex(p);
        let r = reduce_to_simplex(&dual.complex, &ReductionOptions::default()).unwrap();
        build_ledger(&dual, &r).unwrap()
    }

    #[test]
    fn codimension_clauses() {
        assert_eq!(surgery_codimension(3, 0), Some(6));
        assert_eq!(surgery_codimension(3, 1), Some(4));
        assert_eq!(surgery_codimension(3, 2), Some(2));
        assert_eq!(surgery_codimension(5, 2), Some(6));
        assert_eq!(surgery_codimension(3, 3), None);
        for n in 1..9 {
            for i in 0..n {
                assert_eq!(
                    surgery_codimension(n, i),
                    Some(codimension_from_reduction_type(n - 1 - i))
                );
            }
        }
    }

    #[test]
    fn simplex_has_empty_chain() {
        let cert = certify(&simplex_polytope(3).unwrap());
        assert!(cert.steps.is_empty());
        assert_eq!(
            cert.base_stage,
            BaseStage {
                sphere_dimension: 7,
                extra_circles: 0
            }
        );
        assert!(cert.verified);
        assert!(verify_certificate(&cert).ok);
    }

    #[test]
    fn prism_has_one_subdivision() {
        let cert = certify(&prism());
        assert_eq!(cert.steps.len(), 1);
        let step = &cert.steps[0];
        assert_eq!(step.construction_type, 0);
        assert_eq!(step.codimension, 6);
        assert_eq!(step.torus_rank_delta, 1);
        assert_eq!(step.post_f_vector, vec![5, 9, 6]);
        assert_eq!(cert.base_stage.extra_circles, 1);
        assert_eq!(cert.min_codimension, Some(6));
        assert!(cert.verified);
    }

    #[test]
    fn tampering_is_localized() {
        let cert = certify(&prism());
        assert!(verify_certificate(&cert).ok);

        let mut bad = cert.clone();
        bad.steps[0].codimension = 2;
        let report = verify_certificate(&bad);
        assert!(!report.ok);
        let fault = report
            .failures()
            .find(|c| c.name == "codimension_formula")
            .unwrap();
        assert!(fault.detail.starts_with("codimension formula violated at step 0"));

        let mut bad = cert.clone();
        bad.reduction_moves.moves.pop();
        let report = verify_certificate(&bad);
        let fault = report.failures().find(|c| c.name == "replay_endpoint").unwrap();
        assert_eq!(fault.detail, "replay endpoint is not boundary of simplex");
    }

    #[test]
    fn rejects_failed_reductions() {
        let dual = dual_complex(&prism());
        let r = ReductionResult {
            moves: MoveSequence::new(&dual.complex, vec![]),
            final_complex: dual.complex.clone(),
            succeeded: false,
            steps_examined: 0,
        };
        assert_eq!(build_ledger(&dual, &r), Err(LedgerError::NotReduced));
    }

    #[test]
    fn statements() {
        let cert = certify(&simplex_polytope(2).unwrap());
        let st = psc_statement(&cert, Some(&cpn_pair(2).unwrap())).unwrap();
        let q = st.quotient.unwrap();
        assert!(q.name.starts_with("CP^2"));
        assert_eq!(q.descriptor.manifold_dim, 4);

        let mut unverified = cert.clone();
        unverified.verified = false;
        assert_eq!(psc_statement(&unverified, None), Err(LedgerError::NotVerified));

        let pr = certify(&prism());
        assert_eq!(
            psc_statement(&pr, Some(&cpn_pair(3).unwrap())),
            Err(LedgerError::PairMismatch)
        );
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            SurgeryCertificate::from_json("{\"polytope\": 3}"),
            Err(LedgerError::MalformedCertificate(_))
        ));
    }
}
