//! Combinatorial engine for bistellar reductions of simple polytopes and the
//! equivariant surgery chains they induce on moment-angle complexes.
//!
//! The pipeline runs: polytope → dual complex `K(P)` → strict bistellar
//! reduction to `∂Δⁿ` → construction-direction surgery ledger → replayable
//! certificate, optionally with a characteristic matrix for the free torus
//! quotient.

pub mod bistellar;
pub mod complex;
pub mod digest;
pub mod ledger;
pub mod polytope;
pub mod quasitoric;
pub mod reduction;

pub use bistellar::{apply_move, enumerate_moves, inverse_move, is_applicable, move_type_of, Move};
pub use complex::{boundary_simplex, Complex, ComplexDoc, Simplex, VertexId};
pub use ledger::{build_ledger, psc_statement, verify_certificate, SurgeryCertificate};
pub use polytope::{dual_complex, named_polytope, DualComplexMap, PolytopeDoc, SimplePolytope};
pub use quasitoric::{check_freeness, cpn_pair, CharacteristicPair};
pub use reduction::{flip_distance_oracle, reduce_to_simplex, replay, Mode, MoveSequence, ReductionOptions, ReductionResult};
