//! Searching for bistellar move sequences that reduce a sphere candidate to
//! the boundary of a simplex.
//!
//! In strict mode the search never adds vertices, so read backwards every
//! move builds the complex up from `∂Δⁿ` using types `0..=n−2` only. The
//! search is a greedy vertex-removal pass interleaved with simulated
//! annealing over the remaining moves; restarts run in parallel with seeds
//! derived from the base seed, and the lowest-index success wins.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bistellar::{apply_move, enumerate_moves, f_vector_delta, Move, MoveError};
use crate::complex::{Complex, VertexId};
use crate::digest::digest_hex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only moves of type `1..=dim` (vertex count never grows).
    #[default]
    Strict,
    /// Every move type, including vertex-adding 0-moves.
    Free,
}

impl Mode {
    pub fn allowed_types(self, dim: isize) -> BTreeSet<usize> {
        if dim < 0 {
            return BTreeSet::new();
        }
        let lo = match self {
            Mode::Strict => 1,
            Mode::Free => 0,
        };
        (lo..=dim as usize).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealingSchedule {
    pub initial_temperature: f64,
    pub cooling_factor: f64,
    pub steps_per_temperature: u64,
}

impl Default for AnnealingSchedule {
    fn default() -> Self {
        Self {
            initial_temperature: 1.0,
            cooling_factor: 0.99,
            steps_per_temperature: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionOptions {
    pub mode: Mode,
    /// Step budget for each restart.
    pub max_steps: u64,
    pub rng_seed: u64,
    pub annealing: AnnealingSchedule,
    pub restarts: usize,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        Self {
            mode: Mode::Strict,
            max_steps: 100_000,
            rng_seed: 0,
            annealing: AnnealingSchedule::default(),
            restarts: 8,
        }
    }
}

impl ReductionOptions {
    fn validate(&self) -> Result<(), ReductionError> {
        let a = &self.annealing;
        if !(a.initial_temperature > 0.0 && a.initial_temperature.is_finite()) {
            return Err(ReductionError::BadInput(
                "initial_temperature must be positive".into(),
            ));
        }
        if !(a.cooling_factor > 0.0 && a.cooling_factor < 1.0) {
            return Err(ReductionError::BadInput(
                "cooling_factor must lie in (0, 1)".into(),
            ));
        }
        if a.steps_per_temperature == 0 {
            return Err(ReductionError::BadInput(
                "steps_per_temperature must be positive".into(),
            ));
        }
        if self.restarts == 0 {
            return Err(ReductionError::BadInput("restarts must be positive".into()));
        }
        Ok(())
    }
}

/// An ordered move script bound to the digest of the complex it starts from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveSequence {
    pub start_hash: String,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new(start: &Complex, moves: Vec<Move>) -> Self {
        Self {
            start_hash: digest_hex(start),
            moves,
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Checks the start digest, then replays.
    pub fn replay_from(&self, start: &Complex) -> Result<Complex, ReplayError> {
        let actual = digest_hex(start);
        if actual != self.start_hash {
            return Err(ReplayError::StartHashMismatch {
                expected: self.start_hash.clone(),
                actual,
            });
        }
        replay(start, &self.moves)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("move {index} failed: {reason}")]
    ReplayFailure { index: usize, reason: MoveError },
    #[error("sequence starts from {expected}, the complex hashes to {actual}")]
    StartHashMismatch { expected: String, actual: String },
}

pub fn replay(start: &Complex, moves: &[Move]) -> Result<Complex, ReplayError> {
    moves
        .iter()
        .enumerate()
        .try_fold(start.clone(), |k, (index, m)| {
            apply_move(&k, m).map_err(|reason| ReplayError::ReplayFailure { index, reason })
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionResult {
    pub moves: MoveSequence,
    #[serde(rename = "final")]
    pub final_complex: Complex,
    pub succeeded: bool,
    pub steps_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("search exhausted after {} steps without reaching a simplex boundary", .0.steps_examined)]
    SearchExhausted(Box<ReductionResult>),
}

/// Lexicographic search cost: vertex count, then f-vector entries from the
/// top dimension down.
pub fn cost(f: &[usize]) -> Vec<usize> {
    let mut c = Vec::with_capacity(f.len());
    c.extend(f.first().copied());
    c.extend(f.iter().skip(1).rev().copied());
    c
}

/// Scalar energy for the Metropolis test. Vertex count dominates; the facet
/// count moves the energy by one unit per facet.
fn energy_delta(delta_f: &[i64]) -> f64 {
    let mut e = 1000.0 * delta_f[0] as f64;
    let mut w = 1.0;
    for &d in delta_f.iter().skip(1).rev() {
        e += w * d as f64;
        w *= 1e-3;
    }
    e
}

pub fn reduce_to_simplex(
    k: &Complex,
    opts: &ReductionOptions,
) -> Result<ReductionResult, ReductionError> {
    opts.validate()?;
    if !k.looks_like_sphere() {
        return Err(ReductionError::BadInput(
            "input is not a pure pseudomanifold with the Euler characteristic of a sphere".into(),
        ));
    }
    if k.is_boundary_of_simplex() {
        return Ok(ReductionResult {
            moves: MoveSequence::new(k, Vec::new()),
            final_complex: k.clone(),
            succeeded: true,
            steps_examined: 0,
        });
    }

    let allowed = opts.mode.allowed_types(k.dim());
    let winner = AtomicUsize::new(usize::MAX);
    let attempts: Vec<Attempt> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let seed = opts.rng_seed.wrapping_add(r as u64);
            let attempt = anneal(k, &allowed, opts, seed, r, &winner);
            if attempt.succeeded {
                winner.fetch_min(r, Ordering::SeqCst);
            }
            attempt
        })
        .collect();

    let won = attempts.iter().position(|a| a.succeeded);
    let considered = won.map_or(attempts.len(), |w| w + 1);
    let steps_examined = attempts[..considered].iter().map(|a| a.steps).sum();
    match won {
        Some(w) => {
            let a = &attempts[w];
            let moves = cancel_inverse_pairs(a.moves.clone());
            Ok(ReductionResult {
                moves: MoveSequence::new(k, moves),
                final_complex: a.state.clone(),
                succeeded: true,
                steps_examined,
            })
        }
        None => {
            let best = attempts
                .iter()
                .min_by(|a, b| a.best_cost.cmp(&b.best_cost))
                .expect("at least one restart");
            let moves = cancel_inverse_pairs(best.moves[..best.best_len].to_vec());
            let final_complex = replay(k, &moves).expect("prefix of a valid walk replays");
            Err(ReductionError::SearchExhausted(Box::new(ReductionResult {
                moves: MoveSequence::new(k, moves),
                final_complex,
                succeeded: false,
                steps_examined,
            })))
        }
    }
}

struct Attempt {
    moves: Vec<Move>,
    state: Complex,
    succeeded: bool,
    steps: u64,
    best_cost: Vec<usize>,
    best_len: usize,
}

fn anneal(
    start: &Complex,
    allowed: &BTreeSet<usize>,
    opts: &ReductionOptions,
    seed: u64,
    restart: usize,
    winner: &AtomicUsize,
) -> Attempt {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = start.facet_size() - 1;
    let removal = BTreeSet::from([dim]);
    let greedy = allowed.contains(&dim);
    let schedule = &opts.annealing;

    let mut state = start.clone();
    let mut f = state.f_vector();
    let mut attempt = Attempt {
        moves: Vec::new(),
        state: start.clone(),
        succeeded: false,
        steps: 0,
        best_cost: cost(&f),
        best_len: 0,
    };
    let mut temperature = schedule.initial_temperature;

    let advance = |state: &mut Complex, f: &mut Vec<usize>, attempt: &mut Attempt, m: Move| {
        *state = apply_move(state, &m).expect("enumerated moves apply");
        for (x, d) in f.iter_mut().zip(f_vector_delta(dim, m.move_type)) {
            *x = (*x as i64 + d) as usize;
        }
        attempt.moves.push(m);
        let c = cost(f);
        if c < attempt.best_cost {
            attempt.best_cost = c;
            attempt.best_len = attempt.moves.len();
        }
    };

    while attempt.steps < opts.max_steps {
        if attempt.steps.is_multiple_of(256) && winner.load(Ordering::Relaxed) < restart {
            break;
        }
        if greedy {
            if let Some(m) = enumerate_moves(&state, &removal).into_iter().next() {
                attempt.steps += 1;
                advance(&mut state, &mut f, &mut attempt, m);
                continue;
            }
        }
        if state.is_boundary_of_simplex() {
            attempt.succeeded = true;
            break;
        }
        let candidates = enumerate_moves(&state, allowed);
        if candidates.is_empty() {
            break;
        }
        let m = candidates[rng.gen_range(0..candidates.len())].clone();
        let delta = energy_delta(&f_vector_delta(dim, m.move_type));
        attempt.steps += 1;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
            advance(&mut state, &mut f, &mut attempt, m);
        }
        if attempt.steps.is_multiple_of(schedule.steps_per_temperature) {
            temperature *= schedule.cooling_factor;
            if temperature < schedule.initial_temperature * 1e-3 {
                temperature = schedule.initial_temperature;
            }
        }
    }
    if !attempt.succeeded && state.is_boundary_of_simplex() {
        attempt.succeeded = true;
    }
    attempt.state = state;
    attempt
}

/// Drops adjacent `m, m⁻¹` pairs; the replayed endpoint is unchanged.
pub fn cancel_inverse_pairs(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::with_capacity(moves.len());
    for m in moves {
        if out.last().is_some_and(|prev| prev.inverse() == m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Relabels the support to `0..v` in every possible way and keeps the
/// lexicographically smallest sorted facet list.
pub fn canonical_form(k: &Complex) -> Vec<Vec<u8>> {
    let support: Vec<VertexId> = k.vertex_support().into_iter().collect();
    let n = support.len();
    assert!(n <= 10, "canonical form by permutation needs a small support");
    let position = |v: VertexId| support.binary_search(&v).expect("support vertex");
    let facets: Vec<Vec<usize>> = k
        .facets()
        .map(|f| f.vertices().iter().map(|&v| position(v)).collect())
        .collect();

    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut best: Option<Vec<Vec<u8>>> = None;
    loop {
        let mut image: Vec<Vec<u8>> = facets
            .iter()
            .map(|f| {
                let mut g: Vec<u8> = f.iter().map(|&i| perm[i]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Breadth-first flip distance to any simplex boundary, identifying
/// complexes up to relabeling. `None` if nothing is reached within `radius`.
pub fn flip_distance_oracle(
    k: &Complex,
    allowed_types: &BTreeSet<usize>,
    radius: usize,
) -> Option<usize> {
    if k.is_boundary_of_simplex() {
        return Some(0);
    }
    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::from([canonical_form(k)]);
    let mut queue = VecDeque::from([(k.clone(), 0usize)]);
    while let Some((state, depth)) = queue.pop_front() {
        if depth >= radius {
            continue;
        }
        for m in enumerate_moves(&state, allowed_types) {
            let next = apply_move(&state, &m).expect("enumerated moves apply");
            if next.is_boundary_of_simplex() {
                return Some(depth + 1);
            }
            if seen.insert(canonical_form(&next)) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}
