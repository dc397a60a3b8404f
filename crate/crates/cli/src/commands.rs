use std::collections::BTreeSet;
use std::fmt::Debug;
use std::path::{Path, PathBuf};

use psc_core::bistellar::{apply_move, enumerate_moves, Move};
use psc_core::complex::Complex;
use psc_core::ledger::{build_ledger, psc_statement, verify_certificate, SurgeryCertificate};
use psc_core::polytope::{dual_complex, named_polytope, PolytopeDoc, SimplePolytope, CORPUS};
use psc_core::quasitoric::{check_freeness, quotient_descriptor, CharacteristicPair, IntMatrix};
use psc_core::reduction::{
    reduce_to_simplex, replay, MoveSequence, ReductionError, ReductionOptions, ReplayError,
};
use serde::{Deserialize, Serialize};

use crate::io::{location, read_json, read_text, write_json, Diagnostic};
use crate::{Command, Io, Search};

pub const SUCCESS: u8 = 0;
pub const CHECKED_FAILURE: u8 = 1;

/// Variant name of an error enum, used as the diagnostic code.
fn code_of<E: Debug>(e: &E) -> String {
    let text = format!("{e:?}");
    text.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn fail<E: Debug + ToString>(e: E, at: impl ToString) -> Diagnostic {
    Diagnostic::new(&code_of(&e), e.to_string(), at)
}

fn input(io: &Io) -> Option<&Path> {
    io.input.as_deref()
}

fn read_polytope(path: Option<&Path>) -> Result<SimplePolytope, Diagnostic> {
    let doc: PolytopeDoc = read_json(path)?;
    SimplePolytope::parse(&doc).map_err(|e| fail(e, location(path)))
}

fn read_complex(path: Option<&Path>) -> Result<Complex, Diagnostic> {
    read_json(path)
}

fn read_pair(polytope: &SimplePolytope, lambda: &Path) -> Result<CharacteristicPair, Diagnostic> {
    let matrix: IntMatrix = read_json(Some(lambda))?;
    CharacteristicPair::new(polytope.clone(), matrix).map_err(|e| fail(e, lambda.display()))
}

fn options(search: &Search) -> ReductionOptions {
    ReductionOptions {
        mode: search.mode.into(),
        max_steps: search.max_steps,
        rng_seed: search.seed,
        restarts: search.restarts,
        ..Default::default()
    }
}

/// Accepted shapes for `apply --move`.
#[derive(Deserialize)]
#[serde(untagged)]
enum MoveInput {
    One(Move),
    Many(Vec<Move>),
    Sequence(MoveSequence),
}

#[derive(Serialize)]
struct CorpusEntry {
    name: &'static str,
    polytope: PolytopeDoc,
}

pub fn run(command: Command) -> Result<u8, Diagnostic> {
    match command {
        Command::BuildDual(io) => {
            let p = read_polytope(input(&io))?;
            write_json(io.output.as_ref(), &dual_complex(&p).complex)?;
            Ok(SUCCESS)
        }
        Command::Moves { io, types } => {
            let k = read_complex(input(&io))?;
            let all = 0..=k.dim().max(0) as usize;
            let allowed: BTreeSet<usize> = match types {
                Some(t) => t.into_iter().collect(),
                None => all.collect(),
            };
            write_json(io.output.as_ref(), &enumerate_moves(&k, &allowed))?;
            Ok(SUCCESS)
        }
        Command::Apply { io, moves } => apply(&io, &moves),
        Command::Reduce { io, search } => {
            let k = read_complex(input(&io))?;
            match reduce_to_simplex(&k, &options(&search)) {
                Ok(r) => {
                    write_json(io.output.as_ref(), &r)?;
                    Ok(SUCCESS)
                }
                Err(ReductionError::SearchExhausted(best)) => {
                    write_json(io.output.as_ref(), &*best)?;
                    Diagnostic::new(
                        "SearchExhausted",
                        format!("no reduction found in {} steps", best.steps_examined),
                        location(input(&io)),
                    )
                    .emit();
                    Ok(CHECKED_FAILURE)
                }
                Err(e) => Err(fail(e, location(input(&io)))),
            }
        }
        Command::Certify {
            io,
            search,
            lambda,
            statement,
        } => certify(&io, &search, lambda.as_deref(), statement.as_ref()),
        Command::Verify(io) => {
            let text = read_text(input(&io))?;
            let cert = SurgeryCertificate::from_json(&text).map_err(|e| fail(e, location(input(&io))))?;
            let report = verify_certificate(&cert);
            write_json(io.output.as_ref(), &report)?;
            if report.ok {
                return Ok(SUCCESS);
            }
            for c in report.failures() {
                Diagnostic::new("CheckFailed", &c.detail, &c.name).emit();
            }
            Ok(CHECKED_FAILURE)
        }
        Command::CheckFreeness { io, lambda } => {
            let p = read_polytope(input(&io))?;
            let pair = read_pair(&p, &lambda)?;
            let report = check_freeness(&pair).map_err(|e| fail(e, lambda.display()))?;
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                report: psc_core::quasitoric::FreenessReport,
                quotient: Option<psc_core::quasitoric::QuotientDescriptor>,
            }
            let quotient = report.ok.then(|| quotient_descriptor(&pair).ok()).flatten();
            let ok = report.ok;
            write_json(io.output.as_ref(), &Out { report, quotient })?;
            Ok(if ok { SUCCESS } else { CHECKED_FAILURE })
        }
        Command::Examples { name, output } => {
            match name {
                Some(name) => {
                    let p = named_polytope(&name).map_err(|e| fail(e, "name"))?;
                    write_json(output.as_ref(), &p.to_doc())?;
                }
                None => {
                    let corpus: Vec<CorpusEntry> = CORPUS
                        .iter()
                        .map(|&name| CorpusEntry {
                            name,
                            polytope: named_polytope(name).expect("corpus names resolve").to_doc(),
                        })
                        .collect();
                    write_json(output.as_ref(), &corpus)?;
                }
            }
            Ok(SUCCESS)
        }
    }
}

fn apply(io: &Io, moves_path: &Path) -> Result<u8, Diagnostic> {
    let k = read_complex(input(io))?;
    let at = moves_path.display().to_string();
    let result = match read_json::<MoveInput>(Some(moves_path))? {
        MoveInput::One(m) => apply_move(&k, &m).map_err(|e| fail(e, &at)),
        MoveInput::Many(ms) => replay(&k, &ms).map_err(|e| replay_failure(e, &at)),
        MoveInput::Sequence(seq) => seq.replay_from(&k).map_err(|e| replay_failure(e, &at)),
    }?;
    write_json(io.output.as_ref(), &result)?;
    Ok(SUCCESS)
}

fn replay_failure(e: ReplayError, at: &str) -> Diagnostic {
    match &e {
        ReplayError::ReplayFailure { index, reason } => {
            Diagnostic::new(&code_of(reason), &e, format!("{at}#{index}"))
        }
        ReplayError::StartHashMismatch { .. } => fail(e, format!("{at}#start_hash")),
    }
}

fn certify(
    io: &Io,
    search: &Search,
    lambda: Option<&Path>,
    statement: Option<&PathBuf>,
) -> Result<u8, Diagnostic> {
    let at = location(input(io));
    let p = read_polytope(input(io))?;
    let pair = lambda.map(|l| read_pair(&p, l)).transpose()?;
    let dual = dual_complex(&p);
    let result = match reduce_to_simplex(&dual.complex, &options(search)) {
        Ok(r) => r,
        Err(ReductionError::SearchExhausted(best)) => {
            Diagnostic::new(
                "SearchExhausted",
                format!(
                    "no reduction found in {} steps; no certificate emitted",
                    best.steps_examined
                ),
                &at,
            )
            .emit();
            return Ok(CHECKED_FAILURE);
        }
        Err(e) => return Err(fail(e, &at)),
    };
    let cert = build_ledger(&dual, &result).map_err(|e| fail(e, &at))?;
    write_json(io.output.as_ref(), &cert)?;

    let mut code = if cert.verified { SUCCESS } else { CHECKED_FAILURE };
    if !cert.verified {
        Diagnostic::new(
            "NotVerified",
            format!("minimum codimension {:?} is below 3", cert.min_codimension),
            &at,
        )
        .emit();
    }
    if let Some(pair) = &pair {
        let report = check_freeness(pair).map_err(|e| fail(e, "lambda"))?;
        if !report.ok {
            Diagnostic::new(
                "FreenessFailed",
                format!("{} vertex minors are not unimodular", report.failing_vertices.len()),
                "lambda",
            )
            .emit();
            code = CHECKED_FAILURE;
        }
    }
    if let (Some(path), SUCCESS) = (statement, code) {
        let st = psc_statement(&cert, pair.as_ref()).map_err(|e| fail(e, &at))?;
        write_json(Some(path), &st)?;
    }
    Ok(code)
}
