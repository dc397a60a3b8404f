#![allow(dead_code)]

use std::collections::BTreeSet;

use psc_core::bistellar::{apply_move, enumerate_moves, Move};
use psc_core::complex::{Complex, Simplex, VertexId};
use psc_core::ledger::{build_ledger, LedgerError, SurgeryCertificate};
use psc_core::polytope::{dual_complex, named_polytope, CORPUS};
use psc_core::reduction::{reduce_to_simplex, ReductionOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn corpus_duals() -> Vec<(&'static str, Complex)> {
    CORPUS
        .iter()
        .map(|&name| (name, dual_complex(&named_polytope(name).unwrap()).complex))
        .collect()
}

pub fn b5() -> Complex {
    Complex::new(
        2,
        vec![
            vec![0, 1, 4],
            vec![1, 2, 4],
            vec![0, 2, 4],
            vec![0, 1, 5],
            vec![1, 2, 5],
            vec![0, 2, 5],
        ],
    )
    .unwrap()
}

pub fn octahedron() -> Complex {
    dual_complex(&named_polytope("cube-3").unwrap()).complex
}

/// Random `(K, m)` pairs: `K` is reached from a corpus dual by a random walk
/// over all move types, `m` is a random applicable move on `K`.
pub fn reachable_pairs(count: usize, seed: u64) -> Vec<(Complex, Move)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<Complex> = corpus_duals()
        .into_iter()
        .map(|(_, k)| k)
        .filter(|k| k.dim() >= 1 && k.num_facets() <= 40)
        .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut k = starts.choose(&mut rng).unwrap().clone();
        let all: BTreeSet<usize> = (0..=k.dim() as usize).collect();
        for _ in 0..8 {
            let moves = enumerate_moves(&k, &all);
            let m = moves.choose(&mut rng).unwrap().clone();
            out.push((k.clone(), m.clone()));
            k = apply_move(&k, &m).unwrap();
            if out.len() == count || k.num_facets() > 60 {
                break;
            }
        }
    }
    out
}

fn subsets(v: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![vec![]];
    }
    if v.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<VertexId>> = subsets(&v[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, v[0]);
            s
        })
        .collect();
    with.extend(subsets(&v[1..], k));
    with
}

/// Every face of `k` by brute-force subset enumeration of raw facet lists.
pub fn brute_faces(k: &Complex) -> BTreeSet<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    for f in k.facets() {
        for size in 0..=f.len() {
            out.extend(subsets(f.vertices(), size));
        }
    }
    out
}

/// Applicable moves found by scanning raw facet lists directly, without the
/// library's link or applicability code.
pub fn brute_moves(k: &Complex, allowed: &BTreeSet<usize>) -> Vec<Move> {
    let facets: Vec<Vec<VertexId>> = k.facets().map(|f| f.vertices().to_vec()).collect();
    let d = facets[0].len() - 1;
    let fresh = facets.iter().flatten().max().unwrap() + 1;
    let contains = |big: &[VertexId], small: &[VertexId]| small.iter().all(|v| big.contains(v));
    let mut out = Vec::new();
    for sigma in brute_faces(k) {
        if sigma.is_empty() {
            continue;
        }
        let i = d + 1 - sigma.len();
        if !allowed.contains(&i) {
            continue;
        }
        let tau = if i == 0 {
            vec![fresh]
        } else {
            let link: BTreeSet<Vec<VertexId>> = facets
                .iter()
                .filter(|f| contains(f, &sigma))
                .map(|f| f.iter().copied().filter(|v| !sigma.contains(v)).collect())
                .collect();
            let verts: Vec<VertexId> = link
                .iter()
                .flatten()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let boundary: BTreeSet<Vec<VertexId>> = subsets(&verts, i).into_iter().collect();
            if verts.len() != i + 1 || link != boundary {
                continue;
            }
            if facets.iter().any(|f| contains(f, &verts)) {
                continue;
            }
            verts
        };
        out.push(Move {
            move_type: i,
            sigma: Simplex::from_slice(&sigma),
            tau: Simplex::from_slice(&tau),
        });
    }
    out.sort_by(|a, b| (a.move_type, &a.sigma).cmp(&(b.move_type, &b.sigma)));
    out
}

pub fn certify(name: &str) -> SurgeryCertificate {
    let dual = dual_complex(&named_polytope(name).unwrap());
    let r = reduce_to_simplex(&dual.complex, &ReductionOptions::default()).unwrap();
    build_ledger(&dual, &r).unwrap()
}

fn leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                leaves(x, format!("{path}/{k}"), out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                leaves(x, format!("{path}/{i}"), out);
            }
        }
        Value::Null => {}
        _ => out.push(path),
    }
}

/// Changes one scalar field of the certificate's JSON form. Returns the JSON
/// pointer of the field and the re-parsed certificate.
pub fn mutate_one_field(
    cert: &SurgeryCertificate,
    rng: &mut impl Rng,
) -> (String, Result<SurgeryCertificate, LedgerError>) {
    let mut doc = serde_json::to_value(cert).unwrap();
    let mut paths = Vec::new();
    leaves(&doc, String::new(), &mut paths);
    let path = paths[rng.gen_range(0..paths.len())].clone();
    let slot = doc.pointer_mut(&path).unwrap();
    let replacement = match slot {
        Value::Bool(b) => Value::Bool(!*b),
        Value::Number(n) => Value::from(n.as_i64().unwrap() + 1),
        Value::String(s) => {
            let mut t = s.clone();
            match t.pop() {
                Some('0') => t.push('1'),
                Some(c) if c.is_ascii_hexdigit() => t.push('0'),
                Some(c) => {
                    t.push(c);
                    t.push('~');
                }
                None => t.push('~'),
            }
            Value::String(t)
        }
        _ => unreachable!("leaves are scalars"),
    };
    assert_ne!(*slot, replacement);
    *slot = replacement;
    let text = serde_json::to_string(&doc).unwrap();
    (path, SurgeryCertificate::from_json(&text))
}
