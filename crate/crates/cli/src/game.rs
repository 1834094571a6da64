use std::fmt::Write as _;

use kunz_core::game::{play, solve, Certificate, SolveResult};
use kunz_core::poset::KunzPoset;
use kunz_core::semigroup::NumericalSemigroup;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{Format, GameArgs};
use crate::error::CliError;
use crate::output::{document, emit, to_json};

/// The `m:i<j,...` form of a poset, listing cover relations.
pub fn poset_spec(p: &KunzPoset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|(i, j)| format!("{i}<{j}")).collect();
    format!("{}:{}", p.m(), covers.join(","))
}

fn parse_poset(s: &str) -> Result<KunzPoset, CliError> {
    let bad = || CliError::Usage(format!("`{s}` is not of the form m:i<j,i<j,..."));
    let (m, rels) = s.split_once(':').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let mut pairs = Vec::new();
    for r in rels.split(',').map(str::trim).filter(|r| !r.is_empty()) {
        let (i, j) = r.split_once('<').ok_or_else(bad)?;
        pairs.push((
            i.trim().parse().map_err(|_| bad())?,
            j.trim().parse().map_err(|_| bad())?,
        ));
    }
    let p = KunzPoset::from_relations(m, &pairs).map_err(|e| CliError::Data(e.to_string()))?;
    if !p.check_kunz_axiom() {
        return Err(CliError::Data(format!(
            "{s}: i < j must imply j - i < j modulo {m}"
        )));
    }
    Ok(p)
}

fn result_name(r: &SolveResult) -> &'static str {
    match r {
        SolveResult::Win { .. } => "WIN",
        SolveResult::Unwinnable => "UNWINNABLE",
        SolveResult::Unknown => "UNKNOWN",
    }
}

pub fn run(args: &GameArgs) -> Result<u8, CliError> {
    let poset = match (&args.gens, &args.poset) {
        (Some(gens), _) => {
            let s = NumericalSemigroup::from_generators(gens)
                .map_err(|e| CliError::Data(e.to_string()))?;
            if s.multiplicity() < 2 {
                return Err(CliError::Data("the game needs multiplicity at least 2".into()));
            }
            s.apery_poset()
        }
        (None, Some(spec)) => parse_poset(spec)?,
        (None, None) => unreachable!("clap requires one source"),
    };

    if let Some(cert) = &args.replay {
        let cert: Certificate = cert.parse().map_err(|e: kunz_core::game::GameError| CliError::Data(e.to_string()))?;
        let r = cert.check(&poset).map_err(|e| CliError::Data(e.to_string()))?;
        let verdict = if r.win { "WIN" } else { "NOT_WIN" };
        let out = match args.format {
            Format::Text => format!(
                "f={} moves={} score={} {verdict}\n",
                cert.f,
                cert.moves.len(),
                r.state.score
            ),
            Format::Json => to_json(&document(
                "game-replay",
                json!({ "f": cert.f, "moves": cert.moves, "score": r.state.score, "win": r.win }),
            )),
        };
        emit(None, out.as_bytes())?;
        return Ok(if r.win { 0 } else { 3 });
    }

    let targets: Vec<u32> = match args.f {
        Some(f) if !poset.is_maximal(f) => {
            return Err(CliError::Data(format!("{f} is not a maximal element")))
        }
        Some(f) => vec![f],
        None => poset.maximal().to_vec(),
    };
    let results: Vec<(u32, SolveResult)> = targets
        .par_iter()
        .map(|&f| (f, solve(&poset, f, args.budget).expect("f is maximal")))
        .collect();
    for (f, r) in &results {
        if let SolveResult::Win { certificate } = r {
            // the solver's own line is replayed before it is printed
            let replay = play(&poset, *f, &certificate.moves).expect("solver moves are legal");
            assert!(replay.win && replay.state.score == certificate.score);
        }
    }

    let out = match args.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "poset={}", poset_spec(&poset));
            let _ = writeln!(s, "e={} t={}", poset.embedding_dimension(), poset.type_());
            for (f, r) in &results {
                let _ = writeln!(s, "f={f} {}", result_name(r));
                if let SolveResult::Win { certificate } = r {
                    let _ = writeln!(s, "certificate: {certificate}");
                }
            }
            s
        }
        Format::Json => to_json(&document(
            "game",
            json!({
                "poset": poset_spec(&poset),
                "e": poset.embedding_dimension(),
                "t": poset.type_(),
                "results": results.iter().map(|(f, r)| json!({ "f": f, "solve": r })).collect::<Vec<_>>(),
            }),
        )),
    };
    emit(None, out.as_bytes())?;
    Ok(if results.iter().all(|(_, r)| r.is_win()) { 0 } else { 3 })
}
