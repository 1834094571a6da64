use std::fmt::Write as _;

use kunz_core::semigroup::NumericalSemigroup;
use serde_json::json;

use crate::args::{Format, SgpArgs};
use crate::error::CliError;
use crate::output::{document, emit, to_json};

/// Parses `m:x1,...,x(m-1)`.
pub fn parse_kunz(s: &str) -> Result<(u32, Vec<i64>), CliError> {
    let bad = || CliError::Usage(format!("`{s}` is not of the form m:x1,...,x(m-1)"));
    let (m, xs) = s.split_once(':').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let xs = xs
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((m, xs))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn run(args: &SgpArgs) -> Result<u8, CliError> {
    let s = match (&args.gens, &args.kunz) {
        (Some(gens), _) => NumericalSemigroup::from_generators(gens),
        (None, Some(k)) => {
            let (m, x) = parse_kunz(k)?;
            NumericalSemigroup::from_kunz(m, &x)
        }
        (None, None) => unreachable!("clap requires one source"),
    }
    .map_err(|e| CliError::Data(e.to_string()))?;

    let m = s.multiplicity();
    let kunz = s.kunz_coordinates();
    let apery = s.apery_set(m).expect("multiplicity is a member");
    let poset = (m >= 2).then(|| s.apery_poset());
    let relations: Vec<(u32, u32)> = poset.as_ref().map(|p| p.relations()).unwrap_or_default();

    let out = match args.format {
        Format::Text => {
            let mut o = String::new();
            let _ = writeln!(o, "generators={}", join(s.generators()));
            let _ = writeln!(o, "m={m}");
            let _ = writeln!(o, "e={}", s.embedding_dimension());
            let _ = writeln!(o, "t={}", s.type_());
            let _ = writeln!(o, "F={}", s.frobenius());
            let _ = writeln!(o, "c={}", s.conductor());
            let _ = writeln!(o, "g={}", s.genus());
            let _ = writeln!(o, "n={}", s.sporadic_count());
            let _ = writeln!(o, "slack={}", s.wilf_slack());
            let _ = writeln!(o, "pseudo_frobenius={}", join(s.pseudo_frobenius()));
            let _ = writeln!(o, "kunz={m}:{}", join(&kunz));
            let _ = writeln!(o, "apery={}", join(&apery));
            if let Some(p) = &poset {
                let _ = writeln!(o, "poset={}", crate::game::poset_spec(p));
            }
            o
        }
        Format::Json => to_json(&document(
            "sgp",
            json!({
                "generators": s.generators(),
                "m": m,
                "e": s.embedding_dimension(),
                "t": s.type_(),
                "frobenius": s.frobenius(),
                "conductor": s.conductor(),
                "genus": s.genus(),
                "sporadic": s.sporadic_count(),
                "wilf_slack": s.wilf_slack(),
                "pseudo_frobenius": s.pseudo_frobenius(),
                "kunz": kunz,
                "apery": apery,
                "relations": relations,
            }),
        )),
    };
    emit(None, out.as_bytes())?;
    Ok(0)
}
