use std::fmt::Write as _;

use kunz_core::kunz::KunzCone;
use kunz_core::lattice::{
    encode, enumerate_orbits, read_checkpoint, resume_orbits, GroupChoice, LatticeOptions,
    Prepared,
};
use serde_json::json;

use crate::args::{Format, LatticeArgs};
use crate::error::CliError;
use crate::output::{document, emit, to_json};

pub fn run(args: &LatticeArgs) -> Result<u8, CliError> {
    let cone = KunzCone::new(args.m).map_err(|e| CliError::Usage(e.to_string()))?;
    let prepared = Prepared::kunz(&cone, GroupChoice::Units)
        .map_err(|e| CliError::from_lattice(None, e))?;
    let options = LatticeOptions {
        restrict_cosimplicial: !args.no_orbit_restriction,
        threads: args.common.threads.map(|t| t as usize),
        checkpoint: args.checkpoint.clone(),
        max_rounds: None,
    };
    let lattice = if args.resume {
        let path = args.checkpoint.as_ref().expect("clap requires --checkpoint");
        let cp = read_checkpoint(path).map_err(|e| CliError::from_checkpoint(path, e))?;
        resume_orbits(&prepared, cp, &options)
    } else {
        enumerate_orbits(&prepared, &options)
    }
    .map_err(|e| CliError::from_lattice(args.checkpoint.as_ref(), e))?;
    let lattice = if args.expand_orbits {
        lattice.expanded(&prepared)
    } else {
        lattice
    };

    if let Some(path) = &args.output {
        let mut bytes = Vec::new();
        encode(&mut bytes, &lattice.snapshot()).map_err(|e| CliError::from_checkpoint(path, e))?;
        emit(Some(path), &bytes)?;
        return Ok(0);
    }
    let out = match args.common.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# m={} dim={} facets={} rays={} records={} faces={}",
                args.m,
                lattice.dim,
                lattice.facet_count,
                lattice.ray_count,
                lattice.orbits.len(),
                lattice.face_count()
            );
            let _ = writeln!(s, "# codimension facet-incidence orbit-size");
            for r in &lattice.orbits {
                let _ = writeln!(s, "{} {} {}", r.codim, r.hset.to_bit_string(), r.orbit_size);
            }
            s
        }
        Format::Json => {
            let records: Vec<_> = lattice
                .orbits
                .iter()
                .map(|r| {
                    json!({
                        "codim": r.codim,
                        "facets": r.hset.to_bit_string(),
                        "orbit_size": r.orbit_size,
                        "cosimplicial": r.cosimplicial,
                    })
                })
                .collect();
            to_json(&document(
                "lattice",
                json!({
                    "m": args.m,
                    "dim": lattice.dim,
                    "facets": lattice.facet_count,
                    "rays": lattice.ray_count,
                    "faces": lattice.face_count(),
                    "expanded": args.expand_orbits,
                    "records": records,
                }),
            ))
        }
    };
    emit(None, out.as_bytes())?;
    Ok(0)
}
