use std::fmt::Write as _;
use std::path::PathBuf;

use kunz_core::lattice::{read_checkpoint, LatticeOptions};
use kunz_core::verifier::{verify_multiplicity, Verdict, VerifyOptions, VerifyReport};
use serde_json::{json, Value};

use crate::args::{Format, VerifyArgs};
use crate::error::CliError;
use crate::output::{document, emit, to_json};

pub fn run(args: &VerifyArgs) -> Result<u8, CliError> {
    let single = args.m.start() == args.m.end();
    let mut reports = Vec::new();
    for m in args.m.clone() {
        // one snapshot file per multiplicity when a range is given
        let checkpoint = args.checkpoint.as_ref().map(|p| {
            if single {
                p.clone()
            } else {
                let mut name = p.clone().into_os_string();
                name.push(format!(".m{m}"));
                PathBuf::from(name)
            }
        });
        let resume = match (&checkpoint, args.resume) {
            (Some(path), true) => {
                Some(read_checkpoint(path).map_err(|e| CliError::from_checkpoint(path, e))?)
            }
            _ => None,
        };
        let options = VerifyOptions {
            filters: !(args.no_filters || args.exhaustive),
            all_residues: args.exhaustive,
            budget: args.budget,
            threads: args.common.threads.map(|t| t as usize),
            lattice: LatticeOptions {
                restrict_cosimplicial: !args.no_orbit_restriction,
                checkpoint: checkpoint.clone(),
                ..Default::default()
            },
            resume,
            ..Default::default()
        };
        let report = verify_multiplicity(m, &options)
            .map_err(|e| CliError::from_verify(checkpoint.as_ref(), e))?;
        reports.push(report);
    }

    let out = match args.common.format {
        Format::Text => reports.iter().map(text).collect::<Vec<_>>().join("\n"),
        Format::Json => to_json(&document(
            "verify",
            json!({ "reports": reports.iter().map(json_report).collect::<Vec<_>>() }),
        )),
    };
    emit(args.output.as_deref(), out.as_bytes())?;

    Ok(if reports.iter().any(|r| r.verdict == Verdict::Counterexample) {
        2
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        3
    } else {
        0
    })
}

fn json_report(r: &VerifyReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["timings_ms"] = json!({
        "lattice": (r.timings.lattice_seconds * 1000.0).round() as u64,
        "regions": (r.timings.regions_seconds * 1000.0).round() as u64,
    });
    v
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::WilfHolds => "WILF_HOLDS",
        Verdict::Counterexample => "COUNTEREXAMPLE",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let mode = match (r.filters, r.all_residues) {
        (true, _) => "filtered",
        (false, false) => "all faces",
        (false, true) => "all faces, all residues",
    };
    let _ = writeln!(s, "m = {}", r.m);
    let _ = writeln!(s, "verdict: {}", verdict_name(r.verdict));
    let _ = writeln!(s, "mode: {mode}");
    let _ = writeln!(s, "inequalities: {}", r.inequalities);
    let _ = writeln!(s, "extreme rays: {}", r.extreme_rays);
    let _ = writeln!(s, "orbits: {}", r.orbits);
    let _ = writeln!(s, "bad orbits: {}", r.bad_orbits);
    let _ = writeln!(s, "faces: {}", r.faces);
    let _ = writeln!(s, "bad faces: {}", r.bad_faces);
    let _ = writeln!(s, "cosimplicial orbits: {}", r.cosimplicial_orbits);
    let _ = writeln!(
        s,
        "skipped orbits: {} high embedding dimension, {} e > t ({} with cyclic relations)",
        r.skipped.high_embdim_orbits, r.skipped.e_gt_t_orbits, r.skipped.preorder_failure_orbits
    );
    let g = &r.regions;
    let _ = writeln!(
        s,
        "regions: {} tested, {} infeasible, {} empty, {} counterexamples, {} inconclusive",
        g.tested, g.infeasible, g.empty, g.counterexamples, g.inconclusive
    );
    for c in &r.counterexamples {
        let kunz: Vec<String> = c.kunz.iter().map(|v| v.to_string()).collect();
        let gens: Vec<String> = c.generators.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            s,
            "counterexample: kunz {}:{} generators <{}> slack {} (f = {})",
            r.m,
            kunz.join(","),
            gens.join(","),
            c.wilf_slack,
            c.f
        );
    }
    for u in &r.inconclusive {
        let _ = writeln!(s, "undecided: face {} f = {}", u.face, u.f);
    }
    let _ = writeln!(
        s,
        "time: lattice {:.3}s, regions {:.3}s",
        r.timings.lattice_seconds, r.timings.regions_seconds
    );
    s
}
