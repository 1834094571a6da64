use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "kunzwilf",
    version,
    about = "Verify Wilf's inequality for numerical semigroups of a given multiplicity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search every face of the Kunz cone for a counterexample.
    Verify(VerifyArgs),
    /// Enumerate the face lattice of the Kunz cone up to symmetry.
    Lattice(LatticeArgs),
    /// Print the invariants of one numerical semigroup.
    Sgp(SgpArgs),
    /// Play the Wilf game on a Kunz poset.
    Game(GameArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Worker threads (defaults to all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Multiplicity, or an inclusive range such as `3-12`.
    #[arg(value_parser = parse_range)]
    pub m: RangeInclusive<u32>,
    #[command(flatten)]
    pub common: Common,
    /// Branch-and-bound nodes per region before giving up.
    #[arg(long, default_value_t = kunz_core::verifier::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the face enumeration state here after every round.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the file given with --checkpoint.
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    /// Test every face and every residue, not only the faces the filters keep.
    #[arg(long, conflicts_with = "no_filters")]
    pub exhaustive: bool,
    /// Test every face, still only for maximal residues.
    #[arg(long)]
    pub no_filters: bool,
    /// Enumerate faces without the cosimplicial shortcut.
    #[arg(long)]
    pub no_orbit_restriction: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[arg(value_parser = clap::value_parser!(u32).range(3..))]
    pub m: u32,
    #[command(flatten)]
    pub common: Common,
    /// One record per face instead of one per orbit.
    #[arg(long)]
    pub expand_orbits: bool,
    #[arg(long)]
    pub no_orbit_restriction: bool,
    /// Write the binary dump here; without it records are printed.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
}

#[derive(Args, Debug)]
pub struct SgpArgs {
    /// Generators, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "kunz", conflicts_with = "kunz")]
    pub gens: Option<Vec<u64>>,
    /// Kunz coordinates as `m:x1,...,x(m-1)`.
    #[arg(long)]
    pub kunz: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    /// Use the Apery poset of the semigroup with these generators.
    #[arg(long, value_delimiter = ',', required_unless_present = "poset", conflicts_with = "poset")]
    pub gens: Option<Vec<u64>>,
    /// A poset as `m:i<j,i<j,...`.
    #[arg(long)]
    pub poset: Option<String>,
    /// Only this maximal element.
    #[arg(long)]
    pub f: Option<u32>,
    /// Expanded search states per residue before giving up.
    #[arg(long, default_value_t = kunz_core::game::DEFAULT_STATE_BUDGET)]
    pub budget: u64,
    /// Replay a certificate such as `f=1 score=2: 2>1 3>1` instead of solving.
    #[arg(long, conflicts_with = "f")]
    pub replay: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("`{t}` is not a multiplicity"))
    };
    let range = match s.split_once('-') {
        Some((a, b)) => parse(a)?..=parse(b)?,
        None => {
            let m = parse(s)?;
            m..=m
        }
    };
    if *range.start() < 3 {
        return Err("multiplicity must be at least 3".into());
    }
    if range.is_empty() {
        return Err(format!("empty range {s}"));
    }
    Ok(range)
}
