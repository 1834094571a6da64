//! Searching each face of the Kunz cone for a counterexample to Wilf's
//! inequality.
//!
//! Every numerical semigroup of multiplicity `m` is an integer point in the
//! relative interior of exactly one face of the relaxed Kunz polyhedron, and
//! its Frobenius number is `m x_f + f - m` for the residue `f` maximizing
//! `m x_i + i`. For a face and a maximal residue `f`, the region of integer
//! points violating `c <= e n` is cut out by linear constraints; it is empty
//! for every face exactly when no counterexample of multiplicity `m` exists.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::geometry::{
    enumerate_integer_points, find_integer_point_with_stats, rational_feasible, IntegerSearch,
    LinearConstraint, LinearSystem,
};
use crate::kunz::KunzCone;
use crate::lattice::{
    enumerate_orbits, resume_orbits, Checkpoint, GroupChoice, LatticeError, LatticeOptions,
    Prepared,
};
use crate::poset::{occurrence_invariants, KunzPoset, TightPoset};
use crate::semigroup::NumericalSemigroup;

/// Default node budget for one integer point search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("residue {f} is not maximal in the poset of this face")]
    FNotMaximal { f: u32 },
    #[error(transparent)]
    Kunz(#[from] crate::kunz::KunzError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error("face enumeration stopped after round {0} before finishing")]
    IncompleteLattice(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SkipReason {
    None,
    /// Type smaller than embedding dimension; Wilf by `c <= (t + 1) n`.
    EGtT,
    /// `2e >= m`; Wilf by the result for large embedding dimension.
    HighEmbdim,
}

#[derive(Clone, Debug)]
pub struct FaceAssessment {
    pub hset: BitSet,
    pub poset: TightPoset,
    pub e: u32,
    pub t: u32,
    pub skip: SkipReason,
    /// Residues that can carry the Frobenius number on this face.
    pub candidates: Vec<u32>,
}

impl FaceAssessment {
    pub fn is_bad(&self) -> bool {
        self.skip == SkipReason::None
    }
}

/// Reads the poset of a face and decides whether a known theorem already
/// makes every semigroup on it Wilf.
///
/// Embedding dimension and type are read from variable occurrence in the
/// tight equations, which on faces with cyclic relations (and no semigroups)
/// still gives values for the filters.
pub fn assess(cone: &KunzCone, hset: &BitSet) -> FaceAssessment {
    let m = cone.m();
    let tight = cone.tight_pairs(hset);
    let poset = KunzPoset::from_tight_set(m, &tight).expect("cone facets are valid pairs");
    let (e, t) = occurrence_invariants(m, &tight);
    let skip = if 2 * e >= m {
        SkipReason::HighEmbdim
    } else if e > t {
        SkipReason::EGtT
    } else {
        SkipReason::None
    };
    let candidates = match &poset {
        TightPoset::Poset(p) => p.maximal().to_vec(),
        TightPoset::PreorderFailure(q) => q.maximal_elements(),
    };
    FaceAssessment {
        hset: hset.clone(),
        poset,
        e,
        t,
        skip,
        candidates,
    }
}

/// The integer points for face `hset` and Frobenius residue `f` that violate
/// Wilf's inequality, as a linear system over `x_1, ..., x_{m-1}`.
#[derive(Clone, Debug)]
pub struct WilfRegion {
    pub m: u32,
    pub f: u32,
    pub e: u32,
    pub system: LinearSystem,
}

pub fn build_region(
    cone: &KunzCone,
    assessment: &FaceAssessment,
    f: u32,
) -> Result<WilfRegion, VerifyError> {
    if !assessment.candidates.contains(&f) {
        return Err(VerifyError::FNotMaximal { f });
    }
    Ok(region_system(cone, &assessment.hset, assessment.e, f, RegionKind::Violation))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RegionKind {
    Violation,
    Equality,
}

fn region_system(cone: &KunzCone, hset: &BitSet, e: u32, f: u32, kind: RegionKind) -> WilfRegion {
    let m = cone.m();
    let d = cone.dim();
    let mut sys = LinearSystem::new(d);
    for (k, facet) in cone.facets().iter().enumerate() {
        let normal = facet.normal(m);
        let base = if facet.wraps(m) { -1 } else { 0 };
        if hset.contains(k) {
            sys.push(LinearConstraint::eq(&normal, base));
        } else {
            sys.push(LinearConstraint::ge(&normal, base + 1));
        }
    }
    for k in 0..d {
        let mut unit = vec![0i64; d];
        unit[k] = 1;
        sys.push(LinearConstraint::ge(&unit, 1));
    }
    let fi = (f - 1) as usize;
    for i in 1..m {
        if i == f {
            continue;
        }
        // m x_i + i < m x_f + f, tightened over the integers
        let mut c = vec![0i64; d];
        c[fi] = 1;
        c[(i - 1) as usize] = -1;
        sys.push(LinearConstraint::ge(&c, if i < f { 0 } else { 1 }));
    }
    // c > e n with c = m x_f + f - m + 1 and n = c - sum x
    let (e, m64, f64_) = (e as i64, m as i64, f as i64);
    let mut c = vec![e; d];
    c[fi] -= m64 * (e - 1);
    let rhs = -(e - 1) * (m64 - 1 - f64_);
    match kind {
        RegionKind::Violation => sys.push(LinearConstraint::ge(&c, rhs + 1)),
        RegionKind::Equality => sys.push(LinearConstraint::eq(&c, rhs)),
    }
    WilfRegion {
        m,
        f,
        e: e as u32,
        system: sys,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionOutcome {
    /// No rational point.
    Infeasible,
    /// Rational points but no integer point.
    Empty,
    Counterexample { point: Vec<i64> },
    Inconclusive,
}

pub fn test_region(region: &WilfRegion, budget: u64) -> RegionOutcome {
    if !rational_feasible(&region.system).is_feasible() {
        return RegionOutcome::Infeasible;
    }
    match find_integer_point_with_stats(&region.system, budget).0 {
        IntegerSearch::Empty => RegionOutcome::Empty,
        IntegerSearch::BudgetExhausted => RegionOutcome::Inconclusive,
        IntegerSearch::Point(p) => RegionOutcome::Counterexample {
            point: p
                .iter()
                .map(|v| i64::try_from(v).expect("counterexample coordinates fit in 64 bits"))
                .collect(),
        },
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Skip faces with `e > t` or `2e >= m`.
    pub filters: bool,
    /// Try every residue as `f`, not only the maximal ones.
    pub all_residues: bool,
    pub budget: u64,
    pub threads: Option<usize>,
    pub group: GroupChoice,
    pub lattice: LatticeOptions,
    /// Continue the face enumeration from this snapshot instead of starting over.
    pub resume: Option<Checkpoint>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            filters: true,
            all_residues: false,
            budget: DEFAULT_BUDGET,
            threads: None,
            group: GroupChoice::Units,
            lattice: LatticeOptions::default(),
            resume: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    WilfHolds,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegionTally {
    pub tested: u64,
    pub infeasible: u64,
    pub empty: u64,
    pub counterexamples: u64,
    pub inconclusive: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundCounterexample {
    pub face: String,
    pub f: u32,
    pub kunz: Vec<i64>,
    pub generators: Vec<u64>,
    pub wilf_slack: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndecidedRegion {
    pub face: String,
    pub f: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SkipTally {
    pub high_embdim_orbits: usize,
    pub e_gt_t_orbits: usize,
    pub preorder_failure_orbits: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub lattice_seconds: f64,
    pub regions_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub m: u32,
    pub verdict: Verdict,
    pub inequalities: usize,
    pub extreme_rays: usize,
    pub orbits: usize,
    pub faces: u64,
    pub bad_orbits: usize,
    pub bad_faces: u64,
    pub cosimplicial_orbits: usize,
    pub skipped: SkipTally,
    pub filters: bool,
    pub all_residues: bool,
    pub budget: u64,
    pub regions: RegionTally,
    pub counterexamples: Vec<FoundCounterexample>,
    pub inconclusive: Vec<UndecidedRegion>,
    #[serde(skip)]
    pub timings: Timings,
}

/// Runs the whole pipeline for one multiplicity.
pub fn verify_multiplicity(m: u32, options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let body = || verify_inner(m, options);
    match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(body),
        None => body(),
    }
}

fn verify_inner(m: u32, options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let cone = KunzCone::new(m)?;
    let start = Instant::now();
    let prepared = Prepared::kunz(&cone, options.group)?;
    let lattice = match &options.resume {
        Some(cp) => resume_orbits(&prepared, cp.clone(), &options.lattice)?,
        None => enumerate_orbits(&prepared, &options.lattice)?,
    };
    if !lattice.is_complete() {
        return Err(VerifyError::IncompleteLattice(lattice.rounds));
    }
    let lattice_seconds = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let mut skipped = SkipTally::default();
    let mut bad_orbits = 0;
    let mut bad_faces = 0;
    let mut to_test: Vec<BitSet> = Vec::new();
    for rec in &lattice.orbits {
        let a = assess(&cone, &rec.hset);
        if matches!(a.poset, TightPoset::PreorderFailure(_)) {
            skipped.preorder_failure_orbits += 1;
        }
        match a.skip {
            SkipReason::None => {
                bad_orbits += 1;
                bad_faces += rec.orbit_size as u64;
            }
            SkipReason::EGtT => skipped.e_gt_t_orbits += 1,
            SkipReason::HighEmbdim => skipped.high_embdim_orbits += 1,
        }
        if a.is_bad() || !options.filters {
            to_test.extend(prepared.expand_orbit(&rec.hset));
        }
    }

    let jobs: Vec<(BitSet, u32, u32)> = to_test
        .par_iter()
        .flat_map_iter(|h| {
            let a = assess(&cone, h);
            let fs: Vec<u32> = if options.all_residues {
                (1..m).collect()
            } else {
                a.candidates.clone()
            };
            fs.into_iter().map(move |f| (h.clone(), a.e, f))
        })
        .collect();
    let outcomes: Vec<RegionOutcome> = jobs
        .par_iter()
        .map(|(h, e, f)| {
            let region = region_system(&cone, h, *e, *f, RegionKind::Violation);
            test_region(&region, options.budget)
        })
        .collect();

    let mut regions = RegionTally::default();
    let mut counterexamples = Vec::new();
    let mut inconclusive = Vec::new();
    for ((h, _, f), out) in jobs.iter().zip(outcomes) {
        regions.tested += 1;
        match out {
            RegionOutcome::Infeasible => regions.infeasible += 1,
            RegionOutcome::Empty => regions.empty += 1,
            RegionOutcome::Inconclusive => {
                regions.inconclusive += 1;
                inconclusive.push(UndecidedRegion {
                    face: h.to_bit_string(),
                    f: *f,
                });
            }
            RegionOutcome::Counterexample { point } => {
                regions.counterexamples += 1;
                let s = NumericalSemigroup::from_kunz(m, &point)
                    .expect("region points are Kunz coordinates");
                assert!(
                    s.wilf_slack() < 0,
                    "region point {point:?} is not a counterexample"
                );
                counterexamples.push(FoundCounterexample {
                    face: h.to_bit_string(),
                    f: *f,
                    kunz: point,
                    generators: s.generators().to_vec(),
                    wilf_slack: s.wilf_slack(),
                });
            }
        }
    }
    let verdict = if !counterexamples.is_empty() {
        Verdict::Counterexample
    } else if !inconclusive.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::WilfHolds
    };

    Ok(VerifyReport {
        m,
        verdict,
        inequalities: cone.facets().len(),
        extreme_rays: prepared.rays().len(),
        orbits: lattice.orbit_count(),
        faces: lattice.face_count(),
        bad_orbits,
        bad_faces,
        cosimplicial_orbits: lattice.cosimplicial_orbit_count(),
        skipped,
        filters: options.filters,
        all_residues: options.all_residues,
        budget: options.budget,
        regions,
        counterexamples,
        inconclusive,
        timings: Timings {
            lattice_seconds,
            regions_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// Which known family explains a case of equality `c = e n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EqualityFamily {
    /// Embedding dimension two.
    TwoGenerated,
    /// Maximal embedding dimension with all Kunz coordinates equal.
    MaximalEqualCoordinates,
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub kunz: Vec<i64>,
    pub generators: Vec<u64>,
    pub family: EqualityFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityAudit {
    pub m: u32,
    pub box_bound: i64,
    pub cases: Vec<EqualityCase>,
    /// Regions whose enumeration exceeded the budget.
    pub incomplete_regions: usize,
}

/// Lists every Kunz vector with coordinates in `1..=box_bound` attaining
/// equality in Wilf's inequality, face by face.
pub fn equality_audit(m: u32, box_bound: i64, budget: u64) -> Result<EqualityAudit, VerifyError> {
    let cone = KunzCone::new(m)?;
    let prepared = Prepared::kunz(&cone, GroupChoice::Units)?;
    let lattice = enumerate_orbits(&prepared, &LatticeOptions::default())?;
    let faces: Vec<BitSet> = lattice
        .orbits
        .iter()
        .flat_map(|r| prepared.expand_orbit(&r.hset))
        .collect();
    let d = cone.dim();
    let lower = vec![1i64; d];
    let upper = vec![box_bound; d];
    let results: Vec<Option<Vec<Vec<i64>>>> = faces
        .par_iter()
        .flat_map_iter(|h| {
            let a = assess(&cone, h);
            a.candidates
                .iter()
                .map(|&f| region_system(&cone, h, a.e, f, RegionKind::Equality))
                .collect::<Vec<_>>()
        })
        .map(|region| {
            enumerate_integer_points(&region.system, &lower, &upper, budget).map(|pts| {
                pts.iter()
                    .map(|p| p.iter().map(|v| i64::try_from(v).expect("bounded")).collect())
                    .collect()
            })
        })
        .collect();
    let mut incomplete_regions = 0;
    let mut points: BTreeSet<Vec<i64>> = BTreeSet::new();
    for r in results {
        match r {
            Some(pts) => points.extend(pts),
            None => incomplete_regions += 1,
        }
    }
    let cases = points
        .into_iter()
        .map(|kunz| {
            let s = NumericalSemigroup::from_kunz(m, &kunz).expect("region points are Kunz coordinates");
            assert_eq!(s.wilf_slack(), 0, "audit point {kunz:?} is not an equality case");
            let family = if s.embedding_dimension() == 2 {
                EqualityFamily::TwoGenerated
            } else if s.embedding_dimension() == m as u64 && kunz.iter().all(|&v| v == kunz[0]) {
                EqualityFamily::MaximalEqualCoordinates
            } else {
                EqualityFamily::Unexplained
            };
            EqualityCase {
                generators: s.generators().to_vec(),
                kunz,
                family,
            }
        })
        .collect();
    Ok(EqualityAudit {
        m,
        box_bound,
        cases,
        incomplete_regions,
    })
}
