//! Face lattice of a pointed cone up to a group of linear automorphisms.
//!
//! A face is stored only through the set of facets containing it, always
//! saturated (every facet containing the face is listed). Ray sets are
//! recomputed on demand by intersecting the facet incidence sets. Orbits are
//! represented by their smallest facet set in [`BitSet`] order.
//!
//! The enumeration proceeds in rounds: the faces found in one round are
//! intersected with every facet not containing them, the maximal proper
//! intersections are their facets, and those not seen before make up the
//! next round.

mod checkpoint;

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::geometry::{extreme_rays, rank_small, GeometryError, LinearConstraint, LinearSystem};
use crate::kunz::KunzCone;

pub use checkpoint::{
    decode, encode, read_checkpoint, write_checkpoint, Checkpoint, CheckpointError,
};

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("group element {0} does not permute the facets")]
    GroupDoesNotPreserveFacets(usize),
    #[error("cone has no facets")]
    NoFacets,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("extreme ray entry does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("checkpoint does not match this cone: {0}")]
    CheckpointMismatch(String),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

/// A linear automorphism given by where it sends coordinates and facets:
/// coordinate `k` moves to `coords[k]` and facet `k` to `facets[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub coords: Vec<usize>,
    pub facets: Vec<usize>,
}

/// Which automorphisms of a Kunz cone to divide out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupChoice {
    Trivial,
    /// The unit group of `Z/m` acting by multiplication on residues.
    Units,
}

impl GroupChoice {
    pub fn id(self) -> u32 {
        match self {
            GroupChoice::Trivial => 0,
            GroupChoice::Units => 1,
        }
    }

    pub fn from_id(id: u32) -> Option<Self> {
        match id {
            0 => Some(GroupChoice::Trivial),
            1 => Some(GroupChoice::Units),
            _ => None,
        }
    }
}

/// Everything the enumeration reads: facet normals, extreme rays, the
/// incidence sets `E(H)`, the rays that are cosimplicial faces, and one facet
/// permutation per group element.
#[derive(Clone, Debug)]
pub struct Prepared {
    dim: usize,
    normals: Vec<Vec<i64>>,
    rays: Vec<Vec<i64>>,
    incidence: Vec<BitSet>,
    cosimplicial_rays: BitSet,
    permutations: Vec<Vec<usize>>,
    group_id: u32,
}

impl Prepared {
    /// Prepares the cone `{x : n . x >= 0 for every normal n}`.
    ///
    /// Each symmetry is checked to be a coordinate permutation sending every
    /// normal onto the normal of its image facet. The identity is always
    /// included.
    pub fn new(
        dim: usize,
        normals: Vec<Vec<i64>>,
        symmetries: &[Symmetry],
        group_id: u32,
    ) -> Result<Self, LatticeError> {
        if normals.is_empty() {
            return Err(LatticeError::NoFacets);
        }
        let n = normals.len();
        let mut permutations = vec![(0..n).collect::<Vec<usize>>()];
        for (idx, s) in symmetries.iter().enumerate() {
            if !is_permutation(&s.coords, dim) || !is_permutation(&s.facets, n) {
                return Err(LatticeError::GroupDoesNotPreserveFacets(idx));
            }
            for (k, normal) in normals.iter().enumerate() {
                let mut image = vec![0i64; dim];
                for (c, &v) in normal.iter().enumerate() {
                    image[s.coords[c]] = v;
                }
                if image != normals[s.facets[k]] {
                    return Err(LatticeError::GroupDoesNotPreserveFacets(idx));
                }
            }
            if !permutations.contains(&s.facets) {
                permutations.push(s.facets.clone());
            }
        }

        let system = LinearSystem::with_constraints(
            dim,
            normals.iter().map(|v| LinearConstraint::ge(v, 0)).collect(),
        );
        let rays: Vec<Vec<i64>> = extreme_rays(&system)?
            .into_iter()
            .map(|r| r.iter().map(|v| v.to_i64()).collect::<Option<Vec<i64>>>())
            .collect::<Option<_>>()
            .ok_or(LatticeError::Overflow)?;

        let incidence: Vec<BitSet> = normals
            .iter()
            .map(|h| {
                BitSet::from_indices(
                    rays.len(),
                    rays.iter()
                        .enumerate()
                        .filter(|(_, r)| dot(h, r) == 0)
                        .map(|(k, _)| k),
                )
            })
            .collect();
        let cosimplicial_rays = BitSet::from_indices(
            rays.len(),
            (0..rays.len()).filter(|&r| {
                incidence.iter().filter(|e| e.contains(r)).count() == dim - 1
            }),
        );

        Ok(Self {
            dim,
            normals,
            rays,
            incidence,
            cosimplicial_rays,
            permutations,
            group_id,
        })
    }

    /// The Kunz cone of multiplicity `m` with the chosen group.
    pub fn kunz(cone: &KunzCone, group: GroupChoice) -> Result<Self, LatticeError> {
        let symmetries: Vec<Symmetry> = match group {
            GroupChoice::Trivial => Vec::new(),
            GroupChoice::Units => cone
                .unit_group()
                .iter()
                .map(|a| Symmetry {
                    coords: a.coordinate_permutation().to_vec(),
                    facets: a.facet_permutation().to_vec(),
                })
                .collect(),
        };
        Self::new(cone.dim(), cone.normals(), &symmetries, group.id())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn incidence(&self) -> &[BitSet] {
        &self.incidence
    }

    pub fn cosimplicial_rays(&self) -> &BitSet {
        &self.cosimplicial_rays
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.permutations
    }

    pub fn group_id(&self) -> u32 {
        self.group_id
    }

    pub fn group_order(&self) -> usize {
        self.permutations.len()
    }

    /// Rays of the face with facet set `hset`.
    pub fn face_rays(&self, hset: &BitSet) -> BitSet {
        let mut e = BitSet::full(self.rays.len());
        for h in hset.iter() {
            e.intersect_with(&self.incidence[h]);
        }
        e
    }

    /// Facets containing every ray of `rays`.
    pub fn face_facets(&self, rays: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.normals.len(),
            (0..self.normals.len()).filter(|&h| rays.is_subset(&self.incidence[h])),
        )
    }

    /// Rank of the normals in `hset`.
    pub fn codimension(&self, hset: &BitSet) -> usize {
        let rows: Vec<&[i64]> = hset.iter().map(|h| self.normals[h].as_slice()).collect();
        rank_small(&rows)
    }

    /// Codimension of a face given both representations, using the
    /// cosimplicial rays when possible.
    fn codimension_of(&self, hset: &BitSet, rays: &BitSet) -> usize {
        if rays.is_empty() {
            self.dim
        } else if rays.intersects(&self.cosimplicial_rays) {
            hset.count()
        } else {
            self.codimension(hset)
        }
    }

    /// Smallest image of `hset` under the group.
    pub fn orbit_min(&self, hset: &BitSet) -> BitSet {
        let mut best = hset.clone();
        for p in &self.permutations[1..] {
            let image = hset.permuted(p);
            if image < best {
                best = image;
            }
        }
        best
    }

    /// Every distinct image of `hset`, sorted.
    pub fn expand_orbit(&self, hset: &BitSet) -> Vec<BitSet> {
        let images: BTreeSet<BitSet> = self.permutations.iter().map(|p| hset.permuted(p)).collect();
        images.into_iter().collect()
    }

    fn orbit_size(&self, hset: &BitSet) -> u32 {
        let images: BTreeSet<BitSet> = self.permutations.iter().map(|p| hset.permuted(p)).collect();
        images.len() as u32
    }

    fn record(&self, hset: BitSet, round: u32) -> FaceRecord {
        let rays = self.face_rays(&hset);
        let codim = self.codimension_of(&hset, &rays);
        FaceRecord {
            orbit_size: self.orbit_size(&hset),
            cosimplicial: hset.count() == codim,
            codim: codim as u16,
            hset,
            round,
        }
    }

    /// Facet sets of the facets of the face `f`, not yet canonicalized.
    ///
    /// With `restrict` on and `f` cosimplicial, only those facets that can be
    /// cut out by a facet of the cone after the last one containing `f` are
    /// returned; every face is still reached from some cosimplicial parent or
    /// from a non-cosimplicial one.
    pub fn facets_of(&self, f: &FaceRecord, restrict: bool) -> Vec<BitSet> {
        let rays = self.face_rays(&f.hset);
        let mut cuts: Vec<BitSet> = (0..self.normals.len())
            .filter(|&h| !f.hset.contains(h))
            .map(|h| rays.intersection(&self.incidence[h]))
            .collect();
        cuts.sort();
        cuts.dedup();
        let maximal: Vec<&BitSet> = cuts
            .iter()
            .filter(|e| !cuts.iter().any(|o| o != *e && e.is_subset(o)))
            .collect();
        let bound = if restrict && f.cosimplicial {
            f.hset.last()
        } else {
            None
        };
        maximal
            .into_iter()
            .map(|e| self.face_facets(e))
            .filter(|g| match bound {
                Some(b) => g.iter().any(|h| h > b),
                None => true,
            })
            .collect()
    }

    /// The whole cone as a face.
    pub fn top(&self) -> FaceRecord {
        self.record(BitSet::new(self.normals.len()), 0)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// One orbit of faces, named by its smallest facet set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub hset: BitSet,
    pub codim: u16,
    pub orbit_size: u32,
    pub cosimplicial: bool,
    /// Round in which the orbit was found; 0 for the cone itself.
    pub round: u32,
}

#[derive(Clone, Debug)]
pub struct LatticeOptions {
    /// Skip facets up to the last one containing a cosimplicial face.
    pub restrict_cosimplicial: bool,
    pub threads: Option<usize>,
    /// Written after every completed round.
    pub checkpoint: Option<PathBuf>,
    /// Stop (leaving the worklist in the checkpoint) after this many rounds.
    pub max_rounds: Option<u32>,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        Self {
            restrict_cosimplicial: true,
            threads: None,
            checkpoint: None,
            max_rounds: None,
        }
    }
}

/// Orbit representatives sorted by codimension and facet set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLattice {
    pub dim: usize,
    pub facet_count: usize,
    pub ray_count: usize,
    pub group_order: usize,
    pub group_id: u32,
    pub restricted: bool,
    pub orbits: Vec<FaceRecord>,
    /// Faces still waiting to be processed when the run stopped early.
    pub pending: Vec<FaceRecord>,
    pub rounds: u32,
}

impl OrbitLattice {
    pub fn is_complete(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn face_count(&self) -> u64 {
        self.orbits.iter().map(|r| r.orbit_size as u64).sum()
    }

    pub fn cosimplicial_orbit_count(&self) -> usize {
        self.orbits.iter().filter(|r| r.cosimplicial).count()
    }

    /// Orbit counts indexed by codimension.
    pub fn orbits_by_codim(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim + 1];
        for r in &self.orbits {
            out[r.codim as usize] += 1;
        }
        out
    }

    /// The lattice in checkpoint form, suitable for `encode`.
    pub fn snapshot(&self) -> Checkpoint {
        Checkpoint {
            dim: self.dim,
            facet_count: self.facet_count,
            group_id: self.group_id,
            round: self.rounds,
            restricted: self.restricted,
            done: self.orbits.clone(),
            pending: self.pending.clone(),
        }
    }

    /// Every face as its own record, sorted like the orbits.
    pub fn expanded(&self, prepared: &Prepared) -> OrbitLattice {
        let mut faces: Vec<FaceRecord> = self
            .orbits
            .iter()
            .flat_map(|r| {
                prepared.expand_orbit(&r.hset).into_iter().map(|hset| FaceRecord {
                    hset,
                    orbit_size: 1,
                    ..r.clone()
                })
            })
            .collect();
        faces.sort_by(|a, b| (a.codim, &a.hset).cmp(&(b.codim, &b.hset)));
        OrbitLattice {
            group_order: 1,
            group_id: GroupChoice::Trivial.id(),
            orbits: faces,
            pending: Vec::new(),
            ..self.clone()
        }
    }

    pub fn faces_by_codim(&self) -> Vec<u64> {
        let mut out = vec![0; self.dim + 1];
        for r in &self.orbits {
            out[r.codim as usize] += r.orbit_size as u64;
        }
        out
    }
}

pub fn enumerate_orbits(
    prepared: &Prepared,
    options: &LatticeOptions,
) -> Result<OrbitLattice, LatticeError> {
    run(prepared, options, vec![], vec![prepared.top()], 0)
}

/// Continues a run from a checkpoint written by an earlier call.
pub fn resume_orbits(
    prepared: &Prepared,
    checkpoint: Checkpoint,
    options: &LatticeOptions,
) -> Result<OrbitLattice, LatticeError> {
    if checkpoint.facet_count != prepared.facet_count() {
        return Err(LatticeError::CheckpointMismatch(format!(
            "{} facets, expected {}",
            checkpoint.facet_count,
            prepared.facet_count()
        )));
    }
    if checkpoint.group_id != prepared.group_id {
        return Err(LatticeError::CheckpointMismatch(format!(
            "group {}, expected {}",
            checkpoint.group_id, prepared.group_id
        )));
    }
    if checkpoint.restricted != options.restrict_cosimplicial {
        return Err(LatticeError::CheckpointMismatch(
            "cosimplicial restriction setting differs".into(),
        ));
    }
    let round = checkpoint.round;
    let mut pending = checkpoint.pending;
    for r in &mut pending {
        r.round = round;
    }
    run(prepared, options, checkpoint.done, pending, round)
}

fn run(
    prepared: &Prepared,
    options: &LatticeOptions,
    done: Vec<FaceRecord>,
    pending: Vec<FaceRecord>,
    round: u32,
) -> Result<OrbitLattice, LatticeError> {
    let body = || rounds(prepared, options, done, pending, round);
    match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| LatticeError::ThreadPool(e.to_string()))?
            .install(body),
        None => body(),
    }
}

fn rounds(
    prepared: &Prepared,
    options: &LatticeOptions,
    mut done: Vec<FaceRecord>,
    mut pending: Vec<FaceRecord>,
    mut round: u32,
) -> Result<OrbitLattice, LatticeError> {
    let restrict = options.restrict_cosimplicial;
    let mut seen: BTreeSet<BitSet> = done
        .iter()
        .chain(&pending)
        .map(|r| r.hset.clone())
        .collect();
    let mut executed = 0u32;
    while !pending.is_empty() {
        if options.max_rounds.is_some_and(|k| executed >= k) {
            break;
        }
        let found: BTreeSet<BitSet> = pending
            .par_iter()
            .fold(BTreeSet::new, |mut acc, f| {
                for g in prepared.facets_of(f, restrict) {
                    let min = prepared.orbit_min(&g);
                    if !seen.contains(&min) {
                        acc.insert(min);
                    }
                }
                acc
            })
            .reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            });
        round += 1;
        executed += 1;
        seen.extend(found.iter().cloned());
        let next: Vec<FaceRecord> = found
            .into_par_iter()
            .map(|h| prepared.record(h, round))
            .collect();
        done.append(&mut pending);
        pending = next;
        if let Some(path) = &options.checkpoint {
            write_checkpoint(
                path,
                &Checkpoint {
                    dim: prepared.dim,
                    facet_count: prepared.facet_count(),
                    group_id: prepared.group_id,
                    round,
                    restricted: restrict,
                    done: done.clone(),
                    pending: pending.clone(),
                },
            )?;
        }
    }
    done.sort_by(|a, b| (a.codim, &a.hset).cmp(&(b.codim, &b.hset)));
    pending.sort_by(|a, b| (a.codim, &a.hset).cmp(&(b.codim, &b.hset)));
    Ok(OrbitLattice {
        dim: prepared.dim,
        facet_count: prepared.facet_count(),
        ray_count: prepared.rays.len(),
        group_order: prepared.group_order(),
        group_id: prepared.group_id,
        restricted: restrict,
        orbits: done,
        pending,
        rounds: round,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kunz(m: u32, group: GroupChoice) -> Prepared {
        Prepared::kunz(&KunzCone::new(m).unwrap(), group).unwrap()
    }

    #[test]
    fn multiplicity_three() {
        let p = kunz(3, GroupChoice::Units);
        let lattice = enumerate_orbits(&p, &LatticeOptions::default()).unwrap();
        // cone, one orbit of two rays, apex
        assert_eq!(lattice.orbit_count(), 3);
        assert_eq!(lattice.face_count(), 4);
    }

    #[test]
    fn face_facets_extremes() {
        let p = kunz(7, GroupChoice::Trivial);
        assert_eq!(p.rays().len(), 30);
        let all = BitSet::full(p.rays().len());
        assert!(p.face_facets(&all).is_empty());
        let none = BitSet::new(p.rays().len());
        assert_eq!(p.face_facets(&none).count(), p.facet_count());
        assert_eq!(p.codimension(&p.face_facets(&none)), 6);
        for r in 0..p.rays().len() {
            let h = p.face_facets(&BitSet::from_indices(p.rays().len(), [r]));
            assert_eq!(p.codimension(&h), 5);
        }
    }

    #[test]
    fn orbit_min_is_idempotent() {
        let p = kunz(7, GroupChoice::Units);
        assert_eq!(p.group_order(), 6);
        let h = BitSet::from_indices(p.facet_count(), [3, 9]);
        let min = p.orbit_min(&h);
        assert!(min <= h);
        assert_eq!(p.orbit_min(&min), min);
        assert!(p.expand_orbit(&h).contains(&h));
        let top = BitSet::new(p.facet_count());
        assert_eq!(p.expand_orbit(&top), vec![top]);
    }

    #[test]
    fn rejects_non_symmetries() {
        let cone = KunzCone::new(5).unwrap();
        let mut facets: Vec<usize> = (0..cone.facets().len()).collect();
        facets.swap(0, 1);
        let bad = Symmetry {
            coords: (0..4).collect(),
            facets,
        };
        assert!(matches!(
            Prepared::new(4, cone.normals(), &[bad], 7),
            Err(LatticeError::GroupDoesNotPreserveFacets(0))
        ));
    }
}
