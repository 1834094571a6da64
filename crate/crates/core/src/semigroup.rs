//! Numerical semigroups computed directly from their membership table.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use num_integer::Integer;

use crate::kunz::is_kunz_coordinates;
use crate::poset::KunzPoset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("no generators given")]
    EmptyInput,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}, so the complement is infinite")]
    NotCofinite(u64),
    #[error("{0} is not a positive element of the semigroup")]
    NotAMember(u64),
    #[error("not a vector of Kunz coordinates for multiplicity {0}")]
    InvalidKunzVector(u32),
}

/// A cofinite submonoid of the nonnegative integers.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `member[n]` for `0 <= n < member.len()`; everything beyond is a member.
    member: Vec<bool>,
    frobenius: i64,
    genus: u64,
    pseudo_frobenius: Vec<i64>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = gens.iter().fold(0u64, |a, &b| a.gcd(&b));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(g));
        }
        let m = *gens.iter().min().expect("nonempty");
        let max_gen = *gens.iter().max().expect("nonempty");

        // shortest paths over residues bound the Frobenius number
        let reach = residue_distances(m, gens);
        let frob_bound = reach.iter().max().copied().unwrap_or(0) as i64 - m as i64;

        let len = (max_gen as i64 + frob_bound.max(0) + 2) as usize;
        let mut member = vec![false; len];
        member[0] = true;
        for n in 1..len {
            member[n] = gens.iter().any(|&a| a as usize <= n && member[n - a as usize]);
        }
        Ok(Self::from_table(member))
    }

    /// The semigroup of all nonnegative integers.
    pub fn naturals() -> Self {
        Self::from_table(vec![true, true])
    }

    /// Builds every cached invariant from a membership table that is closed
    /// under addition and contains a full run of length at least the
    /// multiplicity at its end.
    fn from_table(member: Vec<bool>) -> Self {
        let frobenius = member.iter().rposition(|&b| !b).map_or(-1, |p| p as i64);
        let genus = member.iter().filter(|&&b| !b).count() as u64;
        let mut s = Self {
            generators: Vec::new(),
            member,
            frobenius,
            genus,
            pseudo_frobenius: Vec::new(),
        };
        s.generators = s.compute_atoms();
        s.pseudo_frobenius = (-1..=s.frobenius)
            .filter(|&f| !s.contains(f) && s.generators.iter().all(|&a| s.contains(f + a as i64)))
            .collect();
        s
    }

    fn compute_atoms(&self) -> Vec<u64> {
        let m = self.multiplicity_from_table();
        if m == 1 {
            return vec![1];
        }
        // every atom other than m lies in the Apery set of m and is a minimal
        // element of its poset
        let ap = self.apery_unchecked(m);
        let mut atoms = vec![m];
        for (r, &a) in ap.iter().enumerate().skip(1) {
            let reducible = ap
                .iter()
                .enumerate()
                .skip(1)
                .any(|(s, &b)| s != r && b < a && self.contains((a - b) as i64));
            if !reducible {
                atoms.push(a);
            }
        }
        atoms.sort_unstable();
        atoms
    }

    fn multiplicity_from_table(&self) -> u64 {
        (1..)
            .find(|&n| self.contains(n as i64))
            .expect("cofinite") as u64
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        self.member.get(n as usize).copied().unwrap_or(true)
    }

    /// Minimal generating set, sorted.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn atoms(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> u64 {
        self.generators.len() as u64
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        (self.frobenius + 1) as u64
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Number of elements below the conductor, `c - g`.
    pub fn sporadic_count(&self) -> u64 {
        self.conductor() - self.genus
    }

    /// Gaps `f >= -1` with `f + s` a member for every positive member `s`.
    pub fn pseudo_frobenius(&self) -> &[i64] {
        &self.pseudo_frobenius
    }

    pub fn type_(&self) -> u64 {
        self.pseudo_frobenius.len() as u64
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..=self.frobenius.max(-1))
            .filter(|&n| !self.contains(n))
            .map(|n| n as u64)
            .collect()
    }

    /// Members below the conductor, including 0.
    pub fn small_elements(&self) -> Vec<u64> {
        (0..self.conductor()).filter(|&n| self.contains(n as i64)).collect()
    }

    /// Apery set with respect to `n`, indexed by residue: entry `i` is the
    /// smallest member congruent to `i` modulo `n`.
    pub fn apery_set(&self, n: u64) -> Result<Vec<u64>, SemigroupError> {
        if n == 0 || !self.contains(n as i64) {
            return Err(SemigroupError::NotAMember(n));
        }
        Ok(self.apery_unchecked(n))
    }

    fn apery_unchecked(&self, n: u64) -> Vec<u64> {
        (0..n)
            .map(|r| {
                (0..)
                    .map(|k| r + k * n)
                    .find(|&v| self.contains(v as i64))
                    .expect("cofinite")
            })
            .collect()
    }

    /// `x_i = (a_i - i) / m` for the Apery set of the multiplicity.
    pub fn kunz_coordinates(&self) -> Vec<i64> {
        let m = self.multiplicity();
        self.apery_unchecked(m)
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| ((a - i as u64) / m) as i64)
            .collect()
    }

    pub fn from_kunz(m: u32, x: &[i64]) -> Result<Self, SemigroupError> {
        if !is_kunz_coordinates(m, x) {
            return Err(SemigroupError::InvalidKunzVector(m));
        }
        let mut gens = vec![m as u64];
        gens.extend(
            x.iter()
                .enumerate()
                .map(|(k, &v)| m as u64 * v as u64 + k as u64 + 1),
        );
        Self::from_generators(&gens)
    }

    /// `e n - c`; nonnegative exactly when the Wilf inequality holds.
    pub fn wilf_slack(&self) -> i64 {
        self.embedding_dimension() as i64 * self.sporadic_count() as i64 - self.conductor() as i64
    }

    pub fn is_wilf(&self) -> bool {
        self.wilf_slack() >= 0
    }

    /// `i <= j` on nonzero residues whenever `a_j - a_i` is a member.
    pub fn apery_poset(&self) -> KunzPoset {
        let m = self.multiplicity();
        assert!(m >= 2, "the Apery poset needs multiplicity at least 2");
        let ap = self.apery_unchecked(m);
        let mut pairs = Vec::new();
        for i in 1..m as usize {
            for j in 1..m as usize {
                if i != j && ap[j] > ap[i] && self.contains((ap[j] - ap[i]) as i64) {
                    pairs.push((i as u32, j as u32));
                }
            }
        }
        KunzPoset::from_relations(m as u32, &pairs).expect("Apery relation is a partial order")
    }
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{:?}", self.generators)
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

fn residue_distances(m: u64, gens: &[u64]) -> Vec<u64> {
    let mut dist = vec![u64::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r as usize] {
            continue;
        }
        for &a in gens {
            let s = ((r + a) % m) as usize;
            if d + a < dist[s] {
                dist[s] = d + a;
                heap.push(Reverse((d + a, s as u64)));
            }
        }
    }
    dist
}

/// Every numerical semigroup of genus at most `g_max`, each exactly once.
///
/// Walks the tree in which the children of `S` are `S \ {x}` for minimal
/// generators `x` larger than the Frobenius number.
pub fn enumerate_by_genus(g_max: u32) -> GenusIter {
    assert!(g_max <= 30, "genus enumeration is limited to genus 30");
    GenusIter {
        g_max,
        stack: vec![Node {
            gaps: 0,
            frobenius: -1,
            genus: 0,
        }],
    }
}

#[derive(Clone, Copy)]
struct Node {
    /// Bit `n` set when `n` is a gap. Every gap is below `2 g_max`.
    gaps: u64,
    frobenius: i64,
    genus: u32,
}

impl Node {
    fn contains(&self, n: i64) -> bool {
        n >= 0 && (n >= 64 || self.gaps & (1 << n) == 0)
    }

    fn multiplicity(&self) -> i64 {
        (1..).find(|&n| self.contains(n)).expect("cofinite")
    }

    fn effective_generators(&self) -> Vec<i64> {
        let m = self.multiplicity();
        ((self.frobenius + 1).max(1)..=(self.frobenius + m).max(m))
            .filter(|&x| !(1..x).any(|s| self.contains(s) && self.contains(x - s)))
            .collect()
    }
}

pub struct GenusIter {
    g_max: u32,
    stack: Vec<Node>,
}

impl Iterator for GenusIter {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        let node = self.stack.pop()?;
        if node.genus < self.g_max {
            for x in node.effective_generators().into_iter().rev() {
                self.stack.push(Node {
                    gaps: node.gaps | (1 << x),
                    frobenius: x,
                    genus: node.genus + 1,
                });
            }
        }
        let len = (node.frobenius + 2).max(2) as usize;
        let member = (0..len as i64).map(|n| node.contains(n)).collect();
        Some(NumericalSemigroup::from_table(member))
    }
}
