//! Kunz posets on the nonzero residues modulo `m`.

use std::fmt;

use crate::kunz::KunzFacet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("({i}, {j}) is not a facet pair for m = {m}")]
    InvalidPair { i: u32, j: u32, m: u32 },
    #[error("residue {0} is outside 1..m")]
    InvalidResidue(u32),
    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(u32, u32),
    #[error("multiplicity must be at least 2")]
    MultiplicityTooSmall,
}

/// Reflexive and transitive relation on `1..m`, stored as a dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preorder {
    m: u32,
    leq: Vec<Vec<bool>>,
}

impl Preorder {
    /// Reflexive-transitive closure of the given `(i, j)` pairs meaning `i <= j`.
    pub fn generated(m: u32, pairs: &[(u32, u32)]) -> Result<Self, PosetError> {
        if m < 2 {
            return Err(PosetError::MultiplicityTooSmall);
        }
        let n = (m - 1) as usize;
        let mut leq = vec![vec![false; n]; n];
        for (k, row) in leq.iter_mut().enumerate() {
            row[k] = true;
        }
        for &(i, j) in pairs {
            for r in [i, j] {
                if r == 0 || r >= m {
                    return Err(PosetError::InvalidResidue(r));
                }
            }
            leq[(i - 1) as usize][(j - 1) as usize] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i][k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Ok(Self { m, leq })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn leq(&self, i: u32, j: u32) -> bool {
        self.leq[(i - 1) as usize][(j - 1) as usize]
    }

    fn residues(&self) -> impl Iterator<Item = u32> {
        1..self.m
    }

    /// First pair of distinct residues related both ways, if any.
    pub fn antisymmetry_violation(&self) -> Option<(u32, u32)> {
        for i in self.residues() {
            for j in i + 1..self.m {
                if self.leq(i, j) && self.leq(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Residues in a maximal class: everything above them is also below them.
    pub fn maximal_elements(&self) -> Vec<u32> {
        self.residues()
            .filter(|&i| self.residues().all(|j| !self.leq(i, j) || self.leq(j, i)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        self.residues()
            .filter(|&i| self.residues().all(|j| !self.leq(j, i) || self.leq(i, j)))
            .collect()
    }

    /// Number of strongly connected classes among `elements`.
    pub fn class_count(&self, elements: &[u32]) -> usize {
        let mut reps: Vec<u32> = Vec::new();
        for &i in elements {
            if !reps.iter().any(|&r| self.leq(r, i) && self.leq(i, r)) {
                reps.push(i);
            }
        }
        reps.len()
    }
}

/// A partial order on `1..m` with cached minimal and maximal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KunzPoset {
    order: Preorder,
    minimal: Vec<u32>,
    maximal: Vec<u32>,
}

/// Result of reading a poset off a set of tight facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TightPoset {
    Poset(KunzPoset),
    /// The generated relation has a cycle; no numerical semigroup lies on such a face.
    PreorderFailure(Preorder),
}

impl TightPoset {
    pub fn poset(&self) -> Option<&KunzPoset> {
        match self {
            TightPoset::Poset(p) => Some(p),
            TightPoset::PreorderFailure(_) => None,
        }
    }

    pub fn preorder(&self) -> &Preorder {
        match self {
            TightPoset::Poset(p) => &p.order,
            TightPoset::PreorderFailure(q) => q,
        }
    }
}

impl KunzPoset {
    pub fn from_preorder(order: Preorder) -> Result<Self, PosetError> {
        if let Some((i, j)) = order.antisymmetry_violation() {
            return Err(PosetError::NotAntisymmetric(i, j));
        }
        let minimal = order.minimal_elements();
        let maximal = order.maximal_elements();
        Ok(Self {
            order,
            minimal,
            maximal,
        })
    }

    /// Partial order generated by `(i, j)` pairs meaning `i <= j`.
    pub fn from_relations(m: u32, pairs: &[(u32, u32)]) -> Result<Self, PosetError> {
        Self::from_preorder(Preorder::generated(m, pairs)?)
    }

    /// Each tight pair `(i, j)` contributes `i <= i + j` and `j <= i + j`.
    pub fn from_tight_set(m: u32, tight: &[KunzFacet]) -> Result<TightPoset, PosetError> {
        let mut pairs = Vec::with_capacity(2 * tight.len());
        for f in tight {
            if f.i == 0 || f.j == 0 || f.i >= m || f.j >= m || f.i + f.j == m {
                return Err(PosetError::InvalidPair { i: f.i, j: f.j, m });
            }
            let k = f.target(m);
            pairs.push((f.i, k));
            pairs.push((f.j, k));
        }
        let order = Preorder::generated(m, &pairs)?;
        Ok(match Self::from_preorder(order.clone()) {
            Ok(p) => TightPoset::Poset(p),
            Err(_) => TightPoset::PreorderFailure(order),
        })
    }

    pub fn antichain(m: u32) -> Self {
        Self::from_relations(m, &[]).expect("antichain is a partial order")
    }

    pub fn m(&self) -> u32 {
        self.order.m
    }

    pub fn leq(&self, i: u32, j: u32) -> bool {
        self.order.leq(i, j)
    }

    pub fn lt(&self, i: u32, j: u32) -> bool {
        i != j && self.order.leq(i, j)
    }

    pub fn minimal(&self) -> &[u32] {
        &self.minimal
    }

    pub fn maximal(&self) -> &[u32] {
        &self.maximal
    }

    pub fn is_maximal(&self, f: u32) -> bool {
        self.maximal.contains(&f)
    }

    /// One more than the number of minimal elements.
    pub fn embedding_dimension(&self) -> u32 {
        1 + self.minimal.len() as u32
    }

    /// Number of maximal elements.
    pub fn type_(&self) -> u32 {
        self.maximal.len() as u32
    }

    /// `i < j` implies `j - i < j` for distinct related residues.
    pub fn check_kunz_axiom(&self) -> bool {
        let m = self.m();
        (1..m).all(|i| {
            (1..m).all(|j| i == j || !self.leq(i, j) || self.leq((j + m - i) % m, j))
        })
    }

    /// Strict relations `(i, j)` with `i < j`, sorted.
    pub fn relations(&self) -> Vec<(u32, u32)> {
        let m = self.m();
        let mut out = Vec::new();
        for i in 1..m {
            for j in 1..m {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cover relations of the Hasse diagram.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let m = self.m();
        self.relations()
            .into_iter()
            .filter(|&(i, j)| !(1..m).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.relations().is_empty()
    }
}

/// Embedding dimension and type read off a tight set by variable occurrence.
///
/// `e - 1` counts residues that are never the target `i + j` of a tight pair
/// and `t` counts residues never used as a summand. On faces whose relation is
/// a partial order these are the minimal and maximal elements; the reading is
/// also defined when the relation has cycles.
pub fn occurrence_invariants(m: u32, tight: &[KunzFacet]) -> (u32, u32) {
    let mut target = vec![false; m as usize];
    let mut summand = vec![false; m as usize];
    for f in tight {
        target[f.target(m) as usize] = true;
        summand[f.i as usize] = true;
        summand[f.j as usize] = true;
    }
    let e = 1 + (1..m as usize).filter(|&k| !target[k]).count() as u32;
    let t = (1..m as usize).filter(|&k| !summand[k]).count() as u32;
    (e, t)
}

impl fmt::Display for KunzPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .iter()
            .map(|(i, j)| format!("{i}<{j}"))
            .collect();
        write!(f, "m={} [{}]", self.m(), covers.join(", "))
    }
}
