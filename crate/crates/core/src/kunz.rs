//! The Kunz cone, the relaxed Kunz polyhedron and the unit-group action.
//!
//! Coordinates are indexed by the nonzero residues `1..m`; position `k` of a
//! vector holds `x_{k+1}`. Facets are the pairs `(i, j)` with `1 <= i <= j < m`
//! and `i + j != m`, listed in lexicographic order, each standing for the
//! inequality `x_i + x_j >= x_{(i + j) mod m}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::bitset::BitSet;
use crate::geometry::{ExactVector, LinearConstraint, LinearSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KunzError {
    #[error("multiplicity must be at least 3, got {0}")]
    MultiplicityTooSmall(u32),
    #[error("{u} is not a unit modulo {m}")]
    NotAUnit { u: u32, m: u32 },
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KunzFacet {
    pub i: u32,
    pub j: u32,
}

impl KunzFacet {
    /// Residue on the right-hand side, `(i + j) mod m`.
    pub fn target(&self, m: u32) -> u32 {
        (self.i + self.j) % m
    }

    /// Whether `i + j` exceeds `m`, i.e. the inhomogeneous inequality of the
    /// relaxed polyhedron carries a `+1`.
    pub fn wraps(&self, m: u32) -> bool {
        self.i + self.j > m
    }

    /// Homogeneous normal `e_i + e_j - e_{i+j}` as a length `m - 1` vector.
    pub fn normal(&self, m: u32) -> Vec<i64> {
        let mut v = vec![0i64; (m - 1) as usize];
        v[(self.i - 1) as usize] += 1;
        v[(self.j - 1) as usize] += 1;
        v[(self.target(m) - 1) as usize] -= 1;
        v
    }
}

#[derive(Clone, Debug)]
pub struct KunzCone {
    m: u32,
    facets: Vec<KunzFacet>,
}

impl KunzCone {
    pub fn new(m: u32) -> Result<Self, KunzError> {
        if m < 3 {
            return Err(KunzError::MultiplicityTooSmall(m));
        }
        let mut facets = Vec::new();
        for i in 1..m {
            for j in i..m {
                if i + j != m {
                    facets.push(KunzFacet { i, j });
                }
            }
        }
        Ok(Self { m, facets })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        (self.m - 1) as usize
    }

    pub fn facets(&self) -> &[KunzFacet] {
        &self.facets
    }

    pub fn facet_index(&self, i: u32, j: u32) -> Option<usize> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.facets.binary_search(&KunzFacet { i, j }).ok()
    }

    pub fn normals(&self) -> Vec<Vec<i64>> {
        self.facets.iter().map(|f| f.normal(self.m)).collect()
    }

    /// `C_m` as a homogeneous system, one constraint per facet in canonical order.
    pub fn system(&self) -> LinearSystem {
        LinearSystem::with_constraints(
            self.dim(),
            self.normals()
                .iter()
                .map(|n| LinearConstraint::ge(n, 0))
                .collect(),
        )
    }

    /// Facet pairs whose inequality is tight in `hset`.
    pub fn tight_pairs(&self, hset: &BitSet) -> Vec<KunzFacet> {
        hset.iter().map(|k| self.facets[k]).collect()
    }

    /// Facets of the relaxed polyhedron that are tight at the integer point `x`.
    pub fn tight_facets(&self, x: &[i64]) -> Result<BitSet, KunzError> {
        if x.len() != self.dim() {
            return Err(KunzError::WrongLength {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let m = self.m;
        Ok(BitSet::from_indices(
            self.facets.len(),
            self.facets.iter().enumerate().filter_map(|(k, f)| {
                let lhs = x[(f.i - 1) as usize] + x[(f.j - 1) as usize] + i64::from(f.wraps(m));
                (lhs == x[(f.target(m) - 1) as usize]).then_some(k)
            }),
        ))
    }

    /// The elements of `(Z/m)*` in increasing order.
    pub fn units(&self) -> Vec<u32> {
        (1..self.m).filter(|u| u.gcd(&self.m) == 1).collect()
    }

    pub fn action(&self, u: u32) -> Result<UnitAction, KunzError> {
        UnitAction::new(self, u)
    }

    pub fn unit_group(&self) -> Vec<UnitAction> {
        self.units()
            .into_iter()
            .map(|u| UnitAction::new(self, u).expect("listed units are units"))
            .collect()
    }
}

/// The relaxed Kunz polyhedron `P'_m` and its unique vertex.
pub fn relaxed_polyhedron(m: u32) -> Result<(LinearSystem, ExactVector), KunzError> {
    let cone = KunzCone::new(m)?;
    let mut sys = LinearSystem::new(cone.dim());
    for f in cone.facets() {
        let constant = if f.wraps(m) { -1i64 } else { 0 };
        sys.push(LinearConstraint::ge(&f.normal(m), constant));
    }
    let apex = ExactVector::new(
        (1..m)
            .map(|i| BigRational::new(BigInt::from(-(i as i64)), BigInt::from(m)))
            .collect(),
    );
    for c in sys.constraints() {
        assert!(
            c.slack_at(apex.entries()) == num_traits::Zero::zero(),
            "apex must be tight on {c}"
        );
    }
    Ok((sys, apex))
}

/// The Kunz polyhedron `P_m`: the relaxed polyhedron plus `x_i >= 1`.
pub fn kunz_polyhedron(m: u32) -> Result<LinearSystem, KunzError> {
    let (mut sys, _) = relaxed_polyhedron(m)?;
    let d = (m - 1) as usize;
    for k in 0..d {
        let mut unit = vec![0i64; d];
        unit[k] = 1;
        sys.push(LinearConstraint::ge(&unit, 1));
    }
    Ok(sys)
}

/// Whether `x` are the Kunz coordinates of a numerical semigroup of multiplicity `m`.
pub fn is_kunz_coordinates(m: u32, x: &[i64]) -> bool {
    if m < 2 || x.len() != (m - 1) as usize || x.iter().any(|&v| v < 1) {
        return false;
    }
    for i in 1..m {
        for j in i..m {
            if i + j == m {
                continue;
            }
            let lhs = x[(i - 1) as usize] + x[(j - 1) as usize] + if i + j > m { 1 } else { 0 };
            if lhs < x[((i + j) % m - 1) as usize] {
                return false;
            }
        }
    }
    true
}

/// Multiplication by a unit `u` on residues, coordinates and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitAction {
    m: u32,
    u: u32,
    /// `coord[k]` is the position receiving coordinate `k`: residue `k + 1`
    /// moves to `u (k + 1) mod m`.
    coord: Vec<usize>,
    facet: Vec<usize>,
}

impl UnitAction {
    fn new(cone: &KunzCone, u: u32) -> Result<Self, KunzError> {
        let m = cone.m;
        if u == 0 || u.gcd(&m) != 1 {
            return Err(KunzError::NotAUnit { u, m });
        }
        let coord: Vec<usize> = (1..m).map(|i| ((u * i) % m - 1) as usize).collect();
        let facet = cone
            .facets
            .iter()
            .map(|f| {
                cone.facet_index((u * f.i) % m, (u * f.j) % m)
                    .expect("unit action preserves the facet family")
            })
            .collect();
        Ok(Self { m, u, coord, facet })
    }

    pub fn unit(&self) -> u32 {
        self.u
    }

    pub fn residue(&self, i: u32) -> u32 {
        (self.u * i) % self.m
    }

    pub fn coordinate_permutation(&self) -> &[usize] {
        &self.coord
    }

    pub fn facet_permutation(&self) -> &[usize] {
        &self.facet
    }

    /// `x'_{u i} = x_i`.
    pub fn act_on_vector<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (k, v) in x.iter().enumerate() {
            out[self.coord[k]] = v.clone();
        }
        out
    }

    pub fn act_on_face(&self, hset: &BitSet) -> BitSet {
        hset.permuted(&self.facet)
    }
}
