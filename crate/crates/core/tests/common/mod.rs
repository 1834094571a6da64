//! Reference implementations used only by the tests. They are slow and
//! straightforward on purpose and share no code with the library beyond its
//! plain data types.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use kunz_core::bitset::BitSet;
use kunz_core::geometry::{LinearSystem, Relation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rational feasibility of `system` by Fourier–Motzkin elimination.
pub fn fm_feasible(system: &LinearSystem) -> bool {
    let mut rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for c in system.constraints() {
        let a = c.coeffs().to_vec();
        let b = c.constant().clone();
        if c.relation() == Relation::Eq {
            rows.push((a.iter().map(|v| -v).collect(), -b.clone()));
        }
        rows.push((a, b));
    }
    for k in 0..system.dim() {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[k].is_positive() {
                pos.push(r);
            } else if r.0[k].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (-&n.0[k], p.0[k].clone());
                let a: Vec<BigInt> = p.0.iter().zip(&n.0).map(|(x, y)| &sp * x + &sn * y).collect();
                let b = &sp * &p.1 + &sn * &n.1;
                keep.push(normalize(a, b));
            }
        }
        keep.sort();
        keep.dedup();
        rows = keep;
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

fn normalize(a: Vec<BigInt>, b: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = a.iter().fold(b.abs(), |g, v| g.gcd(v));
    if g.is_zero() || g == BigInt::from(1) {
        return (a, b);
    }
    (a.iter().map(|v| v / &g).collect(), b / &g)
}

/// A numerical semigroup stored by its gaps, for genus at most 31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaps(pub u64);

impl Gaps {
    pub fn contains(&self, n: u64) -> bool {
        n >= 64 || self.0 >> n & 1 == 0
    }

    pub fn genus(&self) -> u64 {
        self.0.count_ones() as u64
    }

    pub fn frobenius(&self) -> i64 {
        if self.0 == 0 {
            -1
        } else {
            63 - self.0.leading_zeros() as i64
        }
    }

    pub fn conductor(&self) -> u64 {
        (self.frobenius() + 1) as u64
    }

    pub fn multiplicity(&self) -> u64 {
        (1..).find(|&n| self.contains(n)).unwrap()
    }

    /// Elements of the semigroup below the conductor.
    pub fn sporadic(&self) -> u64 {
        (0..self.conductor()).filter(|&n| self.contains(n)).count() as u64
    }

    /// Nonzero elements that are not a sum of two nonzero elements.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let m = self.multiplicity();
        (1..=self.conductor() + m)
            .filter(|&x| self.contains(x))
            .filter(|&x| !(1..x).any(|a| self.contains(a) && self.contains(x - a)))
            .collect()
    }

    /// Integers outside the semigroup that land inside after adding any
    /// nonzero element; for the naturals this is `{-1}`.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        if self.0 == 0 {
            return vec![-1];
        }
        let c = self.conductor();
        (1..c)
            .filter(|&x| !self.contains(x))
            .filter(|&x| (1..=c).all(|s| !self.contains(s) || self.contains(x + s)))
            .map(|x| x as i64)
            .collect()
    }

    pub fn apery(&self) -> Vec<u64> {
        let m = self.multiplicity();
        (0..m)
            .map(|i| (0..).map(|k| i + k * m).find(|&w| self.contains(w)).unwrap())
            .collect()
    }

    pub fn kunz(&self) -> Vec<i64> {
        let m = self.multiplicity();
        self.apery()[1..].iter().map(|&w| (w / m) as i64).collect()
    }

    /// Pairs `i < j` of nonzero residues with `w_j - w_i` in the semigroup.
    pub fn apery_relations(&self) -> BTreeSet<(u32, u32)> {
        let w = self.apery();
        let m = w.len() as u32;
        let mut out = BTreeSet::new();
        for i in 1..m {
            for j in 1..m {
                let (a, b) = (w[i as usize], w[j as usize]);
                if i != j && b > a && self.contains(b - a) {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

/// Every semigroup of genus at most `g_max`, walking the tree in which a child
/// drops one minimal generator larger than the Frobenius number.
pub fn semigroup_stream(g_max: u64) -> Vec<Gaps> {
    assert!(g_max <= 30);
    let mut out = vec![Gaps(0)];
    let mut level = vec![Gaps(0)];
    for _ in 0..g_max {
        let mut next = Vec::new();
        for s in &level {
            let f = s.frobenius();
            for x in s.minimal_generators() {
                if x as i64 > f {
                    next.push(Gaps(s.0 | 1 << x));
                }
            }
        }
        out.extend(&next);
        level = next;
    }
    out
}

/// Number of gap sets of size `g` inside `1..2g` whose complement is closed
/// under addition.
pub fn count_genus_by_subsets(g: u32) -> u64 {
    let bits = 2 * g;
    let mut count = 0;
    for mask in 0u64..1 << bits {
        if mask.count_ones() != g {
            continue;
        }
        let gaps = mask << 1;
        let s = Gaps(gaps);
        let closed = (1..2 * bits as u64).all(|a| {
            !s.contains(a) || (1..=a).all(|b| !s.contains(b) || s.contains(a + b))
        });
        if closed {
            count += 1;
        }
    }
    count
}

/// Rays of the pointed cone `{x : normals · x >= 0}` found by trying every set
/// of `dim - 1` facets.
pub fn brute_force_rays(normals: &[Vec<i64>], dim: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let n = normals.len();
    let mut pick = Vec::new();
    choose(n, dim - 1, 0, &mut pick, &mut |rows| {
        let sub: Vec<Vec<i64>> = rows.iter().map(|&r| normals[r].clone()).collect();
        if let Some(v) = kernel_vector(&sub, dim) {
            for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
                if normals
                    .iter()
                    .all(|a| a.iter().zip(&cand).map(|(p, q)| p * q).sum::<i64>() >= 0)
                {
                    out.insert(cand);
                }
            }
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..n {
        if n - i < k - pick.len() {
            break;
        }
        pick.push(i);
        choose(n, k, i + 1, pick, f);
        pick.pop();
    }
}

/// The primitive generator of a one-dimensional kernel, if the kernel has
/// that dimension.
fn kernel_vector(rows: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    // fraction-free elimination in i128
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        for r in 0..a.len() {
            if r != row && a[r][col] != 0 {
                let (x, y) = (a[row][col], a[r][col]);
                for c in 0..dim {
                    a[r][c] = a[r][c] * x - a[row][c] * y;
                }
                let g = a[r].iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 {
                    a[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != dim - 1 {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c)).unwrap();
    // x_free = L, x_pivot = -a[r][free] * L / a[r][pivot]
    let l = pivots
        .iter()
        .enumerate()
        .fold(1i128, |l, (r, &c)| lcm(l, a[r][c].abs()));
    let mut v = vec![0i128; dim];
    v[free] = l;
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -a[r][free] * l / a[r][c];
    }
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x));
    Some(v.iter().map(|&x| (x / g) as i64).collect())
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Every face of a pointed cone as the set of facets containing it, obtained
/// by closing the facet ray sets under intersection.
pub fn brute_force_faces(incidence: &[BitSet], ray_count: usize) -> BTreeSet<BitSet> {
    let full = BitSet::full(ray_count);
    let mut seen: HashSet<BitSet> = HashSet::from([full.clone()]);
    let mut stack = vec![full];
    while let Some(face) = stack.pop() {
        for h in incidence {
            let next = face.intersection(h);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.into_iter()
        .map(|rays| {
            BitSet::from_indices(
                incidence.len(),
                (0..incidence.len()).filter(|&h| rays.is_subset(&incidence[h])),
            )
        })
        .collect()
}
