//! Extreme rays of a pointed polyhedral cone by the double description method.
//!
//! Constraints are inserted in order of increasing number of zero
//! coefficients (ties by input position). A pair of rays on opposite sides of
//! the inserted hyperplane is combined only when the constraints tight at both
//! rays have rank `dim - 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::linear::{dot_int, primitive_integer, LinearSystem, Relation};
use super::rank::{rank_integer, rank_small};
use super::GeometryError;
use crate::bitset::BitSet;

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zero: BitSet,
}

enum Rows {
    Small(Vec<Vec<i64>>),
    Big,
}

pub fn extreme_rays(system: &LinearSystem) -> Result<Vec<Vec<BigInt>>, GeometryError> {
    let dim = system.dim();
    if dim == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    if system.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for c in system.constraints() {
        if !c.is_homogeneous() {
            return Err(GeometryError::NotHomogeneous);
        }
        rows.push(c.coeffs().to_vec());
        if c.relation() == Relation::Eq {
            rows.push(c.coeffs().iter().map(|v| -v).collect());
        }
    }
    let small = match rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64()).collect::<Option<Vec<i64>>>())
        .collect::<Option<Vec<_>>>()
    {
        Some(r) => Rows::Small(r),
        None => Rows::Big,
    };

    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&k| (rows[k].iter().filter(|v| v.is_zero()).count(), k));

    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    for &k in &order {
        if basis.len() == dim {
            break;
        }
        let mut candidate: Vec<Vec<BigInt>> = basis.iter().map(|&b| rows[b].clone()).collect();
        candidate.push(rows[k].clone());
        if rank_integer(&candidate) == candidate.len() {
            basis.push(k);
        }
    }
    if basis.len() < dim {
        return Err(GeometryError::NotPointed);
    }

    let nrows = rows.len();
    let inverse = inverse_columns(&basis.iter().map(|&b| rows[b].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = inverse
        .into_iter()
        .enumerate()
        .map(|(k, v)| Ray {
            v,
            zero: BitSet::from_indices(
                nrows,
                basis.iter().enumerate().filter(|(b, _)| *b != k).map(|(_, &r)| r),
            ),
        })
        .collect();

    for &k in order.iter().filter(|k| !basis.contains(k)) {
        let a = &rows[k];
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    r.zero.insert(k);
                }
            }
            continue;
        }

        let created: Vec<Ray> = pos
            .par_iter()
            .flat_map_iter(|&p| {
                let rays = &rays;
                let values = &values;
                let rows = &rows;
                let small = &small;
                neg.iter().filter_map(move |&n| {
                    let common = rays[p].zero.intersection(&rays[n].zero);
                    if common.count() + 2 < dim {
                        return None;
                    }
                    if !rank_at_least(rows, small, &common, dim - 2) {
                        return None;
                    }
                    let sp = &values[p];
                    let sn = -&values[n];
                    let v: Vec<BigInt> = rays[p]
                        .v
                        .iter()
                        .zip(&rays[n].v)
                        .map(|(x, y)| &sn * x + sp * y)
                        .collect();
                    let mut zero = common;
                    zero.insert(k);
                    Some(Ray {
                        v: primitive_integer(v),
                        zero,
                    })
                })
            })
            .collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zero.insert(k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn rank_at_least(rows: &[Vec<BigInt>], small: &Rows, set: &BitSet, target: usize) -> bool {
    if target == 0 {
        return true;
    }
    match small {
        Rows::Small(s) => {
            let sel: Vec<&[i64]> = set.iter().map(|k| s[k].as_slice()).collect();
            rank_small(&sel) >= target
        }
        Rows::Big => {
            let sel: Vec<Vec<BigInt>> = set.iter().map(|k| rows[k].clone()).collect();
            rank_integer(&sel) >= target
        }
    }
}

/// Columns of the inverse of a nonsingular square integer matrix, each scaled
/// to a primitive integer vector with the same direction.
fn inverse_columns(b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = b.len();
    let mut m: Vec<Vec<BigRational>> = b
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            r.extend((0..d).map(|j| {
                BigRational::from_integer(BigInt::from(if i == j { 1 } else { 0 }))
            }));
            r
        })
        .collect();
    for col in 0..d {
        let p = (col..d)
            .find(|&r| !m[r][col].is_zero())
            .expect("basis rows are independent");
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..d {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..2 * d {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    (0..d)
        .map(|k| {
            let col: Vec<BigRational> = (0..d).map(|r| m[r][d + k].clone()).collect();
            super::linear::ExactVector::new(col).primitive()
        })
        .collect()
}
