use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Rank of a list of rational row vectors by exact Gaussian elimination.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..ncols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    if let Some(small) = to_i64_rows(rows) {
        let refs: Vec<&[i64]> = small.iter().map(|r| r.as_slice()).collect();
        return rank_small(&refs);
    }
    let rat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect();
    rank_rational(&rat)
}

fn to_i64_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_i64()).collect::<Option<Vec<i64>>>())
        .collect()
}

/// Rank of small integer rows.
///
/// Runs fraction-free elimination in `i128` and falls back to rational
/// arithmetic if an intermediate value would overflow.
pub fn rank_small(rows: &[&[i64]]) -> usize {
    match bareiss_rank(rows) {
        Some(r) => r,
        None => {
            let rat: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect();
            rank_rational(&rat)
        }
    }
}

fn bareiss_rank(rows: &[&[i64]]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in rank + 1..m.len() {
            let lead = m[r][col];
            for c in col + 1..ncols {
                let a = m[r][c].checked_mul(pivot)?;
                let b = lead.checked_mul(m[rank][c])?;
                let num = a.checked_sub(b)?;
                if num % prev != 0 {
                    return None;
                }
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

/// Codimension of the face cut out by `tight_normals`: the rank of their span.
pub fn codimension(tight_normals: &[Vec<i64>], dim: usize) -> usize {
    debug_assert!(tight_normals.iter().all(|v| v.len() == dim));
    let refs: Vec<&[i64]> = tight_normals.iter().map(|r| r.as_slice()).collect();
    rank_small(&refs)
}
