//! Integer points by branch and bound over the rational relaxation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::cmp::Ordering;

use super::linear::{LinearConstraint, LinearSystem};
use super::simplex::{rational_feasible, Feasibility};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSearch {
    Point(Vec<BigInt>),
    /// Every branch was rationally infeasible.
    Empty,
    BudgetExhausted,
}

/// Statistics of a search, mostly for reports and tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub infeasible_leaves: u64,
}

/// Searches for an integer point of `system`, expanding at most `budget` nodes.
pub fn find_integer_point(system: &LinearSystem, budget: u64) -> IntegerSearch {
    find_integer_point_with_stats(system, budget).0
}

pub fn find_integer_point_with_stats(
    system: &LinearSystem,
    budget: u64,
) -> (IntegerSearch, SearchStats) {
    let mut stats = SearchStats::default();
    let mut stack: Vec<Vec<LinearConstraint>> = vec![Vec::new()];
    while let Some(extra) = stack.pop() {
        if stats.nodes >= budget {
            return (IntegerSearch::BudgetExhausted, stats);
        }
        stats.nodes += 1;
        let mut node = system.clone();
        for c in &extra {
            node.push(c.clone());
        }
        let witness = match rational_feasible(&node) {
            Feasibility::Infeasible => {
                stats.infeasible_leaves += 1;
                continue;
            }
            Feasibility::Feasible(w) => w,
        };
        let Some(j) = most_fractional(witness.entries()) else {
            let point = witness.to_integers().expect("witness is integral");
            debug_assert!(system.is_satisfied_by_integers(&point));
            return (IntegerSearch::Point(point), stats);
        };
        let v = &witness.entries()[j];
        let dim = system.dim();
        let mut unit = vec![BigInt::from(0); dim];
        unit[j] = BigInt::one();
        let neg_unit: Vec<BigInt> = unit.iter().map(|u| -u).collect();
        let floor = v.floor().to_integer();
        let ceil = &floor + 1;

        let mut up = extra.clone();
        up.push(LinearConstraint::new(unit, ceil, super::Relation::Ge));
        let mut down = extra;
        down.push(LinearConstraint::new(neg_unit, -floor, super::Relation::Ge));
        stack.push(up);
        stack.push(down);
    }
    (IntegerSearch::Empty, stats)
}

/// Coordinate whose fractional part is closest to one half; lowest index wins ties.
fn most_fractional(x: &[BigRational]) -> Option<usize> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut best: Option<(usize, BigRational)> = None;
    for (j, v) in x.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        let frac = v - v.floor();
        let dist = (&frac - &half).abs();
        best = match best {
            Some((b, d)) if d.cmp(&dist) != Ordering::Greater => Some((b, d)),
            _ => Some((j, dist)),
        };
    }
    best.map(|(j, _)| j)
}

/// All integer points of `system` inside the box `lower[k] <= x_k <= upper[k]`.
///
/// Coordinates are fixed one at a time; a partial assignment is extended only
/// while the system stays rationally feasible. Returns `None` if more than
/// `budget` partial assignments would be examined.
pub fn enumerate_integer_points(
    system: &LinearSystem,
    lower: &[i64],
    upper: &[i64],
    budget: u64,
) -> Option<Vec<Vec<BigInt>>> {
    let dim = system.dim();
    assert_eq!(lower.len(), dim);
    assert_eq!(upper.len(), dim);
    let mut boxed = system.clone();
    for k in 0..dim {
        let mut unit = vec![0i64; dim];
        unit[k] = 1;
        boxed.push(LinearConstraint::ge(&unit, lower[k]));
        unit[k] = -1;
        boxed.push(LinearConstraint::ge(&unit, -upper[k]));
    }
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut prefix = Vec::with_capacity(dim);
    if !rational_feasible(&boxed).is_feasible() {
        return Some(out);
    }
    if descend(&boxed, lower, upper, &mut prefix, &mut out, &mut nodes, budget) {
        Some(out)
    } else {
        None
    }
}

fn descend(
    sys: &LinearSystem,
    lower: &[i64],
    upper: &[i64],
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<BigInt>>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    let k = prefix.len();
    let dim = sys.dim();
    if k == dim {
        let point: Vec<BigInt> = prefix.iter().map(|&v| BigInt::from(v)).collect();
        if sys.is_satisfied_by_integers(&point) {
            out.push(point);
        }
        return true;
    }
    for v in lower[k]..=upper[k] {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let mut unit = vec![0i64; dim];
        unit[k] = 1;
        let mut next = sys.clone();
        next.push(LinearConstraint::eq(&unit, v));
        if !rational_feasible(&next).is_feasible() {
            continue;
        }
        prefix.push(v);
        let ok = descend(&next, lower, upper, prefix, out, nodes, budget);
        prefix.pop();
        if !ok {
            return false;
        }
    }
    true
}
