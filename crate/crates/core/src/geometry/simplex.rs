//! Rational feasibility by an exact phase-one simplex.
//!
//! The system is held as a dictionary: each basic variable is an affine
//! function of the nonbasic ones. Free variables are pivoted into the basis
//! first and then ignored by the ratio test, equation slacks are pivoted out
//! and pinned at zero, and the remaining sign-constrained problem is solved
//! with a single artificial variable under Bland's rule.
//!
//! The dictionary is kept fraction-free: every row shares one positive
//! denominator and all numerators are integers, updated by exact division
//! after each pivot. Numerators are `i128` with overflow checks; on overflow
//! the same pivot sequence is rerun with arbitrary-precision integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::linear::{ExactVector, LinearSystem, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Infeasible,
    /// A point satisfying every constraint. It has been re-checked against the
    /// input system.
    Feasible(ExactVector),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&ExactVector> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Free(usize),
    Slack(usize),
    Artificial,
}

impl Var {
    /// Position in Bland's order. The artificial variable comes first so that
    /// it leaves the basis whenever it ties in the ratio test.
    fn bland(self) -> usize {
        match self {
            Var::Artificial => 0,
            Var::Free(j) => 1 + j,
            Var::Slack(r) => 1 + (1 << 32) + r,
        }
    }
}

struct Overflow;

/// Integer arithmetic the dictionary needs.
trait Num: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
    fn signum(&self) -> i32;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn exact_div(&self, o: &Self) -> Self;
    fn neg(&self) -> Result<Self, Overflow>;
    fn cmp_num(&self, o: &Self) -> Ordering;
}

impl Num for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn cmp_num(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
}

impl Num for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn cmp_num(&self, o: &Self) -> Ordering {
        self.cmp(o)
    }
}

/// `denom * basic[r] = constant[r] + sum_c coef[r][c] * nonbasic[c]`.
struct Dictionary<T> {
    basic: Vec<Var>,
    nonbasic: Vec<Var>,
    denom: T,
    constant: Vec<T>,
    coef: Vec<Vec<T>>,
    /// Nonbasic columns whose variable is pinned at zero.
    pinned: Vec<bool>,
    /// Rows that take no part in the ratio test.
    inactive: Vec<bool>,
}

impl<T: Num> Dictionary<T> {
    fn pivot(&mut self, r: usize, c: usize) -> Result<(), Overflow> {
        let a = self.coef[r][c].clone();
        debug_assert!(a.signum() != 0);
        let d = self.denom.clone();
        let ncols = self.nonbasic.len();

        // rows other than r: (a * v - coef[s][c] * pivot_row[v]) / d
        let pivot_row = self.coef[r].clone();
        let pivot_const = self.constant[r].clone();
        for s in 0..self.basic.len() {
            if s == r {
                continue;
            }
            let t = self.coef[s][c].clone();
            if t.signum() == 0 {
                for k in 0..ncols {
                    if self.coef[s][k].signum() != 0 {
                        self.coef[s][k] = a.mul(&self.coef[s][k])?.exact_div(&d);
                    }
                }
                self.constant[s] = a.mul(&self.constant[s])?.exact_div(&d);
                continue;
            }
            for k in 0..ncols {
                if k == c {
                    // coefficient of the leaving variable: t * d / d
                    continue;
                }
                let v = a.mul(&self.coef[s][k])?.sub(&t.mul(&pivot_row[k])?)?;
                self.coef[s][k] = v.exact_div(&d);
            }
            let v = a.mul(&self.constant[s])?.sub(&t.mul(&pivot_const)?)?;
            self.constant[s] = v.exact_div(&d);
        }
        // pivot row: a * entering = -constant + d * leaving - sum others
        for k in 0..ncols {
            self.coef[r][k] = if k == c { d.clone() } else { pivot_row[k].neg()? };
        }
        self.constant[r] = pivot_const.neg()?;
        self.denom = a;
        if self.denom.signum() < 0 {
            self.denom = self.denom.neg()?;
            for s in 0..self.basic.len() {
                self.constant[s] = self.constant[s].neg()?;
                for k in 0..ncols {
                    if self.coef[s][k].signum() != 0 {
                        self.coef[s][k] = self.coef[s][k].neg()?;
                    }
                }
            }
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[c]);
        Ok(())
    }

    fn constrained(&self, r: usize) -> bool {
        !self.inactive[r] && matches!(self.basic[r], Var::Slack(_) | Var::Artificial)
    }

    fn value(&self, r: usize) -> BigRational {
        BigRational::new(self.constant[r].to_big(), self.denom.to_big())
    }
}

/// Decides whether a rational point satisfies every constraint of `system`.
pub fn rational_feasible(system: &LinearSystem) -> Feasibility {
    let fast = match run::<i128>(system) {
        Ok(r) => r,
        Err(Overflow) => match run::<BigInt>(system) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    };
    match fast {
        None => Feasibility::Infeasible,
        Some(x) => {
            assert!(
                system.is_satisfied_by(&x),
                "simplex witness failed verification against the input system"
            );
            Feasibility::Feasible(ExactVector::new(x))
        }
    }
}

fn run<T: Num>(system: &LinearSystem) -> Result<Option<Vec<BigRational>>, Overflow> {
    let dim = system.dim();
    let cons = system.constraints();
    let mut relevant = Vec::new();
    for (r, c) in cons.iter().enumerate() {
        match c.trivial_status() {
            Some(true) => {}
            Some(false) => return Ok(None),
            None => relevant.push(r),
        }
    }

    let mut constant = Vec::with_capacity(relevant.len());
    let mut coef = Vec::with_capacity(relevant.len());
    for &r in &relevant {
        constant.push(T::from_big(&-cons[r].constant()).ok_or(Overflow)?);
        coef.push(
            cons[r]
                .coeffs()
                .iter()
                .map(|v| T::from_big(v).ok_or(Overflow))
                .collect::<Result<Vec<T>, Overflow>>()?,
        );
    }
    let mut dict = Dictionary {
        basic: relevant.iter().map(|&r| Var::Slack(r)).collect(),
        nonbasic: (0..dim).map(Var::Free).collect(),
        denom: T::from_i64(1),
        constant,
        coef,
        pinned: vec![false; dim],
        inactive: vec![false; relevant.len()],
    };
    let is_eq = |v: Var| matches!(v, Var::Slack(r) if cons[r].relation() == Relation::Eq);

    // free variables into the basis, preferring equation rows
    for c in 0..dim {
        let mut choice = None;
        for r in 0..dict.basic.len() {
            if dict.coef[r][c].signum() == 0 || !matches!(dict.basic[r], Var::Slack(_)) {
                continue;
            }
            if is_eq(dict.basic[r]) {
                choice = Some(r);
                break;
            }
            if choice.is_none() {
                choice = Some(r);
            }
        }
        match choice {
            Some(r) => dict.pivot(r, c)?,
            None => dict.pinned[c] = true,
        }
    }
    for c in 0..dim {
        if is_eq(dict.nonbasic[c]) {
            dict.pinned[c] = true;
        }
    }

    // remaining equation slacks out of the basis
    for r in 0..dict.basic.len() {
        if !is_eq(dict.basic[r]) {
            continue;
        }
        let col = (0..dim).find(|&c| !dict.pinned[c] && dict.coef[r][c].signum() != 0);
        match col {
            Some(c) => {
                dict.pivot(r, c)?;
                dict.pinned[c] = true;
            }
            None => {
                if dict.constant[r].signum() != 0 {
                    return Ok(None);
                }
                dict.inactive[r] = true;
            }
        }
    }

    if let Some(worst) = most_negative_row(&dict) {
        for r in 0..dict.basic.len() {
            let v = if dict.constrained(r) {
                dict.denom.clone()
            } else {
                T::from_i64(0)
            };
            dict.coef[r].push(v);
        }
        dict.nonbasic.push(Var::Artificial);
        dict.pinned.push(false);
        let art = dict.nonbasic.len() - 1;
        dict.pivot(worst, art)?;
        if !phase_one(&mut dict)? {
            return Ok(None);
        }
    }

    let mut x = vec![BigRational::zero(); dim];
    for (r, v) in dict.basic.iter().enumerate() {
        if let Var::Free(j) = *v {
            x[j] = dict.value(r);
        }
    }
    Ok(Some(x))
}

fn most_negative_row<T: Num>(dict: &Dictionary<T>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for r in 0..dict.basic.len() {
        if !dict.constrained(r) || dict.constant[r].signum() >= 0 {
            continue;
        }
        best = match best {
            Some(b) if dict.constant[b].cmp_num(&dict.constant[r]) != Ordering::Greater => Some(b),
            _ => Some(r),
        };
    }
    best
}

/// Maximizes `-x0`. Returns true when the artificial variable reaches zero.
fn phase_one<T: Num>(dict: &mut Dictionary<T>) -> Result<bool, Overflow> {
    loop {
        let Some(art_row) = dict.basic.iter().position(|v| *v == Var::Artificial) else {
            return Ok(true);
        };
        if dict.constant[art_row].signum() == 0 {
            return Ok(true);
        }
        // objective -x0 = -(row of x0); a positive reduced cost means the
        // column enters with a negative coefficient in that row
        let entering = (0..dict.nonbasic.len())
            .filter(|&c| !dict.pinned[c] && dict.coef[art_row][c].signum() < 0)
            .min_by_key(|&c| dict.nonbasic[c].bland());
        let Some(c) = entering else {
            return Ok(false);
        };
        // ratio constant[r] / -coef[r][c], compared by cross multiplication
        let mut leave: Option<usize> = None;
        for r in 0..dict.basic.len() {
            if !dict.constrained(r) || dict.coef[r][c].signum() >= 0 {
                continue;
            }
            leave = match leave {
                None => Some(r),
                Some(b) => {
                    let lhs = dict.constant[r].mul(&dict.coef[b][c].neg()?)?;
                    let rhs = dict.constant[b].mul(&dict.coef[r][c].neg()?)?;
                    match lhs.cmp_num(&rhs) {
                        Ordering::Less => Some(r),
                        Ordering::Equal if dict.basic[r].bland() < dict.basic[b].bland() => Some(r),
                        _ => Some(b),
                    }
                }
            };
        }
        let r = leave.expect("phase-one objective is bounded by zero");
        dict.pivot(r, c)?;
    }
}

/// Reference implementation kept for cross-checking the fraction-free one.
#[cfg(test)]
fn rational_feasible_bigrational(system: &LinearSystem) -> bool {
    match run::<BigInt>(system) {
        Ok(r) => r.is_some(),
        Err(Overflow) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linear::LinearConstraint;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn contradictory_pair() {
        let sys = LinearSystem::with_constraints(
            1,
            vec![
                LinearConstraint::ge(&[1i64], 1),
                LinearConstraint::ge(&[-1i64], 0),
            ],
        );
        assert_eq!(rational_feasible(&sys), Feasibility::Infeasible);
    }

    #[test]
    fn single_bound() {
        let sys = LinearSystem::with_constraints(1, vec![LinearConstraint::ge(&[1i64], 1)]);
        assert_eq!(
            rational_feasible(&sys).witness().unwrap().entries(),
            &[q(1)]
        );
    }

    #[test]
    fn no_constraints_is_feasible() {
        assert!(rational_feasible(&LinearSystem::new(3)).is_feasible());
    }

    #[test]
    fn dependent_equations() {
        let sys = LinearSystem::with_constraints(
            2,
            vec![
                LinearConstraint::eq(&[1i64, 1], 2),
                LinearConstraint::eq(&[2i64, 2], 4),
                LinearConstraint::eq(&[1i64, -1], 0),
            ],
        );
        assert_eq!(
            rational_feasible(&sys).witness().unwrap().entries(),
            &[q(1), q(1)]
        );
        let bad = LinearSystem::with_constraints(
            2,
            vec![
                LinearConstraint::eq(&[1i64, 1], 2),
                LinearConstraint::eq(&[1i64, 1], 3),
            ],
        );
        assert_eq!(rational_feasible(&bad), Feasibility::Infeasible);
    }

    #[test]
    fn equations_beyond_free_variables() {
        // three equations in two unknowns, consistent
        let sys = LinearSystem::with_constraints(
            2,
            vec![
                LinearConstraint::eq(&[1i64, 0], 1),
                LinearConstraint::eq(&[0i64, 1], 2),
                LinearConstraint::eq(&[1i64, 1], 3),
                LinearConstraint::ge(&[1i64, -1], -5),
            ],
        );
        assert!(rational_feasible(&sys).is_feasible());
    }

    #[test]
    fn needs_phase_one_pivots() {
        // x + y >= 4, x - y >= 1, -x >= -3, y >= 0 -> feasible, e.g. (3, 1)
        let sys = LinearSystem::with_constraints(
            2,
            vec![
                LinearConstraint::ge(&[1i64, 1], 4),
                LinearConstraint::ge(&[1i64, -1], 1),
                LinearConstraint::ge(&[-1i64, 0], -3),
                LinearConstraint::ge(&[0i64, 1], 0),
            ],
        );
        assert!(rational_feasible(&sys).is_feasible());
        let mut tight = sys.clone();
        tight.push(LinearConstraint::ge(&[0i64, -1], -0));
        tight.push(LinearConstraint::ge(&[1i64, 0], 4));
        assert_eq!(rational_feasible(&tight), Feasibility::Infeasible);
    }

    #[test]
    fn huge_coefficients_fall_back() {
        let big = BigInt::from(10).pow(40);
        let sys = LinearSystem::with_constraints(
            2,
            vec![
                LinearConstraint::new(vec![big.clone(), BigInt::from(1)], big.clone(), Relation::Ge),
                LinearConstraint::new(vec![BigInt::from(-1), BigInt::from(0)], BigInt::from(-1), Relation::Ge),
                LinearConstraint::new(vec![BigInt::from(0), BigInt::from(-1)], BigInt::from(-1), Relation::Ge),
            ],
        );
        let w = rational_feasible(&sys);
        assert!(w.is_feasible());
    }

    proptest! {
        #[test]
        fn integer_and_big_paths_agree(
            rows in proptest::collection::vec(
                (proptest::collection::vec(-4i64..=4, 3), -6i64..=6, any::<bool>()),
                1..8,
            )
        ) {
            let sys = LinearSystem::with_constraints(
                3,
                rows.iter()
                    .map(|(c, b, eq)| if *eq && c[0] != 0 {
                        LinearConstraint::eq(c, *b)
                    } else {
                        LinearConstraint::ge(c, *b)
                    })
                    .collect(),
            );
            prop_assert_eq!(rational_feasible(&sys).is_feasible(), rational_feasible_bigrational(&sys));
        }
    }
}
