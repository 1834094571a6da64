use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fixed-length vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector(Vec<BigRational>);

impl ExactVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![BigRational::zero(); dim])
    }

    pub fn from_integers<T: Into<BigInt> + Copy>(entries: &[T]) -> Self {
        Self(
            entries
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|v| v.is_integer())
    }

    /// Integer entries, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    /// Positive multiple with coprime integer entries. The zero vector maps to itself.
    pub fn primitive(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        primitive_integer(ints)
    }

    pub fn sub(&self, other: &ExactVector) -> ExactVector {
        ExactVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Divides by the gcd of the entries. Direction is preserved.
pub fn primitive_integer(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| y * BigRational::from_integer(x.clone()))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `coeffs · x >= constant`
    Ge,
    /// `coeffs · x == constant`
    Eq,
}

/// Integer linear constraint in canonical form.
///
/// Coefficients and constant are divided by their common gcd. Equations are
/// additionally sign-normalized so that the first nonzero coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearConstraint {
    coeffs: Vec<BigInt>,
    constant: BigInt,
    relation: Relation,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt, relation: Relation) -> Self {
        let g = coeffs
            .iter()
            .fold(constant.clone(), |acc, x| acc.gcd(x));
        let (mut coeffs, mut constant) = if g.is_zero() || g.is_one() {
            (coeffs, constant)
        } else {
            (
                coeffs.into_iter().map(|c| c / &g).collect(),
                constant / &g,
            )
        };
        if relation == Relation::Eq {
            let negate = coeffs
                .iter()
                .find(|c| !c.is_zero())
                .map(|c| c.is_negative())
                .unwrap_or(constant.is_negative());
            if negate {
                for c in coeffs.iter_mut() {
                    *c = -&*c;
                }
                constant = -constant;
            }
        }
        Self {
            coeffs,
            constant,
            relation,
        }
    }

    pub fn ge<T: Into<BigInt> + Copy>(coeffs: &[T], constant: T) -> Self {
        Self::new(
            coeffs.iter().map(|&c| c.into()).collect(),
            constant.into(),
            Relation::Ge,
        )
    }

    pub fn eq<T: Into<BigInt> + Copy>(coeffs: &[T], constant: T) -> Self {
        Self::new(
            coeffs.iter().map(|&c| c.into()).collect(),
            constant.into(),
            Relation::Eq,
        )
    }

    /// Builds a constraint from rational data by clearing denominators.
    pub fn from_rational(coeffs: &[BigRational], constant: &BigRational, relation: Relation) -> Self {
        let lcm = coeffs
            .iter()
            .chain(std::iter::once(constant))
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = BigRational::from_integer(lcm);
        Self::new(
            coeffs.iter().map(|c| (c * &scale).to_integer()).collect(),
            (constant * &scale).to_integer(),
            relation,
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    /// For a constraint with all-zero coefficients, whether it is satisfied
    /// (`Some(true)`) or contradictory (`Some(false)`); `None` otherwise.
    pub fn trivial_status(&self) -> Option<bool> {
        if self.coeffs.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(match self.relation {
            Relation::Ge => !self.constant.is_positive(),
            Relation::Eq => self.constant.is_zero(),
        })
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs = dot_rat(&self.coeffs, x);
        let rhs = BigRational::from_integer(self.constant.clone());
        match self.relation {
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn is_satisfied_by_integers(&self, x: &[BigInt]) -> bool {
        let lhs = dot_int(&self.coeffs, x);
        match self.relation {
            Relation::Ge => lhs >= self.constant,
            Relation::Eq => lhs == self.constant,
        }
    }

    /// `coeffs · x - constant`
    pub fn slack_at(&self, x: &[BigRational]) -> BigRational {
        dot_rat(&self.coeffs, x) - BigRational::from_integer(self.constant.clone())
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "x{}", k + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let rel = match self.relation {
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        write!(f, " {rel} {}", self.constant)
    }
}

/// A list of constraints over `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn with_constraints(dim: usize, constraints: Vec<LinearConstraint>) -> Self {
        let mut sys = Self::new(dim);
        for c in constraints {
            sys.push(c);
        }
        sys
    }

    pub fn push(&mut self, c: LinearConstraint) {
        assert_eq!(
            c.dim(),
            self.dim,
            "constraint has {} coefficients, system has dimension {}",
            c.dim(),
            self.dim
        );
        self.constraints.push(c);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    pub fn is_satisfied_by_integers(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self
                .constraints
                .iter()
                .all(|c| c.is_satisfied_by_integers(x))
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
