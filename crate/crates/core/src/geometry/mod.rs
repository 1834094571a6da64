//! Exact rational linear algebra over integer-normalized constraint systems.

mod dd;
mod integer;
mod linear;
mod rank;
mod simplex;

pub use dd::extreme_rays;
pub use integer::{
    enumerate_integer_points, find_integer_point, find_integer_point_with_stats, IntegerSearch,
    SearchStats,
};
pub use linear::{
    dot_int, dot_rat, primitive_integer, ExactVector, LinearConstraint, LinearSystem, Relation,
};
pub use rank::{codimension, rank_integer, rank_rational, rank_small};
pub use simplex::{rational_feasible, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("cone has a nonzero lineality space")]
    NotPointed,
    #[error("no constraints given for a cone of positive dimension")]
    EmptyInput,
    #[error("ray enumeration needs homogeneous constraints")]
    NotHomogeneous,
    #[error("dimension must be at least 1")]
    ZeroDimension,
}
