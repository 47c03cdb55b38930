//! Exact lattice polytopes and fans: facets by double description, face lattices, exact LP
//! edge certificates, height-function ascents, normal fans, Batyrev data and fan isomorphism.

mod bitset;
mod fan;
mod hull;
mod intlin;
mod lp;
mod poly;
mod polytope;

pub use bitset::IndexSet;
pub use fan::{fan_isomorphic, Fan, FanJson};
pub use intlin::{adjugate, det, primitive, rank, saturated_span, varpi_coordinates, SaturatedLattice};
pub use lp::{maximize, LpOutcome, LpSolution};
pub use poly::IntPolynomial;
pub use polytope::{
    AscentProfile, EdgeCertificate, Face, FaceLattice, Facet, LatticePolytope, PolytopeJson,
};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty vertex set")]
    Empty,
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(Vec<i64>),
    #[error("point {0:?} is not extreme")]
    NotExtreme(Vec<i64>),
    #[error("label count does not match vertex count")]
    LabelCount,
    #[error("bad label: {0}")]
    Label(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("point set does not span its ambient space")]
    NotFullDimensional,
    #[error("polytope is a point")]
    ZeroDimensional,
    #[error("functional is constant on edge {edge:?}")]
    NonGenericFunctional { edge: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("ray {0} has the wrong length")]
    RayLength(usize),
    #[error("ray {0} is zero or not primitive")]
    NotPrimitive(usize),
    #[error("cone {0} refers to a missing ray")]
    BadIndex(usize),
    #[error("fan ranks differ ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("fan is not smooth at cone {0}")]
    NonSmooth(usize),
    #[error("fan is not complete")]
    Incomplete,
    #[error("too many rays ({0}) for subset enumeration")]
    TooManyRays(usize),
    #[error("cone {0} is not simplicial of full dimension")]
    NotSimplicial(usize),
}
