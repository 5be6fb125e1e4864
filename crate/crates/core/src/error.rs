use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { left: usize, right: usize },
    InvalidDimension { dim: usize, min: usize, max: usize },
    BudgetExceeded { what: &'static str, limit: u64 },
    NotInverseClosed { element: u64 },
    IdentityInConnectionSet,
    NotSubgroup,
    NotMixedDihedral(String),
    InvalidVertex { vertex: u64, count: usize },
    SelfLoop { vertex: u32 },
    InvalidPartition(String),
    NotPermutation(String),
    DegreeMismatch { left: usize, right: usize },
    NotAutomorphism { generator: usize, edge: (u32, u32) },
    NotCosetImage { vertex: u32 },
    NotEquitable { cell: usize, target: usize },
    NotEdgeRegular(String),
    EdgeOutsideConnectionSet { edge: (u32, u32) },
    Verification(String),
    WitnessFailed { check: &'static str, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::InvalidDimension { dim, min, max } => {
                write!(f, "dimension {dim} outside supported range {min}..={max}")
            }
            Error::BudgetExceeded { what, limit } => {
                write!(f, "{what} budget of {limit} exceeded")
            }
            Error::NotInverseClosed { element } => {
                write!(f, "connection set is not inverse-closed (element {element})")
            }
            Error::IdentityInConnectionSet => f.write_str("connection set contains the identity"),
            Error::NotSubgroup => f.write_str("element set is not closed under multiplication"),
            Error::NotMixedDihedral(reason) => write!(f, "group is not mixed dihedral: {reason}"),
            Error::InvalidVertex { vertex, count } => {
                write!(f, "vertex {vertex} out of range for {count} vertices")
            }
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::NotPermutation(msg) => write!(f, "not a permutation: {msg}"),
            Error::DegreeMismatch { left, right } => {
                write!(f, "permutation degree mismatch: {left} vs {right}")
            }
            Error::NotAutomorphism { generator, edge } => write!(
                f,
                "generator {generator} does not preserve edge {{{}, {}}}",
                edge.0, edge.1
            ),
            Error::NotCosetImage { vertex } => {
                write!(f, "image of coset vertex {vertex} is not a coset")
            }
            Error::NotEquitable { cell, target } => write!(
                f,
                "partition is not equitable: cell {cell} has non-constant neighbour count into cell {target}"
            ),
            Error::NotEdgeRegular(msg) => write!(f, "action is not edge-regular: {msg}"),
            Error::EdgeOutsideConnectionSet { edge } => write!(
                f,
                "edge {{{}, {}}} has difference outside X ∪ Y",
                edge.0, edge.1
            ),
            Error::Verification(msg) => write!(f, "verification failed: {msg}"),
            Error::WitnessFailed { check, detail } => {
                write!(f, "edge-affine witness fails the {check} check: {detail}")
            }
        }
    }
}

impl core::error::Error for Error {}
