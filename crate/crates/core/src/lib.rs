//! Structure analysis for subgroups of finite direct products.
//!
//! Given a subgroup `U` of a direct product `A1 x A2 x ... x An`, this crate
//! answers structural questions about how `U` sits across the factors: which
//! tuples are forced to move together, which index sets split off as direct
//! factors of the core, when `U` is recovered from quotient data on the
//! factors, and how a family of homomorphisms out of a single group presents
//! such a subgroup.
//!
//! Everything is computed on explicit multiplication tables. Groups are
//! small and finite by design: a [`GroupTable`] holds at most
//! [`MAX_GROUP_ORDER`] elements, and products are never materialised as a
//! single table beyond [`MAX_MATERIALIZED_ORDER`] tuples.
//!
//! Module map:
//!
//! * [`perm`] - permutations with cycle-notation parsing and printing.
//! * [`group`] - multiplication tables, subgroups, quotients, homomorphisms.
//! * [`product`] - direct products, tuple subgroups, coordinate families,
//!   and the touch partition.
//! * [`decomp`] - connectivity and cohesion of the core, smashed subgroups.
//! * [`structural`] - structural isomorphisms between factor quotients,
//!   reconstruction of `U` from coset data, and quotient systems.
//! * [`present`] - subgroups presented by a tuple of homomorphisms out of a
//!   common source group.

pub mod decomp;
pub mod group;
pub mod perm;
pub mod present;
pub mod product;
pub mod structural;

pub use group::{
    check_iso, enumerate_subgroups, GroupLaw, GroupTable, Homomorphism, IsoCheck, QuotientGroup,
    SubgroupSet,
};
pub use product::{IndexSet, ProductGroup, ProductSubgroup, TouchPartition, Tuple};

/// Largest order accepted for a single multiplication table.
///
/// Input groups, realized subgroups and quotients all go through
/// [`GroupTable`], so this bounds every table the crate ever builds.
pub const MAX_GROUP_ORDER: usize = 256;

/// Largest direct product that may be materialised element by element.
///
/// Products with more tuples than this are still usable as ambients (their
/// subgroups are stored explicitly), but the full tuple set is never listed.
pub const MAX_MATERIALIZED_ORDER: usize = 4096;

/// Default order bound for subgroup enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 128;

/// Errors reported by the crate.
///
/// `Inconsistent` is reserved for conditions that are mathematically
/// impossible for valid inputs; seeing one means the library itself is wrong,
/// not the caller.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A claimed homomorphism fails the law, with a witness pair.
    #[error("not a homomorphism: f({x}.{y}) = {got} but f({x}).f({y}) = {want}")]
    NotHomomorphism {
        x: usize,
        y: usize,
        got: usize,
        want: usize,
    },

    /// A subgroup expected to be normal is not; `element` conjugated by `by`
    /// leaves the subgroup.
    #[error("subgroup is not normal: conjugating element {element} by {by} leaves the subgroup")]
    NotNormal { element: usize, by: usize },

    /// A size limit was exceeded.
    #[error("{what} of order {order} exceeds the bound of {bound}")]
    Resource {
        what: &'static str,
        order: usize,
        bound: usize,
    },

    /// An operation's mathematical hypothesis does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Internal consistency failure; indicates a bug in this crate.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
