//! Arithmetic graphs of finite permutation groups.
//!
//! Groups are fully enumerated permutation groups ([`FiniteGroup`]). On top of
//! them the crate computes the Hawkes graph, the Sylow graph and the
//! N-critical graph ([`PrimeDigraph`]), and checks graph identities for
//! products of permutable, mutually permutable, totally permutable and
//! 𝔑-connected subgroups.

pub mod arith;
pub mod build;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod numbers;
pub mod ops;
pub mod perm;
pub mod scan;
pub mod products;
pub mod props;
pub mod series;
pub mod verify;

pub use error::{GroupError, Result};
pub use group::{coset_action, generate_group, subgroup_generated, FiniteGroup, Quotient, Subgroup};
pub use graph::PrimeDigraph;
pub use perm::Permutation;
pub use series::FormationTag;
