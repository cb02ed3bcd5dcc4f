//! Knapsack-type problems and the acyclic graph word problem in free groups,
//! finite groups, finitely generated abelian groups and their direct, free
//! and amalgamated products.

pub mod agp;
pub mod error;
pub mod generate;
pub mod graph;
pub mod groups;
pub mod knapsack;
pub mod limits;
pub mod oracle;
pub mod par;
pub mod problems;
pub mod reductions;
pub mod solve;
pub mod word;

pub use agp::{solve_agp, AgpInstance, AgpOutcome, PathCertificate};
pub use error::{Error, Result};
pub use graph::{Edge, LabeledGraph};
pub use groups::{Elem, FiniteGroup, GroupSpec, Side};
pub use problems::{Certificate, Instance, ProblemKind};
pub use solve::{solve, Solution};
pub use word::{Letter, Word};
