//! Exact free-group algorithms and machine-checked certificates for an
//! explicit family of witness groups `G_n`.
//!
//! * [`word`]: reduced words, cyclic normal forms, roots and centralizers.
//! * [`stallings`]: folded subgroup graphs, membership, rank and bases.
//! * [`whitehead`]: Whitehead automorphisms, minimization and primitivity.
//! * [`abelianize`]: exponent vectors and Smith normal form.
//! * [`gn`]: the construction of `G_n` and its certificates.
//! * [`imaginaries`]: decision procedures for the basic coset/conjugacy relations.
//! * [`cli`]: the command-line front end.

pub mod abelianize;
pub mod cli;
pub mod error;
pub mod gn;
pub mod imaginaries;
pub mod report;
pub mod stallings;
pub mod whitehead;
pub mod word;

pub use error::{Error, Result};
pub use gn::{build_gn, Convention, GnConstruction, SurfaceRewrite};
pub use report::{Status, VerificationReport};
pub use stallings::SubgroupGraph;
pub use whitehead::Automorphism;
pub use word::{Alphabet, CyclicWord, Letter, Word};

/// Exponent vector with machine-width entries.
pub type IntVector = abelianize::IntVector<i64>;
/// Integer matrix with checked machine-width entries.
pub type IntMatrix = abelianize::IntMatrix<i64>;
/// Arbitrary-precision integer matrix.
pub type BigIntMatrix = abelianize::IntMatrix<num_bigint::BigInt>;
