//! Exact arithmetic for cubic Jordan algebras over split composition rings
//! and the Freudenthal module built on top of them: invariant forms, group
//! generators, rank, integral reduction with replayable witnesses, orbit
//! classification, and the explicit isomorphisms to integer cubes and to
//! the third exterior power of a rank-6 lattice.

pub mod census;
pub mod composition;
pub mod cubes;
pub mod error;
pub mod freudenthal;
pub mod isomorphisms;
pub mod jordan;
pub mod par;
pub mod random;
pub mod reduction;
pub mod selftest;
pub mod scalar;
pub mod structure;

pub use census::{run_census, CensusOptions, CensusRecord, CensusReport};
pub use composition::{Algebra, CompositionElement};
pub use par::ExecMode;
pub use cubes::{BinaryQuadraticForm, LabeledCube};
pub use error::{Error, Result};
pub use freudenthal::{FreudenthalElement, GroupGenerator, GroupWord};
pub use isomorphisms::{Cube, WedgeElement};
pub use jordan::{JordanElement, JordanKind, LinearMap};
pub use reduction::{
    classify_orbit, field_canonicalize, invariants, is_fundamental_discriminant, is_projective,
    lcomp_move, projective_canonicalize, projectivity, reduce_diagonal, DiagonalReduced,
    FieldCanonicalForm, InvariantVector, OrbitLabel, Projectivity, ProjectivityRoute,
};
pub use scalar::{Scalar, ScalarDomain};
pub use structure::{JordanMove, Perm3, SmithDiagonal, StructureMap};

/// Re-exported scalar types: the two supported exact domains.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
