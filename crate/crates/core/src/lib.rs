//! Finite-scale category theory toolkit.
//!
//! Everything here operates on explicitly presented finite data: categories
//! with total composition tables, set-valued presheaves with tabulated
//! actions, and morphism classes given by finite generator lists. On top of
//! that substrate the crate builds the classical lifting-property machinery:
//!
//! - [`fincat`] — finite categories, functors, natural transformations, and
//!   windowed materialization of procedurally presented categories;
//! - [`construct`] — pseudopullbacks, inserters, equifiers, and the
//!   approximate-completeness checker;
//! - [`presheaf`] — tabular presheaves, Yoneda, formal colimits of
//!   representables, and the restricted-hom functor;
//! - [`colimits`] — finite colimits of presheaves via union-find quotients;
//! - [`lifting`] — exhaustive lifting-problem solving, the box/perp
//!   relations, and cellular-certificate verification;
//! - [`soa`] — the one-step pushout construction and bounded small object
//!   argument with solved-triple pruning;
//! - [`ofs`] — codiagonals, orthogonal factorization, and reflections onto
//!   orthogonality classes;
//! - [`ordsimp`] — ordinal windows, simplices, the symmetric 1-simplex, and
//!   symmetrization towers;
//! - [`corpus`] — the deterministic verification corpus used by the CLI and
//!   the acceptance suite.
//!
//! All values are immutable after validation and every operation is a pure
//! function of its inputs, so results are reproducible byte for byte.

pub mod colimits;
pub mod construct;
pub mod corpus;
pub mod fincat;
pub mod io;
pub mod lifting;
pub mod ofs;
pub mod ordsimp;
pub mod presheaf;
pub mod soa;

pub use fincat::{FinCategory, Functor, MorId, NatTransformation, ObjId};
pub use lifting::{Diagonal, LiftingProblem, SearchLimit};
pub use presheaf::{PresheafMap, TabularPresheaf};
pub use soa::{BoundednessConfig, FactorizationCertificate, MorphismClassSource};
