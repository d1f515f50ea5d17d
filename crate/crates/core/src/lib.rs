//! Exact counting of solutions to embedding problems `A -> G-hat -> Z/p^nZ`
//! with elementary p-abelian kernel.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`linalg`]: F_p arithmetic and canonical RREF subspaces.
//! * [`module`], [`submodule`], [`shape`]: F_p[G]-modules, lengths, filtrations, decompositions.
//! * [`extension`]: the groups `G(A, c)`, canonical forms and isomorphism types.
//! * [`environment`]: a synthetic parameterizing module with its index functional.
//! * [`counting`]: closed-form counts, solvability, realization operators.
//! * [`oracle`]: brute-force enumerators and verifiers for all of the above.

pub mod counting;
pub mod environment;
pub mod error;
pub mod extension;
pub mod field;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod prime_power;
pub mod ring;
pub mod shape;
pub mod submodule;

pub use counting::Count;
pub use environment::{Environment, EnvironmentSpec};
pub use error::{Error, Result};
pub use extension::{CanonicalExtension, ExtensionGroup, ExtensionSpec, GroupElement};
pub use module::{Module, ModuleElement};
pub use prime_power::PrimePower;
pub use ring::RingElement;
pub use shape::ModuleShape;
pub use submodule::{Filtration, Submodule};
