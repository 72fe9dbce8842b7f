//! Exact computations with finitely presented graded modules over weighted
//! polynomial rings `k[x_1, ..., x_n]` with `k` a prime field.
//!
//! The layers build on each other: ring arithmetic ([`field`], [`monomial`],
//! [`poly`], [`module`]), the Groebner engine ([`groebner`], [`submodule`],
//! [`presentation`]), resolutions and derived functors ([`resolution`],
//! [`homology`]), the numerical invariants ([`invariants`]) and the
//! depth/ω criteria ([`checker`]). [`oracle`] holds brute-force
//! computations that share no code with the Ext pipeline and are used to
//! cross-check it.

pub mod checker;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod resolution;
pub mod ring;
pub mod submodule;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use module::{FreeModule, Term, Vector};
pub use monomial::{Monomial, MonomialOrder, ORDER_NAME};
pub use poly::Polynomial;
pub use presentation::PresentedModule;
pub use resolution::{BettiTable, GradedResolution};
pub use ring::{GradedRing, Limits, RingRef};
pub use submodule::{Ideal, Submodule};

/// Engine version echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
