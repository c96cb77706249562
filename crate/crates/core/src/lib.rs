//! Exact characteristic-class calculus on products of projective spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] and [`rational`]: exact truncated power series.
//! * [`ring`]: truncated polynomial rings `S[x_1..x_k]/(x_i^{d_i+1})`, the
//!   cohomology and K-theory rings of `P^{d_1} x ... x P^{d_k}`.
//! * [`chern`]: virtual bundles stored by total Chern class, Newton
//!   identities, additive and multiplicative extensions of a series.
//! * [`models`]: the additive (Chow) and multiplicative (K-theory) models,
//!   their pullbacks and pushforwards, twisting by an invertible series, the
//!   Chern character as the universal morphism, and the diagonal solver.
//! * [`rr`]: Riemann-Roch verification and closed-form consequences.
//! * [`verify`]: randomized and grid-based verification suites.
//!
//! ```
//! use rrcalc::models::{pushforward, tangent_class, MorphismDescriptor, TheoryModel};
//!
//! let chow = TheoryModel::chow();
//! let tangent = tangent_class(&chow, 2);
//! assert_eq!(tangent.total_chern().to_string(), "1 + 3*h + 3*h^2");
//! let euler = pushforward(
//!     &chow,
//!     &MorphismDescriptor::point_projection(2),
//!     &tangent.chern_class(2),
//! )?;
//! assert_eq!(euler.to_string(), "3");
//! # Ok::<(), rrcalc::Error>(())
//! ```

pub mod chern;
pub mod error;
pub mod models;
pub mod rational;
pub mod ring;
mod ring_parse;
pub mod rr;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use num::{BigInt, BigRational};
pub use ring::{Monomial, RingElement, RingSpec, ScalarDomain};
pub use series::{make_standard_series, StandardSeries, TruncatedSeries};
