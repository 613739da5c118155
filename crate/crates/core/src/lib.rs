//! Continuous t-norms on `[0, 1]` as ordinal sums, with exact rational
//! arithmetic.
//!
//! * [`tnorm`]: ordinal-sum presentations, finite or generated piece by
//!   piece, with exact and truncated evaluation and axiom checks.
//! * [`signature`]: the ≺-ordered P/L/M interval signature.
//! * [`iso`]: isomorphism decisions with checkable witnesses.
//! * [`reduce_to_l1`]: the countable relational structure of a t-norm,
//!   restricted to the first `N` rationals.
//! * [`reduce_from_lo`]: the t-norm of a linear order on ω.
//! * [`cantor`]: Cantor systems and the t-norms on their removed intervals.
//! * [`presentation`] and [`cli`]: the text format and the `tnorm` command.
//!
//! ```
//! use tnorm_iso::numerics::UnitRational;
//! use tnorm_iso::tnorm::{FinitePresentation, PieceKind};
//!
//! let t = FinitePresentation::single(
//!     UnitRational::ratio(1, 3),
//!     UnitRational::ratio(2, 3),
//!     PieceKind::Product,
//! )
//! .unwrap();
//! let half = UnitRational::ratio(1, 2);
//! assert_eq!(t.eval(&half, &half), UnitRational::ratio(5, 12));
//! ```

pub mod cantor;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod iso;
pub mod numerics;
pub mod presentation;
pub mod reduce_from_lo;
pub mod reduce_to_l1;
pub mod signature;
pub mod tnorm;

pub use error::{Error, Result};
pub use numerics::{Rational, UnitRational};
pub use tnorm::{FinitePresentation, Piece, PieceKind, TNorm};
