//! Exact computations in semi-derived Ringel-Hall algebras of quivers with loops
//! over small prime fields.
//!
//! The crate builds representations and Z/2-graded complexes over `F_q`, multiplies
//! their classes in the semi-derived Hall algebra, realizes quantum Borcherds-Bozec
//! and generalized Kac-Moody generators inside it, and checks reflection functors
//! and braid symmetries against those realizations.

pub mod context;
pub mod error;
pub mod ff;
pub mod linear;
pub mod lincomb;
pub mod qalg;
pub mod quiver;
pub mod reflect;
pub mod repfq;
pub mod scalars;
pub mod sdh;
pub mod z2cx;

pub use context::{Bounds, HallCtx, Mode};
pub use error::{HallError, Result};
pub use quiver::{CartanData, DimVec, Quiver};
pub use scalars::QuadExt;

/// Exact element of `Q(√q)`; the scalar type used throughout the crate.
pub type Scalar = QuadExt<num_rational::BigRational>;
