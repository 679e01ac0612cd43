//! Exact weight distributions of linear codes over finite fields.
//!
//! * [`field`], [`matrix`]: GF(q) arithmetic, GF(q) matrices, exact rational
//!   linear algebra and truncated Pascal matrices.
//! * [`code`]: linear codes, exhaustive enumeration, the MacWilliams
//!   transform and code parameters.
//! * [`census`]: column-subset rank census of parity-check matrices and the
//!   counting identity it satisfies.
//! * [`moments`]: the truncated-Pascal and Pless moment systems, solving them
//!   from partial knowledge of the distribution.
//! * [`closed_forms`]: MDS, near-MDS, almost-MDS and extremal doubly-even
//!   self-dual distributions.
//! * [`io`], [`cli`]: file formats and the command-line front end.

pub mod census;
pub mod cli;
pub mod closed_forms;
pub mod code;
pub mod field;
pub mod io;
pub mod matrix;
pub mod moments;
pub mod specimens;

pub use code::{CodeParameters, LinearCode, WeightDistribution};
pub use field::{Field, FieldElement};
pub use matrix::{CodeMatrix, RationalMatrix};
pub use moments::MomentSystem;
