//! Exact replay of the numerical steps showing that a compact hyperkähler
//! 4-fold has no nontrivial automorphism acting trivially on rational
//! cohomology.
//!
//! - [`exact`]: reduced big-integer fractions, square detection, quadratics.
//! - [`topology`]: Betti tables, Chern numbers from `(b₂, b₃)`, Salamon relation.
//! - [`riemann_roch`]: the Riemann–Roch quadratic in λ and its discriminant filter.
//! - [`quotient`]: fixed-locus profiles and Betti transport to the partial resolution.
//! - [`pipeline`]: candidate files, certificates and reports.

pub mod exact;
pub mod pipeline;
pub mod quotient;
pub mod riemann_roch;
pub mod topology;

pub use exact::Rational;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
