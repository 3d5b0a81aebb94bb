//! Exact computer algebra for pro-unipotent fundamental groups truncated at
//! a finite nilpotency class.
//!
//! * [`linalg`]: exact rational sparse linear algebra.
//! * [`lie`]: free nilpotent Lie algebras (Hall basis) and graded Lie algebras.
//! * [`bch`]: the group law on `exp(g)` via the Baker–Campbell–Hausdorff series.
//! * [`presentation`]: quadratic presentations from cohomology data.
//! * [`weights`]: Frobenius weight decompositions and weight filtrations.
//! * [`cosimplicial`]: cosimplicial vector spaces and algebras, Čech and bar
//!   constructions, Alexander–Whitney products, Hodge filtration.
//! * [`cli`]: document formats and report generation for the `malcev` binary.

pub mod linalg;
pub mod lie;
pub mod bch;
pub mod poly;
pub mod presentation;
pub mod weights;
pub mod cosimplicial;
pub mod cli;
