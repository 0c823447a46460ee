//! Curtis-Tits amalgams of SL2/SL3 groups over finite fields.
//!
//! The crate builds concrete matrix amalgams on triangle-free simply-laced
//! Dynkin diagrams, classifies them up to isomorphism through the invariant
//! that a pointing induces on the fundamental group of the diagram, decides
//! orientability, and certifies non-collapse with explicit completions into
//! `SL_n(q)` and `SL_n(GF(q)[t, t^-1])`.
//!
//! Entry points:
//! - [`field::FieldCtx`] - exact GF(p^m) arithmetic,
//! - [`diagram::Diagram`] - diagram parsing and spanning structure,
//! - [`classify::enumerate_classes`] - the isomorphism classification,
//! - [`amalgam::build_amalgam`] - concrete matrix amalgams from pointings,
//! - [`completion`] - explicit completion witnesses,
//! - [`cli::run`] - the batch interface used by the `ctamalg` binary.
//!
//! The `examples/` directory contains one runnable example per capability.

pub mod amalgam;
pub mod classify;
pub mod cli;
pub mod completion;
pub mod diagram;
pub mod error;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod pairs;
pub mod path_group;
pub mod presentation;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
