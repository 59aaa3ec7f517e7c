//! Executable lower-bound machinery for universal point sets.
//!
//! A point set `U` is *n-universal* when every n-vertex planar graph admits a
//! crossing-free straight-line embedding onto points of `U`. This crate makes
//! the pieces of the quadratic lower bound for uniformly random point sets
//! concrete and checkable:
//!
//! * [`geometry`]: exact lattice predicates (orientation, segment conflicts,
//!   containment, bounding boxes).
//! * [`graphs`]: the nested-triangle gadget graph, random maximal planar
//!   graphs and structural validation.
//! * [`embedder`]: embedding verification, exhaustive embeddability search and
//!   the shift-method grid drawing.
//! * [`witness`]: extraction of a monotone subset from any drawing of the
//!   gadget, and the matching non-universality certificate.
//! * [`permutations`]: `perm(U)`, LIS/LDS, the exact monotone probability
//!   oracle and the union-bound / threshold evaluators.
//! * [`montecarlo`]: seeded, worker-count independent sampling experiments.
//! * [`io`]: edge-list and point-set file formats.

pub mod embedder;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod io;
pub mod montecarlo;
pub mod permutations;
pub mod witness;

mod exec;

pub use error::{Error, Result};
pub use exec::Execution;
