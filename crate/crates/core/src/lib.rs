//! Alexander and twisted Alexander polynomials of knot diagrams.
//!
//! Three routes compute the same invariant and are meant to be checked
//! against each other:
//!
//! * determinants of the face/crossing Alexander matrix ([`alexander::alexander_det`],
//!   [`twisted::twisted_det`]),
//! * Kauffman's state sum over markers ([`alexander::kauffman_state_sum`]),
//! * dimer partition functions of Kasteleyn-signed plane bipartite graphs
//!   ([`alexander::alexander_dimer`], [`twisted::twisted_dimer`]). The twisted
//!   route blows each incidence edge up into a `K_{n,n}` gadget and removes the
//!   resulting edge crossings with edge tripling and butterfly rewrites.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, graph export
//! and the command line live in the `knotdimer` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alexander;
pub mod dimer;
pub mod error;
pub mod knot;
pub mod laurent;
pub mod matrix;
pub mod twisted;

pub use error::Error;
pub use knot::KnotDiagram;
pub use laurent::LaurentPoly;
pub use matrix::LPMatrix;
