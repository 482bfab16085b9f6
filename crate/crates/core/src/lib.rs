//! Mod-2 cohomology of the holomorph of a cyclic 2-group and its
//! distinguished subgroups, computed from minimal free resolutions over the
//! group algebra.
//!
//! The pipeline: build a finite 2-group from its presentation ([`groups`]),
//! resolve the trivial module minimally over `F2[G]` ([`resolution`]), read
//! Betti numbers off the ranks, multiply classes by chain-map lifting and
//! pull them back along subgroup inclusions and quotient surjections
//! ([`cohomology`]), and compare everything against graded rings given by
//! generators and relations ([`presented_ring`]). All linear algebra is
//! bit-packed GF(2) ([`gf2`]) with fixed pivoting, so every coordinate in
//! sight is reproducible.

pub mod cohomology;
pub mod error;
pub mod gf2;
pub mod groups;
pub mod presented_ring;
pub mod resolution;

pub use error::{Error, Result};
