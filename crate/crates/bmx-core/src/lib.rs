//! Core algorithms for simple binary matroids of low rank: GF(2) linear
//! algebra, canonical forms under the general linear group, excluded-minor
//! testing, isomorph-free catalogue generation, orbit counting, and the
//! signed-graph and graft constructions.
//!
//! Everything here is pure computation over owned data; file formats,
//! parallel drivers and the command line live in the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canon;
pub mod catalogue;
pub mod construct;
pub mod gadgets;
pub mod gf2;
pub mod matroid;
pub mod minortest;
pub mod polya;
