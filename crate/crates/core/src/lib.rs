//! Finite group calculations driven by validated multiplication tables, plus
//! surface group words, mapping class group twist moves, and a breadth-first
//! decision procedure answering whether the kernel of a homomorphism from a
//! surface group to a finite group contains an element representable by a
//! simple closed curve.
//!
//! The crate is `no_std` + `alloc`; everything is deterministic so that
//! reports built on top of it are reproducible byte for byte.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod construct;
pub mod decider;
pub mod format;
pub mod group;
pub mod heisenberg;
pub mod hom;
pub mod homology;
pub mod iso;
pub mod subgroup;
pub mod tower;
pub mod twist;
pub mod word;

pub use group::{BuildError, FiniteGroup, GroupElement};
pub use word::SurfaceWord;
