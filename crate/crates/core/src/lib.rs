//! Mod-2 certification of involution generating sets for mapping class
//! groups of punctured nonorientable surfaces.
//!
//! Everything here is `no_std` with `alloc`. File formats, the CLI and the
//! parallel runner live in the `mcgcert` crate.

#![no_std]

extern crate alloc;

pub mod certify;
pub mod chart;
pub mod gf2;
pub mod params;
pub mod perm;
pub mod rep;
pub mod word;
pub mod suite;
