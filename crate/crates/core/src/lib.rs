//! Square-tiled surfaces, the affine shear action of the free group on them,
//! warped-cone level graphs, classical expander families, and exact or
//! certified checks of expansion and of discrete fundamental groups.
//!
//! With the default `parallel` feature the heavy loops run on rayon;
//! without it the same code runs sequentially. Every reduction uses fixed
//! chunk boundaries, so both builds produce identical numbers.

pub mod classical;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod graph;
pub mod io;
pub mod pi1;
pub mod rng;
pub mod spectral;
pub mod surface;
pub mod warpgraph;

pub use error::{Error, Result};
