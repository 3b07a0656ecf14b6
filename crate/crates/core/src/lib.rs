//! Desk-scale laboratory for the circle-method treatment of sums of four squares of
//! sums of three positive cubes.

pub mod arcs;
pub mod arith;
pub mod census;
pub mod cli;
pub mod config;
pub mod cubes;
pub mod error;
pub mod expsum;
pub mod genfn;
pub mod local;
pub mod main_term;
pub mod ntt;
pub mod oscillatory;
pub mod params;
pub mod quad;
pub mod residue;
pub mod singular_integral;
pub mod rn;
pub mod smooth;
pub mod w2;
pub mod weights;

pub use error::{Error, Result};
