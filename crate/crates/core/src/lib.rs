// Errors carry the exact rationals and points that caused them.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod algebra;
pub mod lattice;
pub mod params;
pub mod surface;
pub mod connection;
pub mod convolution;
pub mod sampling;
pub mod engine;
pub mod report;
pub mod verify;
pub mod cli;
