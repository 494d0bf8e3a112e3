//! Std companion of `hexpack-core`: JSON and SVG formats, the `hexpack`
//! command line and its HTTP API.

pub mod api;
pub mod cli;
pub mod json;
pub mod serve;
pub mod svg;
pub mod vectors;
