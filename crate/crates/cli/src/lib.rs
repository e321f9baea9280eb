//! Command-line front end and HTTP service for the `pairquat` library.

pub mod api;
pub mod bench;
pub mod check;
pub mod cli;
pub mod json;
pub mod sampling;
pub mod server;
