//! JSON formats, command-line front end and property suite for
//! [`ginv_core`].

pub mod cli;
pub mod json;
pub mod suite;
