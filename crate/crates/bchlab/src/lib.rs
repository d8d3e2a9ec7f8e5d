//! Library side of the `bchlab` command-line tool.
//!
//! The binary is a thin shell; the reproduction grid lives here in [`repro`]
//! so the acceptance test suite can run exactly the claims the `repro-all`
//! subcommand runs, with the same pass/fail semantics.

pub mod repro;
