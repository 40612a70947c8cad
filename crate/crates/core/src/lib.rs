pub mod arith;
pub mod braided_fock;
pub mod cli;
pub mod compat;
pub mod dynamics;
pub mod error;
pub mod metasym;
pub mod qgroup;
pub mod qubit_core;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
