pub mod arith;
pub mod bung;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod powerseries;
pub mod rootsys;
pub mod zeta;

pub use error::{Error, Result};
