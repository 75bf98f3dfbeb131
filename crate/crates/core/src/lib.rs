pub mod cli;
pub mod consensus;
pub mod constants;
pub mod error;
pub mod exactpoly;
pub mod manifest;
pub mod sinc;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
