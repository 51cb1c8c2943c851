pub mod br;
pub mod characters;
pub mod cli;
pub mod error;
pub mod exactring;
pub mod exec;
pub mod qfamily;
pub mod report;
pub mod tableaux;
pub mod wronskian;
pub mod young;

pub use error::{Error, Result};
