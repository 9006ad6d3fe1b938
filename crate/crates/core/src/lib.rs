pub mod arcdiag;
mod error;

pub mod caps;
pub mod cli;
pub mod coxeter;
pub mod gwd;
pub mod path;
pub mod patterns;
mod rational;
pub mod reproduce;
pub mod search;
pub mod word;

pub use error::{Error, Result};
