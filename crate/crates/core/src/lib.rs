pub mod algebra;
pub mod chains;
pub mod cli;
pub mod error;
pub mod forms;
pub mod intersect;
pub mod pushforward;
pub mod residue;
pub mod sample;
pub mod spaces;

pub use error::{Error, Result};
