//! Exact computation with finite groupoids and partial group actions.

pub mod algebra;
pub mod congruence;
pub mod doc;
pub mod error;
pub mod fixtures;
pub mod functors;
pub mod fwords;
pub mod groupoid;
pub mod limits;
pub mod paction;
pub mod reduced;
pub mod sample;
pub mod ugroup;
pub mod violation;

pub use error::{Error, Result};
