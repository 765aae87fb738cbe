//! Exact dynamics on the character varieties of the Painlevé V and VI
//! equations, realized as affine cubic surfaces over the rationals.

pub mod cremona;
pub mod dynamics;
pub mod error;
pub mod foliation;
pub mod harness;
pub mod numeric;
pub mod representations;
pub mod surfaces;

pub use error::{Error, Result};
