pub mod classify;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gammaseries;
pub mod geometry;
pub mod monodromy;
pub mod param;

pub use error::{Error, Result};
pub use param::Parameter;
