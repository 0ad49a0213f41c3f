pub mod diagnostics;
pub mod discovery;
pub mod error;
pub mod groups;
pub mod numkernel;
pub mod transforms;

pub use error::{Error, Result};
