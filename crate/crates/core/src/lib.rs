pub mod error;
pub mod exactla;

pub use error::{Error, Result};
pub mod galg;
pub mod gmod;
pub mod homcx;
pub mod oracle;
pub mod resolve;
pub mod sinf;
pub mod zoo;
