pub mod error;
pub mod hmm;
pub mod info;
pub mod listdecode;
pub mod midiff;
pub mod numeric;
pub mod ordering;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use info::{Channel, Probability};
