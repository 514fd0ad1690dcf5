pub mod error;
pub mod matrix;
pub mod num;
pub mod par;
pub mod rootcore;

pub use error::{Error, Result};
pub mod enveloping;
pub mod jantzen;
pub mod klcore;
pub mod signedkl;
pub mod sigchar;
pub mod oracle;
