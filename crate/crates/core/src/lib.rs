pub mod bipolar;
pub mod cli;
pub mod cobordism;
pub mod cover;
pub mod dinv;
pub mod error;
pub mod exact;
pub mod family;
pub mod report;
pub mod seifert;

pub use error::{Error, Result};
