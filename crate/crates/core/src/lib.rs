pub mod error;
pub mod geometry;
pub mod exact;
pub mod poly;
pub mod profile;
pub mod scenario;
pub mod verify;

pub use error::{Error, Result};
