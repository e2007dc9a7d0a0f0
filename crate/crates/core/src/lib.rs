//! Properties of finite binary relations, exhaustive censuses of which
//! property combinations occur, and the implication laws mined from them.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod lawmine;
pub mod property;
pub mod redundancy;
pub mod relation;
pub mod witness;

pub use error::{Error, Result};
pub use property::PropertyId;
pub use relation::Relation;
