//! The deformed group ring and the graded rings presented by it.

pub mod chow;
pub mod deformed;

pub use chow::*;
pub use deformed::RingElement;
