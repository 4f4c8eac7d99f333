#![no_std]
extern crate alloc;

pub mod crepant;
pub mod error;
pub mod fan;
pub mod inertia;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod num;
pub mod ring;

pub use error::{Error, Result};
