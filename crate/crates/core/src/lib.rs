#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod binom;
pub mod completion;
pub mod dicke;
pub mod error;
pub mod estimation;
pub mod gate;
pub mod haar;
pub mod linalg;
pub mod optimality;
pub mod qubit;
pub mod restricted;
pub mod tensor;

pub use error::{Error, Result};
