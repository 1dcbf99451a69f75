//! Sweeps, verification and file output on top of `unot-core`.

pub mod format;
pub mod real;
pub mod sweep;
pub mod verify;
