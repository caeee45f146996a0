//! Standard-library companion to `bmx-core`: catalogue and matroid file
//! formats, a multi-threaded bootstrap driver, and the tiered
//! verification runs behind the `bmx` binary.

pub mod files;
pub mod parallel;
pub mod verify;

pub use bmx_core;
