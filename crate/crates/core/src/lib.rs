//! Self-similar tilings of the line from primitive substitutions, with
//! exact arithmetic in the inflation field and tools for deciding pure
//! discrete spectrum.

// Field elements hold an `Arc` to a field whose cached root approximation
// sits behind a lock; hashing and equality never read it.
#![allow(clippy::mutable_key_type)]

pub mod algebraic;
pub mod substitution;
pub mod tiling;
pub mod coincidence;
pub mod generators;
