//! Finite group constructions that realize prescribed automorphism behavior,
//! together with the machinery needed to verify them by computation.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure: search
//! deadlines arrive as abort callbacks and randomness as caller-supplied RNGs.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aut;
pub mod class2;
pub mod constructions;
pub mod error;
pub mod fp;
pub mod freenil;
pub mod group;
pub mod number;
pub mod unitri;

pub use error::{Error, Result};
