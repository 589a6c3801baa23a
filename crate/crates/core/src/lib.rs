//! Exact computations for nil algebras of bounded index.
//!
//! The crate works with the free associative algebra on `m` letters, the
//! nil ideal generated by `n`-th powers, generic `n x n` matrices and their
//! invariants, and a rewriting system on words in two letters.

pub mod breduce;
pub mod cli;
pub mod commpoly;
pub mod error;
pub mod exactla;
pub mod freealg;
pub mod genmat;
pub mod nilideal;
pub mod ring;

pub use error::{Error, Result};
