//! Finite, exhaustively checkable models of the product–exponential
//! adjunction for sets, posets, graphs, structured graphs, ordered graphs
//! and quantale-weighted graphs.

pub mod check;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod finset;
pub mod graphs;
pub mod ordered;
pub mod quantale;
pub mod structure;
pub mod util;

pub use check::{Check, Witness};
pub use error::{Error, Result};
pub use util::Budget;
