//! Stratified simplicial complexes, perversity intersection homology over the
//! integers, simplicial blow-ups, finite group quotients, and a verification
//! harness over a small fixture library.

// index loops mirror the matrix notation throughout
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod blowup;
pub mod chain;
pub mod coeff;
pub mod complex;
pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod ih;
pub mod io;
pub mod matrix;
pub mod perversity;
pub mod reduce;
pub mod simplex;
pub mod triangulations;
pub mod verify;

pub use chain::Chain;
pub use coeff::Int;
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use simplex::{Label, Simplex, Vertex};
