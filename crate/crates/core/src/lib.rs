//! Grounded set families and their Hopf monoid: join, restriction and
//! contraction, brute-force and cancellation-free antipodes for lattices of
//! order ideals and simplicial complexes, and the chain-gang Hopf algebra
//! with its character group.

pub mod chaingang;
pub mod error;
pub mod io;
pub mod options;
pub mod poset;
pub mod sf;
pub mod simp;

pub use error::{Error, Result};
pub use options::Options;
pub use poset::{Fracturing, Poset};
pub use sf::{FormalSum, GroundSet, GroundedSetFamily, Label, SetComposition, SetPartition, SubsetMask};
