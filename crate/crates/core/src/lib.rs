//! Finite-model computations for d-frames (point-free bitopological spaces).

pub mod corpus;
pub mod density;
pub mod dframe;
pub mod document;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod miner;
pub mod set;
pub mod subdlocale;

pub use dframe::{Axiom, AxiomReport, DFrame, DFrameCandidate, DFrameHom};
pub use error::{Error, Result};
pub use frame::{Frame, FrameHom, Nucleus, Sublocale};
pub use lattice::{Lattice, Poset, ProductOrder};
pub use set::{BitMatrix, ElemSet, PairSet};
pub use subdlocale::{DSLattice, SubDLocale};
