//! Quantum homology of symplectic manifolds over the Novikov ring with
//! Z/2 coefficients, and the Seidel elements of Hamiltonian loops.
//!
//! The crate is layered bottom-up: [`gamma`] builds the coefficient group
//! Γ, [`novikov`] does energy-truncated arithmetic in Λ, [`quantum`] holds
//! the ring QH_*(M), [`seidel`] covers units, τ and loops, and [`catalog`]
//! ships the worked examples and the spec-file format.

pub mod catalog;
pub mod gamma;
pub mod intlattice;
pub mod literal;
pub mod novikov;
pub mod num;
pub mod quantum;
pub mod sample;
pub mod seidel;
pub mod verify;

pub use catalog::{builtin, load_spec_file, load_spec_str, resolve, serialize_spec, SpecBundle};
pub use gamma::{GammaElement, GammaGroup, SectionClass, SphereClassLattice};
pub use novikov::NovikovSeries;
pub use num::{Energy, Rational};
pub use quantum::{QhElement, RingSpec};
pub use seidel::{InvertOutcome, LoopElement, OrderBound};
