//! Kochen-Specker proofs and GHZ paradoxes built from the N-qubit Pauli group.
//!
//! The crate is organised bottom-up:
//!
//! * [`pauli`] exact phase-tracked Pauli algebra with a dense oracle,
//! * [`ks`] observable/context systems and their value-assignment contradictions,
//! * [`search`] reconstruction of context systems by backtracking,
//! * [`states`] joint eigenstates, Bell decompositions and measurements,
//! * [`parity`] eigenspace projectors, basis tables and parity proofs.

pub mod dense;
pub mod error;
pub mod gf2;
pub mod ks;
pub mod parity;
pub mod pauli;
pub mod reproduce;
pub mod search;
pub mod stabilizer;
pub mod states;

pub use error::{Error, Result};
pub use ks::{Context, ContextSystem};
pub use pauli::{product_of, Letter, PauliWord, Phase};
pub use stabilizer::SignedStabilizerGroup;
