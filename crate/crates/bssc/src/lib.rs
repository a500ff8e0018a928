//! Binary subspace chirp (BSSC) codebooks and their reconstruction.
//!
//! BSSCs are Grassmannian line codebooks in `N = 2^m` dimensions whose
//! entries are zero or scaled fourth roots of unity. Each codeword is a
//! binary chirp living on a `2^r`-point coset of GF(2)^m selected by a
//! rank-`r` subspace; the family is indexed by binary symplectic data and
//! doubles as the set of columns of structured Clifford operators, or
//! equivalently as eigenbases of maximal stabilizers of the Heisenberg-Weyl
//! group.
//!
//! The crate provides:
//! - bit-packed GF(2) linear algebra ([`gf2`]),
//! - the binary symplectic group in Bruhat-generator form ([`symplectic`]),
//! - Heisenberg-Weyl operators with fast vector action ([`pauli`]),
//! - structured Clifford operators ([`clifford`]),
//! - exact codeword synthesis and codebook enumeration ([`codebook`]),
//! - single- and multi-user reconstruction ([`decoder`]),
//! - reproducible random-access Monte-Carlo experiments ([`sim`]),
//! - the command-line surface ([`cli`]).

pub mod cli;
pub mod clifford;
pub mod codebook;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod sim;
pub mod symplectic;

pub use error::{Error, Result};
