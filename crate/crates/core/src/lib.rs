//! Morphic words, iterative monomial algebras, and the machinery needed to
//! certify graded nilpotence of such algebras with exact arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, the terminal, or text report formats lives in the `morphalg`
//! companion crate.
//!
//! Modules:
//!
//! * [`words`]: alphabets, morphisms, fixed points, prefix streams, factor
//!   indices and combinatorial statistics of words.
//! * [`grading`]: weight-sum sets, arithmetic progressions and the graded
//!   nilpotence certifier for iterative algebras.
//! * [`monalg`]: exact noncommutative polynomials modulo monomial ideals,
//!   freeness and nilpotence checks.
//! * [`interleave`]: the universal difference sequence and the interleaved
//!   word whose algebra is graded nilpotent but contains a free subalgebra.
//! * [`rowen`]: Thue-Morse shift operators at finite truncation.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod grading;
pub mod interleave;
pub mod monalg;
pub mod rowen;
pub mod words;

pub use grading::{Certificate, Verdict, WeightVector};
pub use monalg::{AlgebraView, NcPolynomial};
pub use words::{Alphabet, Letter, Morphism, PrefixStream, Word};
