//! Formal-language workbench for bounded languages, semilinear sets,
//! reversal-bounded counter machines, finite-index ETOL systems and matrix
//! grammars, counting series, and commutative regularization.
//!
//! Every construction in this crate can be cross-checked against the
//! brute-force oracle [`foundation::enumerate`].

pub mod automata;
pub mod commutative;
pub mod counter;
pub mod error;
pub mod etol;
pub mod format;
pub mod foundation;
pub mod matrix;
pub mod semilinear;
pub mod series;
pub mod vecautomata;

pub use error::{Error, Result};
pub use foundation::{
    comm_equivalent, decompositions, enumerate, parikh, sym, Alphabet, Budget, LanguageSpec,
    ParikhVector, Symbol, Word,
};
