//! Symbolic normal forms for closed paths at vertex 0.

pub mod engine;
pub mod expr;
pub mod path;
pub mod poly;

pub use engine::{c_lemma_correction, c_lemma_k1, c_word, RewriteKernel};
pub use expr::{NcExpr, Sym, SymFamily};
pub use path::{parse_path, random_closed_path, Kind, Letter, PathWord};
pub use poly::{Poly, RatFn};
