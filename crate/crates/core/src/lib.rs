//! Equivalence of rank-metric matrix codes over finite fields.
//!
//! The crate is layered bottom-up: [`field`] (arithmetic in `F_q` and polynomial
//! factoring), [`matrix`] (dense exact linear algebra), [`code`] (matrix codes and
//! expanded `F_{q^m}`-linear codes), [`algebra`] (radical, center, idempotent
//! decompositions), [`equiv`] (conductors, stabilizers and the solvers),
//! [`reduction`] (monomial equivalence to matrix-code equivalence), [`oracle`]
//! (brute-force references), [`io`] (text file formats) and [`cli`].

pub mod algebra;
pub mod cli;
pub mod code;
pub mod equiv;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod reduction;
