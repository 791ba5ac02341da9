//! Exact computer algebra for two Hopf algebras built on rooted trees.
//!
//! * [`ck_hopf`]: the Connes-Kreimer algebra `H_R` (polynomials in trees,
//!   admissible-cut coproduct, natural growth `N`, the cocycle `L`).
//! * [`gl_hopf`]: the Grossman-Larson algebra `A` (tree basis, grafting
//!   product, cocommutative coproduct).
//! * [`lie_l1`]: the Lie algebra `L¹` and its isomorphism with the
//!   primitives of `A`.
//! * [`operators`]: the operators `N` and `M` on `A` and the elements `x_k`.
//! * [`dual`]: the degree-truncated dual of `A` and the transpose of `M`.
//! * [`verify`]: exhaustive low-degree verification suites.
//!
//! All arithmetic is over the rationals and exact.

pub mod ck_hopf;
pub mod cli;
pub mod dual;
pub mod error;
pub mod exactlin;
pub mod gl_hopf;
pub mod lie_l1;
pub mod operators;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use exactlin::{LinComb, Rational};
pub use trees::{Forest, Tree};
