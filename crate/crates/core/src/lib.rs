//! Exact computer algebra for algebraic families of the Harish-Chandra pair
//! (𝔰𝔩₂, SO(2)) over the affine line, the punctured line and ℙ¹.
//!
//! Scalars are Gaussian rationals, the base rings are ℚ(i)[x] and
//! ℚ(i)[x, x⁻¹], and every computation is exact.
//!
//! - [`arith`]: scalars, polynomials, Laurent polynomials, linear algebra.
//! - [`liefam`]: graded families, their elements, fibers and validation.
//! - [`catalog`]: the families `g(n)` and their realizations `l(n)`, `s(2k)`
//!   inside the constant family.
//! - [`classify`]: normal form of rank-3 extensions of the constant family.
//! - [`morphisms`]: the `(c, k, s)` morphism calculus and pullbacks.
//! - [`envalg`]: PBW normal ordering in `U(g(n))` and the Casimir element.
//! - [`projline`]: extensions over ℙ¹ as gluing data, splitting types and
//!   global sections.
//! - [`wire`]: the JSON file formats.

pub mod arith;
pub mod catalog;
pub mod classify;
pub mod envalg;
pub mod error;
pub mod liefam;
pub mod morphisms;
pub mod projline;
pub mod wire;

pub use arith::{GaussianRational, LaurentPoly, Poly};
pub use error::{Error, Result};
pub use liefam::{Base, FamilyElement, GradedFamily, GroupElement};
