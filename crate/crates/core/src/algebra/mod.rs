//! Finite fields, univariate and bivariate polynomials.

pub mod bivariate;
pub mod factor;
pub mod field;
pub mod poly;

pub use bivariate::{BiPoly, BiRing};
pub use factor::{count_irreducible, Factorization};
pub use field::{Field, FieldSpec, ResidueField};
pub use poly::{cmp_deg_lex, Poly, PolyRing};
