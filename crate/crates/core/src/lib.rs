//! Weight cones of mod-p automorphic forms on the stack of Sp(2n)-zips.
//!
//! All arithmetic is exact: weights and cones use arbitrary-precision
//! integers and rationals, polynomials live over F_p.

pub mod catalog;
pub mod cone;
pub mod fpoly;
pub mod linalg;
pub mod rootdata;
pub mod sections;
pub mod weyl;

pub use cone::{ConeError, ConeRepr, GeneratedCone, HalfspaceSystem, Weight};
