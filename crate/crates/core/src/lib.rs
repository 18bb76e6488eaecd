//! Exact graded homological algebra over quotients of polynomial rings.

pub mod error;
pub mod field;
pub mod gb;
pub mod hom;
pub mod homology;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod psi;
pub mod ring;
pub mod stable;
pub mod syz;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, PolyRing, Term, Vector};
pub use matrix::Matrix;
pub use ring::{QuotientRing, Ring};
pub use module::{Module, Morphism, PresentedModule};
