//! Evaluation codes from projective surfaces over finite fields.

pub mod bounds;
pub mod code;
pub mod error;
pub mod families;
pub mod field;
pub mod format;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod seed;
pub mod surface;
mod upoly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{make_field, Elem, FieldElement, FieldEmbedding, FiniteField};
pub use geometry::ProjPoint;
pub use linalg::Matrix;
pub use poly::{HomogPoly, Monomial};
pub use surface::{Family, Parametrization, Surface};
