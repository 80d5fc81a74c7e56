//! Exact computations with rational curves of degree at most 3 on the
//! Grassmannian Gr(2,5) and on its linear sections.
//!
//! Everything is exact: rationals for geometric statements, prime fields
//! for exhaustive enumeration.

pub mod binform;
pub mod curves;
pub mod error;
pub mod ffenum;
pub mod field;
pub mod grassmann;
pub mod interp;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod sections;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals, Q};
