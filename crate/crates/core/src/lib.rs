//! Exact computations in bounded derived categories of finite-dimensional
//! bound quiver algebras: spherelike and spherical objects, their
//! asphericalities and spherical subcategories, and the quiver surgeries
//! (insertion, tacking) that produce spherelike posets.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod algebra;
pub mod rep;
pub mod derived;
pub mod spherelike;
pub mod constructions;
pub mod ktheory;
pub mod poset;
pub mod io;
pub mod corpus;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
