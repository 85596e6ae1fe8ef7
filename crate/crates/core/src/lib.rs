//! Grassmann, affine Grassmann and Schubert divisor codes over finite
//! fields, with exact verification of their automorphism groups.

pub mod autgroups;
pub mod codes;
pub mod error;
pub mod exterior;
pub mod gf;
pub mod grassgeo;
pub mod incidence;
pub mod linalg;
pub mod perm;
pub mod report;
pub mod verify;

pub use codes::LinearCode;
pub use error::{Error, Result};
pub use exterior::{ExteriorVector, MultiIndex};
pub use gf::{Field, FieldAutomorphism, FieldElement, FieldSpec};
pub use grassgeo::{Grassmannian, Subspace};
pub use linalg::{gl_order, Matrix, SemilinearMap};
pub use perm::{group_order, matrix_group_order, PermGroup, Permutation};
pub use report::Check;
pub use verify::Suite;
