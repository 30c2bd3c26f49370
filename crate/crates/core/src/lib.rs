//! Quadratic forms over GF(2), their orthogonal groups, and the mod-2
//! quadruple-point invariant of surface mapping classes.

pub mod error;
pub mod gf2;
pub mod mcg;
pub mod oracle;
pub mod orthogroup;
pub mod quadform;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use mcg::{GeneratorWord, MappingClass, SurfacePinkallForm, Token};
pub use oracle::{democratic_arf, filter_full_linear_group, GroupTable, Limits};
pub use orthogroup::{
    decompose, enumerate_group, is_orthogonal, transvection, Decomposition, OrthogonalMap,
    UMapPartition,
};
pub use quadform::{hyperbolic_gram, QuadraticForm, SymplecticBasis};
