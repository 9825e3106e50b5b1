//! Exact arithmetic for finite group algebras with oriented involutions:
//! normality of the oriented star, LC/SLC classification, structural
//! conditions, and an exhaustive sweep over small groups.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod group;
pub mod harness;
pub mod morphisms;
pub mod scalar;

pub use algebra::AlgebraElement;
pub use error::{AlgebraError, ClassifyError, GroupError, HarnessError, MorphismError};
pub use group::{FiniteGroup, SubgroupMask};
pub use morphisms::{Involution, OrientedInvolutionSpec, Orientation};
pub use scalar::{Field, FieldScalar};
