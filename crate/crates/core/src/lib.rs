//! Schubert calculus on generalized flag varieties `G/P` and the
//! two-parameter deformation of the cup product.
//!
//! * [`rootsys`]: root systems in simple-root coordinates.
//! * [`weyl`]: Weyl group elements, `W^P`, Bruhat order, projections.
//! * [`schubert`]: structure constants by localization.
//! * [`deform`]: exponent profiles and the deformed products.

pub mod cli;
pub mod deform;
pub mod error;
pub mod notation;
pub mod poly;
pub mod rootsys;
pub mod schubert;
pub mod tableio;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{CartanType, Family, Root, RootSystem, SimpleSet};
pub use schubert::{FlagVariety, StructureConstantTable};
pub use weyl::{ParabolicData, Quotient, WeylElement};
