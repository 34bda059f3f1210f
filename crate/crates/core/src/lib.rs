//! CSS codes, their Tanner cone-complexes, and finite covers of those complexes.

pub mod codes;
pub mod complexes;
pub mod covers;
pub mod distance;
pub mod error;
pub mod f2la;
pub mod families;
pub mod groups;
pub mod io;
pub mod products;

pub use codes::{Cell, ClassicalCode, CodeParams, CssCode, Distance, TannerGraph};
pub use complexes::{ConeComplex, Presentation};
pub use covers::{HomOptions, RegularLift, VoltageAssignment};
pub use distance::{DistanceReport, Side, UpperOptions};
pub use error::{Error, Result};
pub use f2la::{BitMatrix, BitVec, RowReducer};
pub use families::{FamilySpec, FamilyTag};
pub use groups::{FiniteGroup, GroupSpec};
pub use products::{hpc, VoltagedCode};
