pub mod bridge;
pub mod census;
pub mod cli;
pub mod error;
pub mod field;
pub mod line;
pub mod linalg;
pub mod sphere;
pub mod structures;

pub use error::{Error, Result};
pub use field::{ExtScalar, FieldKind, FieldSpec, Scalar};
pub use line::{HLine, PlueckerPoint};
pub use sphere::{LiePoint, OrientedSphere};
