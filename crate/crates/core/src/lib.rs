//! Classification of linear codes over small finite fields up to linear
//! isometry.
//!
//! Codes are handled as multisets of points in a projective space. New codes
//! of dimension `k + 1` are built from `k`-dimensional parents by enumerating
//! the integer points of a constraint system (see [`extender`]), isomorphic
//! copies are removed with an exact canonical form (see [`canon`]), and the
//! [`classify`] driver runs this dimension by dimension.

pub mod archive;
pub mod canon;
pub mod classify;
pub mod code;
pub mod extender;
pub mod galois;
mod linalg;
pub mod tables;

pub use archive::{ArchiveError, CodeArchive};
pub use canon::{CanonError, CanonicalSignature, InvariantKey};
pub use classify::{ClassificationResult, ClassificationTask, ClassifyError, WeightSpec};
pub use code::{CodeError, DualWeightDistribution, GeneratorMatrix, LinearCode, WeightEnumerator};
pub use extender::{Budget, ExtensionError, ExtensionProblem, WeightSet};
pub use galois::{Field, GaloisError, Hyperplane, ProjectivePoint, ProjectiveSpace};
