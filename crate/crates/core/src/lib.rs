//! Exact pairing mappings on integer lattices: evaluation, inversion,
//! polynomial fitting, independent enumeration oracles, related Diophantine
//! equations and packed triangular storage.

pub mod diophantine;
pub mod fitter;
pub mod form;
pub mod inverses;
pub mod lattice;
pub mod linalg;
pub mod mappings;
pub mod oracle;
pub mod region;
pub mod storage;

pub use fitter::{fit, fit3d, fit_and_validate, FitError, FitReport, SamplePoint, SamplePoint3};
pub use form::{CubicForm3D, QuadForm};
pub use inverses::{invert, InvError};
pub use lattice::{Int, LatticePoint2, LatticePoint3, LatticePointK, Nat, Rational};
pub use mappings::{builtin, ImageKind, MapError, MapId, PiecewiseMapping};
pub use oracle::{enumerate, verify_bijection, EnumerationTrace, OracleError};
pub use region::{LatticeMap, RegionPredicate};
pub use storage::{PackedSimplex3, PackedTriangular, StorageError};
