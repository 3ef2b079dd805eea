//! Exact verification of zero-product functional identities on finite
//! triangular rings.
//!
//! Rings are free `Z_m`-modules (odd `m`) with structure constants, additive
//! maps are `k x k` matrices over `Z_m`, and every functional identity is a
//! linear system whose solution set is a canonical [`zmlinalg::SolutionModule`].

#![allow(clippy::needless_range_loop)]

pub mod conditions;
pub mod error;
pub mod funcmap;
pub mod ringcore;
pub mod theorems;
pub mod trimodule;
pub mod zmlinalg;

pub use conditions::{Condition, ConditionKind, ConditionRegistry, ConditionSpec, SolveOptions};
pub use error::{LinalgError, MapError, RingError, TheoremError};
pub use funcmap::{AdditiveMap, MapRecord};
pub use ringcore::{FiniteRing, RingElement, RingSpec, DEFAULT_ENUMERATION_BOUND};
pub use theorems::{CheckRecord, TauDecomposition, Verifier, VerifyOptions};
pub use trimodule::{trivial_extension, Bimodule, Faithfulness, TriangularRing};
pub use zmlinalg::{MatrixZm, Modulus, SolutionModule};
