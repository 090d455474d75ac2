//! Exact commutative algebra for verifying dualizing-pair identities.
//!
//! The crate is organized in four layers:
//!
//! * [`algebra`] — scalars over `Q` or `F_p`, sparse multivariate
//!   polynomials, finitely presented rings and ring maps, Groebner
//!   machinery (reduced bases, normal forms, colon ideals, syzygies),
//!   and exact matrices.
//! * [`complexes`] — bounded complexes of finite free modules with the
//!   sign conventions for `Hom`, tensor, shifts and the commutation
//!   isomorphism `theta` pinned down explicitly, plus cohomology as
//!   finitely presented modules.
//! * [`local_cohomology`] — Koszul complexes at a truncation level,
//!   generalized fractions, the stable Koszul/Cech comparison and the
//!   Ext description of truncated local cohomology.
//! * [`duality`] — finite flat algebras with their dualizing pairs,
//!   residue symbols computed through the diagonal construction, local
//!   duality at a truncation level, base change and Verdier-style
//!   normalization checks.
//!
//! All arithmetic is exact; every check either passes, fails with a
//! witness, or reports a structured error. Nothing here samples
//! floating point or hashes with randomized state, so identical inputs
//! produce identical outputs.

pub mod algebra;
pub mod complexes;
pub mod duality;
pub mod error;
pub mod local_cohomology;
pub mod report;

pub use algebra::matrix::PolyMatrix;
pub use algebra::poly::Polynomial;
pub use algebra::ring::{Ring, RingMap, RingPresentation};
pub use algebra::scalar::{FieldKind, Scalar};
pub use error::{AlgebraError, Result};
pub use report::{CheckOutcome, Witness};
