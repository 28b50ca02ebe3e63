//! Octonions, triality, and explicit matrix models of the spin groups and
//! Lie algebras from spin(8) up to spin(10,2), with their invariant
//! polynomials, squaring maps and orbit invariants.
//!
//! Every computation is generic over [`Scalar`]: exact rationals for identity
//! checks, `f64` for exponentials and angle sweeps.

pub mod error;
pub mod families;
pub mod invariants;
pub mod linalg;
pub mod matrix;
pub mod octonion;
pub mod orbits;
pub mod sampling;
pub mod scalar;
pub mod spin8;

pub use error::{Error, Result};
pub use families::{Family, FamilyBasis, LieElement, Params};
pub use invariants::{Spinor, Vector11, Vector9};
pub use matrix::{ComplexMatrix, Matrix};
pub use octonion::Octonion;
pub use orbits::OrbitLabel;
pub use scalar::{Mode, Rational, Scalar};
pub use spin8::{Spin8Element, TrialityTriple};
