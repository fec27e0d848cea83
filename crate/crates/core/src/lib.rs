//! Exact even-degree cohomology rings of smooth projective varieties and
//! their Lefschetz subalgebras.
//!
//! Algebras are finite graded-commutative ℚ-algebras given by structure
//! constants ([`GradedAlgebra`]). They are built from projective spaces,
//! Grassmannians, products, projective bundles and blowups, and the
//! [`lefschetz`] module decides hard Lefschetz, Poincaré duality and
//! dimension symmetry for the subalgebra generated in degree one.

pub mod algebra;
pub mod catalog;
pub mod constructors;
pub mod element;
pub mod expr;
pub mod lefschetz;
pub mod linalg;
pub mod ring_map;
pub mod scalar;
pub mod schubert;
pub mod tensor;

pub use algebra::{GradedAlgebra, VerificationReport, Violation};
pub use element::Element;
pub use linalg::Matrix;
pub use ring_map::RingMap;
pub use scalar::Scalar;
