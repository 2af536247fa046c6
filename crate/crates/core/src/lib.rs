//! Computations with 3-graded Lie algebras, invariant convex cones and the
//! compression semigroups they define, together with a finite-dimensional
//! kernel for standard subspaces and their modular objects.
//!
//! Lie algebras are always given through a faithful matrix representation;
//! every algebra element is a real coordinate vector in the chosen basis. The
//! main entry points are:
//!
//! * [`liealg::grade_by`] detects a 3-grading `g = g⁻¹ ⊕ g⁰ ⊕ g¹` of `ad h`
//!   and the involution `τ`.
//! * [`cones::Cone`] decides membership in invariant cones and their graded
//!   parts `C±`.
//! * [`semigroup`] decides membership in the compression semigroup
//!   `S(h, C) = { g : h − Ad(g)h ∈ C }` and factors its elements through the
//!   open cell `G¹G⁰G⁻¹`.
//! * [`modular`] builds Tomita operators and modular pairs `(Δ, J)` of
//!   standard subspaces of `Cⁿ`.
//! * [`catalog`] ships ready-made examples (`sl2`, Poincaré, Jacobi,
//!   solvable).
//!
//! ```
//! use grade3::{catalog, semigroup, Tolerance};
//! use grade3::numkit::real_matrix;
//!
//! let sl2 = catalog::build_sl2();
//! let g = sl2.group_element(&real_matrix(2, 2, &[2.0, 1.0, 1.0, 1.0])).unwrap();
//! let tol = Tolerance::default();
//! assert!(semigroup::member_shc(&g, &sl2.grading, &sl2.cone, tol).unwrap());
//! ```

pub mod catalog;
pub mod cones;
mod error;
pub mod liealg;
pub mod modular;
pub mod numkit;
pub mod roots;
pub mod sampling;
pub mod semigroup;
mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use tolerance::Tolerance;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/gradings.md")]
    mod gradings {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
