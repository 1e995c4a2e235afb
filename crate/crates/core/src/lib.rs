//! Finite-section spectral laboratory for chain complexes over amenable
//! deck groups.
//!
//! The crate models a covering space combinatorially: a finite free
//! Γ-CW chain complex (one basis cell per orbit, boundary matrices over
//! the integral group ring ℤΓ) together with Følner subsets of the deck
//! group Γ. Cutting the complex along a Følner set under relative or
//! absolute boundary conditions yields finite integer chain complexes
//! whose Laplacians, Betti numbers, heat traces, eigenvalue counting
//! functions and zeta values can be compared against von Neumann
//! (Γ-averaged) quantities. For abelian Γ the latter are computed
//! independently by torus quadrature of the Fourier symbol.
//!
//! Module map:
//! - [`group`]: deck groups (ℤᵈ, integer Heisenberg, F₂), Følner boxes,
//!   boundary layers, Cheeger ratios.
//! - [`ring`]: integral group ring elements and boundary matrices.
//! - [`complex`]: equivariant chain complexes, built-ins, text format.
//! - [`section`]: finite sections under relative/absolute conditions.
//! - [`spectral`]: Laplacians, exact Betti numbers, spectra, heat
//!   traces, eigenvalue clusters, finite zeta functions.
//! - [`oracle`]: torus-symbol quadrature for the von Neumann side.
//! - [`bessel`]: modified Bessel functions and the ℤᵈ lattice heat
//!   kernel.

pub mod bessel;
pub mod complex;
pub mod error;
pub mod group;
pub mod oracle;
pub mod rank;
pub mod ring;
pub mod section;
pub mod sparse;
pub mod spectral;
pub mod stochastic;

pub use complex::EquivariantChainComplex;
pub use error::LabError;
pub use group::{FolnerSet, GroupElement, GroupFamily, GroupSpec};
pub use ring::{GroupRingElement, RingMatrix};
pub use section::{BoundaryCondition, SectionComplex};
