//! Lattice approximation of the index of a massive Wilson-Dirac operator
//! coupled to a U(r) link field on the periodic lattice `(Z/N)^d`.
//!
//! The integer `I = (n_+ - n_-) / 2` of the assembled Hermitian matrix
//! recovers the topological index of the continuum bundle once the lattice is
//! fine enough. Modules:
//!
//! * [`clifford`]: grading and Clifford generators in dimension `2^(d/2)`;
//! * [`lattice`], [`gauge`]: geometry, link fields, fluxes, plaquettes;
//! * [`wilson`]: assembly of the operator and its momentum-space symbol;
//! * [`spectral`]: inertia (dense and banded), smallest `|lambda|`;
//! * [`ktheory`]: lattice index, symbol degree, the almost-commuting-unitaries
//!   invariant and the gap bound.

pub mod acceptance;
pub mod clifford;
pub mod error;
pub mod gauge;
pub mod ktheory;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod spectral;
pub mod sweep;
pub mod wgf;
pub mod wilson;

pub use clifford::CliffordRep;
pub use error::{Error, Result};
pub use gauge::{FluxMatrix, GaugeField, LineBundleSum};
pub use lattice::LatticeGeometry;
pub use spectral::{half_signature, inertia, Inertia, InertiaMethod, MinAbsMethod};
pub use wilson::{MassMode, WilsonOperator};
