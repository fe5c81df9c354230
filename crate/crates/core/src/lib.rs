//! Exact group-ring arithmetic, Stickelberger elements and fractional Galois ideals
//! for cyclotomic extensions and small finite groups.

pub mod abelian;
pub mod annihilator;
pub mod brauer;
pub mod check;
pub mod cyclo_ideals;
pub mod cyclotomic;
pub mod dirichlet;
pub mod error;
pub mod functorial;
pub mod group;
pub mod group_ring;
pub mod hnf;
pub mod ideal;
pub mod matrix;
pub mod padic;
pub mod scalar;
pub mod signature;
pub mod stickelberger;
pub mod suites;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use group_ring::GroupRingElement;
pub use ideal::{Ambient, Comparison, FractionalIdeal};
pub use matrix::Matrix;
pub use scalar::{Rational, Scalar};

pub type QGroupRing = GroupRingElement<Rational>;
pub type CycGroupRing = GroupRingElement<Cyclotomic>;
pub type QMatrix = Matrix<Rational>;
pub type CycMatrix = Matrix<Cyclotomic>;
