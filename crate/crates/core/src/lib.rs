//! Exact evaluation of untwisted Dijkgraaf-Witten TQFT with defects for
//! finite groups.
//!
//! The crate builds gauge groupoids of labelled defect graphs, computes
//! the vector spaces assigned to defect surfaces, and evaluates the
//! linear maps assigned to defect cobordisms through a limit/averaging
//! functor on represented fibrant spans of action groupoids. A small
//! quantum double lattice model serves as an independent oracle for the
//! surface results.

pub mod budget;
pub mod double;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod gset;
pub mod kitaev;
pub mod linalg;
pub mod quinn;
pub mod rep;
pub mod span;
pub mod surface;

pub use budget::Budget;
pub use double::{double_irreps, smash_roundtrip_check, DoubleIrrep};
pub use error::{Error, Result};
pub use group::{enumerate_homs, ConjClass, FiniteGroup, GroupHom, Subgroup};
pub use groupoid::{ActionGroupoid, GroupoidMap};
pub use gset::{BiSet, GSet, Orbit};
pub use kitaev::LatticeHilbert;
pub use linalg::{CMat, QMat, Rat};
pub use quinn::{classical_matrix, limit_space, LMap, LimitSpace, RepresentedSpan};
pub use rep::{irreps_for_group, sign_rep, transparent_rep, GroupoidRep, MatrixRep, RepBlock};
pub use span::{is_fibration, FibrantSpan, FibreGroupoid};
pub use surface::{separating_surface, sphere_surface, undecorated_surface, Surface, ZSurface};
