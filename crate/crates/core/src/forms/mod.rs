//! Binary forms on `P^1`, blow-up models of `P^1 x P^1`, and the
//! multiplicity profile of a pair of sections.

mod form;
mod model;
mod point;
mod profile;

pub use form::{apply_functional, hgcd_degree, is_basepoint_free, BinaryForm};
pub use model::SurfaceModel;
pub use point::PointP1;
pub use profile::{class_of, multiplicity_profile, Profile, SectionClass, SectionPair};
