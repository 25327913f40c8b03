//! Pencils and conics of spheres under the contact relation.

pub mod conic;
pub mod pencil;

pub use conic::{
    classify_form, common_contact_conic, complementary_of, conic_classify, conic_enumerate,
    conic_membership, ConicEnumeration, ConicKind, ConicSection,
};
pub use pencil::{enumerate_pencil, pencil_from_pair, pencil_members, PencilKey};
