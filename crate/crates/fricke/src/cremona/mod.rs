//! Subgroups of the plane symplectic Cremona group: tori, monomial maps,
//! de Jonquières maps, the order-five generator and the involution `σ`.

pub mod elements;
pub mod relations;

pub use elements::{CremonaElem, DeJonquieresElem, MonomialElem, TorusElem};
pub use relations::{group_relations_suite, random_factor, random_sl2, random_unipotent_factor, RelationVerdict};
