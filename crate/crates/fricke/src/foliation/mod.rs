//! The compactified Painlevé V vector field: chart fields, the Bäcklund gluing,
//! the singular-point census with exact linearizations, and the closed-form
//! normal-form dynamics near a saddle-node.

pub mod census;
pub mod field;
pub mod normal_form;

pub use census::{singular_census, CensusPoint, PointKind};
pub use field::{
    backlund_pi, char_poly, coherence_factor, jacobian, linearization, transition, vector_field, vector_field_named,
    AlphaParams, Chart, ChartPoint,
};
pub use normal_form::{formal_monodromy_n, normal_form_flow, torus_action, NormalFormState};
