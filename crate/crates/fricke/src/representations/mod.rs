//! `SL₂` tuples, trace maps, the mixed-basis confluence machinery and the
//! moduli invariants of trace-free systems.

pub mod mat2;
pub mod moduli;
pub mod rep;

pub use mat2::{is_reducible_pair, ldu, ldu_product, Mat2};
pub use moduli::{moduli_reconstruct, ModuliInvariants, ModuliSystem};
pub use rep::{
    braid_mat, braid_mat_inv, g23_mat, phi_kappa_inv_rep, phi_kappa_inv_rep_e0, phi_kappa_rep, random_rep_v,
    random_rep_vi, random_sl2, reconstruct_v, trace_v_minus, trace_v_plus, trace_v_point, trace_vi, trace_vi_point,
    BraidIndex, Branch, RepV, RepVI, Sheet,
};
