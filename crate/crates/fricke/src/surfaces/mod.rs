//! The cubic surfaces `C_V(θ)` and `C_VI(θ)`: parameters, exact points,
//! sampling, the symplectic-form check, lines and Kaneko points.

pub mod cubic;
pub mod lines;
pub mod params;
pub mod symplectic;

pub use cubic::{
    eval_f, f_family, f_v, f_vi, gradient, lift_to_cv, lift_x3_v, sample_surface, sample_v, sample_vi, SampledVI,
    SurfacePoint,
};
pub use lines::{
    crossing_point, d_forms, factor_conic, factor_quadratic, kaneko_points_v, kaneko_points_vi, lines_cv, lines_cvi,
    KanekoPoint, Line, LineRecord, LinearForm, Plane,
};
pub use params::{c_value, eigen_from_trace, theta_vi, trace_of, Family, Params, ParamsV, ParamsVI};
pub use symplectic::{chart_jet, symplectic_ratio_with};
