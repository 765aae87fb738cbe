//! Birational maps between and on the cubic surfaces, log-canonical
//! coordinates, and the sampling engine that checks identities among them.

pub mod canonical;
pub mod cluster;
pub mod generator;
pub mod maps;
pub mod verify;

pub use canonical::*;
pub use cluster::*;
pub use generator::{Generator, SurfaceMap};
pub use maps::*;
pub use verify::{
    check_preserves_surface, check_property, check_sign, compare_maps, orbit, random_params_v, random_params_vi,
    same_point, OrbitReport, ParamSource, PropertyReport, Verdict, Witness,
};
