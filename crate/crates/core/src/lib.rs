//! Inversive and polar-duality constructions around a pedal point, and the
//! three triangle porisms they induce: triangles sharing a circumcircle with a
//! fixed pedal circle, with a fixed polar-triangle circumcircle, or with a
//! fixed negative-pedal circle.
//!
//! Every construction is checked numerically; see [`porism::run_sweep`] and
//! [`verify::verify_scene`].

pub mod error;
pub mod geom;
pub mod inversive;
pub mod pedal;
pub mod porism;
pub mod sample;
pub mod tolerance;
pub mod verify;

pub use error::{GeomError, Result, Side};
pub use geom::{
    circle_circle_intersection, circle_conic_intersection, circle_line_intersection, conic_from_matrix,
    foot_of_perpendicular, line_conic_tangency_defect, line_through, perpendicular_at, tangents_from_point, Circle,
    Conic, ConicKind, Line, Point, Triangle,
};
pub use inversive::{
    dual_of_conic, invert_circle, invert_point, negative_pedal_of_circle, polar_of_point, pole_of_line,
    InversionCircle, InversionImage,
};
pub use pedal::PedalConfig;
pub use porism::{Algorithm, FertileArcs, PorismScene, PorismSweepReport};
pub use tolerance::Tolerance;
