use crate::error::Result;
use crate::geom::Point;
use crate::pedal::{self, Homothety, PedalConfig};

use super::steps::{pedal_porism_step, polar_porism_step};
use super::PorismScene;

/// Agreement between the pedal and polar constructions from one start, and the
/// negative-pedal/polar relations of the resulting triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyRecord {
    /// Vertex distance between the pedal and polar constructions.
    pub algorithm_gap: f64,
    /// Negative-pedal circle of the constructed triangle against the scene's.
    pub negative_pedal_center_err: f64,
    pub negative_pedal_radius_err: f64,
    /// Negative-pedal triangle compared against the polar triangle.
    pub homothety: Homothety,
}

impl ConsistencyRecord {
    pub fn passes(&self, threshold: f64) -> bool {
        self.algorithm_gap <= threshold
            && self.negative_pedal_center_err <= threshold
            && self.negative_pedal_radius_err <= threshold
    }
}

pub fn cross_family_consistency(scene: &PorismScene, start: Point) -> Result<ConsistencyRecord> {
    let tol = scene.tolerance();
    let t1 = pedal_porism_step(scene, start)?;
    let (t2, _) = polar_porism_step(scene, start)?;
    let cfg = PedalConfig::new(t1, scene.pedal_point(), tol)?;
    let neg = pedal::negative_pedal_triangle(&cfg, tol)?;
    let (negative_pedal_center_err, negative_pedal_radius_err) =
        neg.circumcircle().mismatch(scene.negative_pedal_circle());
    let polar = pedal::polar_triangle(&cfg, scene.inversion(), tol)?;
    Ok(ConsistencyRecord {
        algorithm_gap: t1.cyclic_distance(&t2),
        negative_pedal_center_err,
        negative_pedal_radius_err,
        homothety: pedal::homothety(&neg, &polar),
    })
}
