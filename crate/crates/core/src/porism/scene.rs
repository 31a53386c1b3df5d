use crate::error::{GeomError, Result};
use crate::geom::{Circle, Conic, Point, Triangle};
use crate::inversive::{dual_of_conic, invert_circle, negative_pedal_of_circle, InversionCircle};
use crate::pedal::{self, PedalConfig};
use crate::tolerance::{Tolerance, DEFECT_REL};

/// A seed triangle, a pedal point and an inversion circle around it, with every
/// derived circle and conic the porisms need.
///
/// The circle/conic pairs are: circumcircle with `inconic` (pedal family),
/// `polar_circle` with `polar_caustic` (polar triangles), and
/// `negative_pedal_circle` with `negative_pedal_caustic` (negative-pedal
/// triangles).
#[derive(Debug, Clone, PartialEq)]
pub struct PorismScene {
    seed: Triangle,
    pedal_point: Point,
    inversion: InversionCircle,
    tol: Tolerance,
    threshold_factor: f64,
    circumcircle: Circle,
    pedal_circle: Circle,
    inconic: Conic,
    polar_circle: Circle,
    polar_caustic: Conic,
    negative_pedal_caustic: Conic,
    negative_pedal_circle: Circle,
    seed_polar: Triangle,
    seed_negative_pedal: Triangle,
}

impl PorismScene {
    pub fn new(seed: Triangle, pedal_point: Point, inversion_radius_sq: f64) -> Result<Self> {
        let circumcircle = seed.circumcircle();
        let r = circumcircle.radius();
        let scale = 2.0 * r.max(circumcircle.center.dist(pedal_point));
        let tol = Tolerance::for_scale(scale);
        let cfg = PedalConfig::new(seed, pedal_point, tol)?;
        let inversion = InversionCircle::new(pedal_point, inversion_radius_sq)?;

        let pedal_circle = pedal::pedal_circle(&cfg, tol)?;
        let inconic = negative_pedal_of_circle(&pedal_circle, pedal_point, tol)?;
        let polar_circle = invert_circle(&pedal_circle, &inversion, tol)?
            .circle()
            .ok_or(GeomError::DegenerateOutput("pedal circle through the pedal point"))?;
        let polar_caustic = dual_of_conic(&circumcircle.as_conic(), &inversion)?;
        let negative_pedal_caustic = negative_pedal_of_circle(&circumcircle, pedal_point, tol)?;
        let seed_negative_pedal = pedal::negative_pedal_triangle(&cfg, tol)?;
        let negative_pedal_circle = seed_negative_pedal.circumcircle();
        let seed_polar = pedal::polar_triangle(&cfg, &inversion, tol)?;
        Ok(Self {
            seed,
            pedal_point,
            inversion,
            tol,
            threshold_factor: 1.0,
            circumcircle,
            pedal_circle,
            inconic,
            polar_circle,
            polar_caustic,
            negative_pedal_caustic,
            negative_pedal_circle,
            seed_polar,
            seed_negative_pedal,
        })
    }

    /// Multiplies the pass/fail threshold used by sweeps.
    pub fn with_threshold_factor(mut self, factor: f64) -> Self {
        self.threshold_factor = factor;
        self
    }

    pub fn seed(&self) -> &Triangle {
        &self.seed
    }
    pub fn pedal_point(&self) -> Point {
        self.pedal_point
    }
    pub fn inversion(&self) -> &InversionCircle {
        &self.inversion
    }
    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }
    pub fn circumcircle(&self) -> &Circle {
        &self.circumcircle
    }
    pub fn pedal_circle(&self) -> &Circle {
        &self.pedal_circle
    }
    /// Inconic of every family triangle, focused at the pedal point.
    pub fn inconic(&self) -> &Conic {
        &self.inconic
    }
    /// Inverse of the pedal circle; circumcircle of every polar triangle.
    pub fn polar_circle(&self) -> &Circle {
        &self.polar_circle
    }
    /// Polar dual of the circumcircle; touched by every polar triangle's sides.
    pub fn polar_caustic(&self) -> &Conic {
        &self.polar_caustic
    }
    /// Negative pedal of the circumcircle; touched by every negative-pedal triangle's sides.
    pub fn negative_pedal_caustic(&self) -> &Conic {
        &self.negative_pedal_caustic
    }
    pub fn negative_pedal_circle(&self) -> &Circle {
        &self.negative_pedal_circle
    }
    pub fn seed_polar_triangle(&self) -> &Triangle {
        &self.seed_polar
    }
    pub fn seed_negative_pedal_triangle(&self) -> &Triangle {
        &self.seed_negative_pedal
    }

    /// Pass/fail bound for sweep defects: `1e-7·R`, times the threshold factor.
    pub fn acceptance_threshold(&self) -> f64 {
        DEFECT_REL * self.circumcircle.radius() * self.threshold_factor
    }

    pub fn start_point(&self, angle: f64) -> Point {
        self.circumcircle.point_at(angle)
    }

    /// Same construction with a different inversion radius.
    pub fn with_inversion_radius_sq(&self, radius_sq: f64) -> Result<Self> {
        Ok(Self::new(self.seed, self.pedal_point, radius_sq)?.with_threshold_factor(self.threshold_factor))
    }

    /// How far the derived objects are from their alternative constructions:
    /// the inconic against the dual of the polar circle, and the inconic's sides
    /// tangency against the seed. Max entry difference / tangency defect.
    pub fn consistency_defects(&self) -> Result<(f64, f64)> {
        let via_dual = dual_of_conic(&self.polar_circle.as_conic(), &self.inversion)?;
        let tangency = self
            .seed
            .sides(self.tol)?
            .iter()
            .map(|s| crate::geom::line_conic_tangency_defect(s, &self.inconic))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Ok((via_dual.max_entry_diff(&self.inconic), tangency))
    }
}
