use crate::error::{GeomError, Result};
use crate::geom::{
    circle_circle_intersection, circle_line_intersection, line_conic_tangency_defect, line_intersection, line_through,
    perpendicular_at, second_intersection_circle, second_intersection_line, Circle, Conic, Point, Triangle,
};
use crate::inversive::{polar_of_point, pole_of_line};
use crate::pedal::{self, PedalConfig};

use super::{Algorithm, PorismScene};

/// Defects of one constructed triangle, all in scene length units except
/// `tangency`, which is the dimensionless line/conic tangency defect.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Defects {
    /// Largest tangency defect of the relevant sides against their caustic.
    pub tangency: f64,
    /// Center distance between the family circle of the result and the scene's.
    pub center_err: f64,
    /// Radius difference between the family circle of the result and the scene's.
    pub radius_err: f64,
    /// Largest closing-step defect: the last constructed point's incidence and
    /// the cross-checks specific to each algorithm.
    pub closure: f64,
}

impl Defects {
    pub fn max(&self) -> f64 {
        self.tangency.max(self.center_err).max(self.radius_err).max(self.closure)
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.max() <= threshold
    }
}

/// A constructed triangle, its companion (polar or negative-pedal triangle,
/// when the algorithm produces one) and its defects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Construction {
    pub algorithm: Algorithm,
    pub triangle: Triangle,
    pub companion: Option<Triangle>,
    pub defects: Defects,
}

impl Construction {
    pub fn run(scene: &PorismScene, algorithm: Algorithm, start: Point) -> Result<Self> {
        let (triangle, companion, defects) = match algorithm {
            Algorithm::Pedal => {
                let t = pedal_porism_step(scene, start)?;
                (t, None, evaluate_pedal(scene, &t)?)
            }
            Algorithm::Polar => {
                let (t, tp) = polar_porism_step(scene, start)?;
                (t, Some(tp), evaluate_polar(scene, &t, &tp)?)
            }
            Algorithm::NegativePedal => {
                let (t, tn) = negative_pedal_porism_step(scene, start)?;
                (t, Some(tn), evaluate_negative_pedal(scene, &t, &tn)?)
            }
        };
        Ok(Self { algorithm, triangle, companion, defects })
    }
}

fn check_start(scene: &PorismScene, start: Point) -> Result<()> {
    if !start.is_finite() {
        return Err(GeomError::NonFinite);
    }
    if scene.circumcircle().incidence_defect(start) > scene.tolerance().eps {
        return Err(GeomError::StartNotOnCircle);
    }
    Ok(())
}

/// Labels `(start, p, q)` counterclockwise, keeping the start in its slot.
fn ccw(start: Point, p: Point, q: Point) -> bool {
    (p - start).cross(q - start) > 0.0
}

fn tangency_max(t: &Triangle, k: &Conic, scene: &PorismScene) -> Result<f64> {
    let mut m = 0.0_f64;
    for s in t.sides(scene.tolerance())? {
        m = m.max(line_conic_tangency_defect(&s, k)?);
    }
    Ok(m)
}

/// Thales circle on `[start, D]` against the pedal circle, then re-meet the
/// circumcircle. Returns `(A, B, start)`.
pub fn pedal_porism_step(scene: &PorismScene, start: Point) -> Result<Triangle> {
    check_start(scene, start)?;
    let tol = scene.tolerance();
    let d = scene.pedal_point();
    let thales = Circle::with_diameter(start, d)?;
    let feet = match circle_circle_intersection(&thales, scene.pedal_circle(), tol) {
        Ok(f) => f,
        Err(GeomError::CoincidentCircles) => {
            return Err(GeomError::DegenerateOutput("Thales circle is the pedal circle"))
        }
        Err(e) => return Err(e),
    };
    if feet.len() < 2 {
        return Err(GeomError::InfertileStart);
    }
    // The side through `start` with foot F is the perpendicular to DF at F;
    // building it from F and D avoids the tiny chord start–F when F ≈ start.
    let far_b = second_intersection_line(scene.circumcircle(), &perpendicular_at(feet[0], d, tol)?, start, tol)?;
    let far_a = second_intersection_line(scene.circumcircle(), &perpendicular_at(feet[1], d, tol)?, start, tol)?;
    if far_a.dist(far_b) <= 10.0 * tol.eps {
        return Err(GeomError::DegenerateOutput("coincident vertices"));
    }
    let (a, b) = if ccw(start, far_a, far_b) { (far_a, far_b) } else { (far_b, far_a) };
    Triangle::new(a, b, start).map_err(|_| GeomError::DegenerateOutput("collinear vertices"))
}

/// Polar of the start against the polar circle, then the polars of the two
/// hits re-meet the circumcircle. Returns `(ABC, A_pB_pC_p)`.
pub fn polar_porism_step(scene: &PorismScene, start: Point) -> Result<(Triangle, Triangle)> {
    check_start(scene, start)?;
    let tol = scene.tolerance();
    let inv = scene.inversion();
    let polar = polar_of_point(start, inv, tol)?;
    let hits = circle_line_intersection(scene.polar_circle(), &polar, tol);
    if hits.len() < 2 {
        return Err(GeomError::InfertileStart);
    }
    // The polar of a hit is the side through A opposite the matching vertex:
    // B_p's polar is CA, so it re-meets the circumcircle at C.
    let x1 = second_intersection_line(scene.circumcircle(), &polar_of_point(hits[0], inv, tol)?, start, tol)?;
    let x2 = second_intersection_line(scene.circumcircle(), &polar_of_point(hits[1], inv, tol)?, start, tol)?;
    if x1.dist(x2) <= 10.0 * tol.eps {
        return Err(GeomError::DegenerateOutput("coincident vertices"));
    }
    let (b, c, bp, cp) = if ccw(start, x2, x1) { (x2, x1, hits[0], hits[1]) } else { (x1, x2, hits[1], hits[0]) };
    let t = Triangle::new(start, b, c).map_err(|_| GeomError::DegenerateOutput("collinear vertices"))?;
    let ap = pole_of_line(&line_through(b, c, tol)?, inv, tol)?;
    let tp = Triangle::new(ap, bp, cp).map_err(|_| GeomError::DegenerateOutput("collinear polar vertices"))?;
    Ok((t, tp))
}

/// Perpendicular at the start against the negative-pedal circle, then Thales
/// circles re-meet the circumcircle. Returns `(ABC, A′B′C′)`.
pub fn negative_pedal_porism_step(scene: &PorismScene, start: Point) -> Result<(Triangle, Triangle)> {
    check_start(scene, start)?;
    let tol = scene.tolerance();
    let d = scene.pedal_point();
    let side = perpendicular_at(start, d, tol)?;
    let hits = circle_line_intersection(scene.negative_pedal_circle(), &side, tol);
    if hits.len() < 2 {
        return Err(GeomError::InfertileStart);
    }
    // B′ sees D and C at a right angle, so the circle on [B′, D] re-meets the
    // circumcircle at C.
    let circ = scene.circumcircle();
    let x1 = second_intersection_circle(circ, &Circle::with_diameter(hits[0], d)?, start, tol)?;
    let x2 = second_intersection_circle(circ, &Circle::with_diameter(hits[1], d)?, start, tol)?;
    if x1.dist(x2) <= 10.0 * tol.eps {
        return Err(GeomError::DegenerateOutput("coincident vertices"));
    }
    let (b, c, bq, cq) = if ccw(start, x2, x1) { (x2, x1, hits[0], hits[1]) } else { (x1, x2, hits[1], hits[0]) };
    let t = Triangle::new(start, b, c).map_err(|_| GeomError::DegenerateOutput("collinear vertices"))?;
    let aq = line_intersection(&line_through(b, cq, tol)?, &line_through(c, bq, tol)?)
        .map_err(|_| GeomError::DegenerateOutput("negative-pedal vertex at infinity"))?;
    let tn = Triangle::new(aq, bq, cq).map_err(|_| GeomError::DegenerateOutput("collinear negative-pedal vertices"))?;
    Ok((t, tn))
}

/// Pedal circle against the scene's, side tangency against the inconic, and
/// the foot of D on the closing side AB against the pedal circle.
pub fn evaluate_pedal(scene: &PorismScene, t: &Triangle) -> Result<Defects> {
    let tol = scene.tolerance();
    let cfg = PedalConfig::new(*t, scene.pedal_point(), tol)?;
    let (center_err, radius_err) = Circle::mismatch(&pedal::pedal_circle(&cfg, tol)?, scene.pedal_circle());
    let tangency = tangency_max(t, scene.inconic(), scene)?;
    let ab = t.sides(tol)?[2];
    let foot = crate::geom::foot_of_perpendicular(scene.pedal_point(), &ab);
    let closure = scene.pedal_circle().incidence_defect(foot);
    Ok(Defects { tangency, center_err, radius_err, closure })
}

/// Pedal circle of ABC against the scene's; tangency of ABC's sides to the
/// inconic and of the polar triangle's sides to the polar caustic; the closing
/// vertex A_p on the polar circle and mutual polarity.
pub fn evaluate_polar(scene: &PorismScene, t: &Triangle, tp: &Triangle) -> Result<Defects> {
    let tol = scene.tolerance();
    let cfg = PedalConfig::new(*t, scene.pedal_point(), tol)?;
    let (center_err, radius_err) = Circle::mismatch(&pedal::pedal_circle(&cfg, tol)?, scene.pedal_circle());
    let tangency = tangency_max(tp, scene.polar_caustic(), scene)?.max(tangency_max(t, scene.inconic(), scene)?);
    let on_circle = scene.polar_circle().incidence_defect(tp.a());
    let polarity = pedal::polarity_defect(t, tp, scene.inversion(), tol)?;
    Ok(Defects { tangency, center_err, radius_err, closure: on_circle.max(polarity) })
}

/// Circumcircle of A′B′C′ against the negative-pedal circle; its sides against
/// the negative-pedal caustic; A′ on the negative-pedal circle, agreement with
/// the negative-pedal triangle recomputed from ABC, and the pedal circle of
/// A′B′C′ against the circumcircle.
pub fn evaluate_negative_pedal(scene: &PorismScene, t: &Triangle, tn: &Triangle) -> Result<Defects> {
    let tol = scene.tolerance();
    let (center_err, radius_err) = Circle::mismatch(&tn.circumcircle(), scene.negative_pedal_circle());
    let tangency = tangency_max(tn, scene.negative_pedal_caustic(), scene)?;
    let on_circle = scene.negative_pedal_circle().incidence_defect(tn.a());
    let cfg = PedalConfig::new(*t, scene.pedal_point(), tol)?;
    let recomputed = pedal::negative_pedal_triangle(&cfg, tol)?.labeled_distance(tn);
    let ncfg = PedalConfig::new(*tn, scene.pedal_point(), tol)?;
    let (pc, pr) = Circle::mismatch(&pedal::pedal_circle(&ncfg, tol)?, scene.circumcircle());
    let closure = on_circle.max(recomputed).max(pc).max(pr);
    Ok(Defects { tangency, center_err, radius_err, closure })
}
