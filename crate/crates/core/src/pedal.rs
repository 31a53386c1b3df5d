//! Pedal, negative-pedal and polar triangles of a reference triangle with
//! respect to a pedal point, and the inconic focused at that point.
//!
//! Vertex conventions: the derived vertex in slot A always comes from side BC
//! (the foot on BC, the pole of BC, or the meet of the perpendiculars at B and
//! C). [`Triangle::new`] may swap the B/C slots to keep the result
//! counterclockwise, so checks relating B/C slots across triangles match
//! vertices instead of trusting labels.

use crate::error::{GeomError, Result, Side};
use crate::geom::{foot_of_perpendicular, line_intersection, perpendicular_at, Circle, Conic, Triangle};
use crate::geom::{line_through, Point};
use crate::inversive::{negative_pedal_of_circle, pole_of_line, InversionCircle};
use crate::tolerance::Tolerance;

/// Negative-pedal vertices farther than this many scene diameters are "at infinity".
const FAR_VERTEX_FACTOR: f64 = 1e6;

/// A reference triangle with a pedal point off its side lines and off its circumcircle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PedalConfig {
    triangle: Triangle,
    pedal_point: Point,
}

impl PedalConfig {
    pub fn new(triangle: Triangle, pedal_point: Point, tol: Tolerance) -> Result<Self> {
        if !pedal_point.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let sides = triangle.sides(tol)?;
        for (line, side) in sides.iter().zip([Side::BC, Side::CA, Side::AB]) {
            if line.distance(pedal_point) <= tol.eps {
                return Err(GeomError::PedalPointOnSide(side));
            }
        }
        if triangle.circumcircle().incidence_defect(pedal_point) <= tol.eps {
            return Err(GeomError::PedalPointOnCircumcircle);
        }
        Ok(Self { triangle, pedal_point })
    }

    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn pedal_point(&self) -> Point {
        self.pedal_point
    }
}

/// Feet of the pedal point on BC, CA, AB.
pub fn pedal_feet(cfg: &PedalConfig, tol: Tolerance) -> Result<[Point; 3]> {
    let d = cfg.pedal_point;
    let [bc, ca, ab] = cfg.triangle.sides(tol)?;
    Ok([foot_of_perpendicular(d, &bc), foot_of_perpendicular(d, &ca), foot_of_perpendicular(d, &ab)])
}

pub fn pedal_triangle(cfg: &PedalConfig, tol: Tolerance) -> Result<Triangle> {
    let [fa, fb, fc] = pedal_feet(cfg, tol)?;
    Triangle::new(fa, fb, fc).map_err(|_| GeomError::DegenerateOutput("collinear pedal feet"))
}

pub fn pedal_circle(cfg: &PedalConfig, tol: Tolerance) -> Result<Circle> {
    Ok(pedal_triangle(cfg, tol)?.circumcircle())
}

/// The inconic of the triangle with a focus at the pedal point, obtained as the
/// negative pedal of the pedal circle.
pub fn inconic_focused(cfg: &PedalConfig, tol: Tolerance) -> Result<Conic> {
    negative_pedal_of_circle(&pedal_circle(cfg, tol)?, cfg.pedal_point, tol)
}

/// Triangle bounded by the perpendiculars at each vertex to the line joining
/// it to the pedal point.
pub fn negative_pedal_triangle(cfg: &PedalConfig, tol: Tolerance) -> Result<Triangle> {
    let d = cfg.pedal_point;
    let [a, b, c] = cfg.triangle.vertices();
    let la = perpendicular_at(a, d, tol)?;
    let lb = perpendicular_at(b, d, tol)?;
    let lc = perpendicular_at(c, d, tol)?;
    let far = FAR_VERTEX_FACTOR * tol.scale;
    let o = cfg.triangle.circumcircle().center;
    let mut vs = [Point::ORIGIN; 3];
    for (slot, (l1, l2)) in vs.iter_mut().zip([(&lb, &lc), (&lc, &la), (&la, &lb)]) {
        let p = line_intersection(l1, l2).map_err(|_| GeomError::DegenerateOutput("parallel perpendiculars"))?;
        if p.dist(o) > far {
            return Err(GeomError::DegenerateOutput("negative-pedal vertex at infinity"));
        }
        *slot = p;
    }
    Triangle::new(vs[0], vs[1], vs[2]).map_err(|_| GeomError::DegenerateOutput("collinear negative-pedal vertices"))
}

pub fn negative_pedal_circle(cfg: &PedalConfig, tol: Tolerance) -> Result<Circle> {
    Ok(negative_pedal_triangle(cfg, tol)?.circumcircle())
}

/// Poles of BC, CA, AB with respect to an inversion circle centered at the pedal point.
pub fn polar_triangle(cfg: &PedalConfig, inv: &InversionCircle, tol: Tolerance) -> Result<Triangle> {
    if inv.center.dist(cfg.pedal_point) > tol.eps {
        return Err(GeomError::InversionNotAtPedalPoint);
    }
    polar_triangle_of(&cfg.triangle, inv, tol)
}

pub(crate) fn polar_triangle_of(t: &Triangle, inv: &InversionCircle, tol: Tolerance) -> Result<Triangle> {
    let [bc, ca, ab] = t.sides(tol)?;
    let pa = pole_of_line(&bc, inv, tol)?;
    let pb = pole_of_line(&ca, inv, tol)?;
    let pc = pole_of_line(&ab, inv, tol)?;
    Triangle::new(pa, pb, pc).map_err(|_| GeomError::DegenerateOutput("collinear poles"))
}

/// Largest distance between a vertex of one triangle and the nearest pole of a
/// side of the other, taken both ways.
pub fn polarity_defect(t: &Triangle, tp: &Triangle, inv: &InversionCircle, tol: Tolerance) -> Result<f64> {
    let one_way = |src: &Triangle, dst: &Triangle| -> Result<f64> {
        let poles = src.sides(tol)?.iter().map(|s| pole_of_line(s, inv, tol)).collect::<Result<Vec<_>>>()?;
        Ok(dst
            .vertices()
            .iter()
            .map(|v| poles.iter().map(|p| p.dist(*v)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max))
    };
    Ok(one_way(t, tp)?.max(one_way(tp, t)?))
}

/// Parallelism and ratio consistency of corresponding sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homothety {
    /// Largest |sin| of the angle between corresponding sides.
    pub parallel_defect: f64,
    /// Signed side ratios `first / second` for the sides opposite A, B, C.
    pub ratios: [f64; 3],
    /// `(max − min) / |mean|` of the ratios.
    pub ratio_spread: f64,
}

impl Homothety {
    pub fn ratio(&self) -> f64 {
        self.ratios.iter().sum::<f64>() / 3.0
    }
}

/// Compares `first` against `second` side by side, slot for slot.
pub fn homothety(first: &Triangle, second: &Triangle) -> Homothety {
    let (p, q) = (first.vertices(), second.vertices());
    let mut parallel_defect = 0.0_f64;
    let mut ratios = [0.0; 3];
    for (i, ratio) in ratios.iter_mut().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let s1 = p[k] - p[j];
        let s2 = q[k] - q[j];
        parallel_defect = parallel_defect.max(s1.cross(s2).abs() / (s1.norm() * s2.norm()));
        *ratio = s1.dot(s2) / s2.norm_sq();
    }
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean = ratios.iter().sum::<f64>() / 3.0;
    Homothety { parallel_defect, ratios, ratio_spread: (max - min) / mean.abs() }
}

/// Largest gap between a side line's distance from the circle center and the
/// radius. Zero when `circle` touches all three side lines.
pub fn side_tangency_to_circle(t: &Triangle, circle: &Circle, tol: Tolerance) -> Result<f64> {
    Ok(t.sides(tol)?.iter().map(|s| (s.distance(circle.center) - circle.radius()).abs()).fold(0.0, f64::max))
}

/// Line through the pedal point and a polar-triangle vertex, intersected with
/// the matching side of the reference triangle.
pub fn polar_vertex_feet(cfg: &PedalConfig, inv: &InversionCircle, tol: Tolerance) -> Result<[Point; 3]> {
    let tp = polar_triangle(cfg, inv, tol)?;
    let sides = cfg.triangle.sides(tol)?;
    let mut out = [Point::ORIGIN; 3];
    for (slot, v) in out.iter_mut().zip(tp.vertices()) {
        let ray = line_through(cfg.pedal_point, v, tol)?;
        // The pole of a side lies on the perpendicular from D to that side.
        let side =
            sides.iter().min_by(|a, b| a.parallel_defect(&ray).total_cmp(&b.parallel_defect(&ray)).reverse()).unwrap();
        *slot = line_intersection(&ray, side)?;
    }
    Ok(out)
}
