//! Circle inversion, poles and polars, polar duals of conics, and the
//! negative pedal of a circle.
//!
//! All of these are taken with respect to an [`InversionCircle`] centered at
//! the pedal point. Its radius is free: porism families do not depend on it,
//! only the polar-side objects rescale.

use nalgebra::{Matrix2, Matrix3, Vector2};

use crate::error::{GeomError, Result};
use crate::geom::{conic_from_matrix, Circle, Conic, Line, Point};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionCircle {
    pub center: Point,
    radius_sq: f64,
}

impl InversionCircle {
    pub fn new(center: Point, radius_sq: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(radius_sq.is_finite() && radius_sq > 0.0) {
            return Err(GeomError::InvalidRadius(radius_sq));
        }
        Ok(Self { center, radius_sq })
    }

    pub fn radius_sq(&self) -> f64 {
        self.radius_sq
    }

    pub fn as_circle(&self) -> Circle {
        Circle::new(self.center, self.radius_sq.sqrt()).expect("validated radius")
    }

    /// Homogeneous matrix of the inversion circle, unscaled.
    pub fn matrix(&self) -> Matrix3<f64> {
        let (x, y) = (self.center.x, self.center.y);
        Matrix3::new(1.0, 0.0, -x, 0.0, 1.0, -y, -x, -y, x * x + y * y - self.radius_sq)
    }
}

/// Image of a circle under inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InversionImage {
    Circle(Circle),
    /// The circle passed through the inversion center.
    Line(Line),
}

impl InversionImage {
    pub fn circle(self) -> Option<Circle> {
        match self {
            InversionImage::Circle(c) => Some(c),
            InversionImage::Line(_) => None,
        }
    }
}

pub fn invert_point(p: Point, inv: &InversionCircle, tol: Tolerance) -> Result<Point> {
    let v = p - inv.center;
    let d2 = v.norm_sq();
    if d2.sqrt() <= tol.eps {
        return Err(GeomError::CenterInversion);
    }
    Ok(inv.center + (inv.radius_sq / d2) * v)
}

pub fn invert_circle(c: &Circle, inv: &InversionCircle, tol: Tolerance) -> Result<InversionImage> {
    let w = c.center - inv.center;
    let d = w.norm();
    let r = c.radius();
    if (d - r).abs() <= tol.eps {
        // Through the center: image is the line perpendicular to the diameter
        // through the center, passing by the inverse of the far endpoint.
        let far = inv.center + 2.0 * w;
        let img = invert_point(far, inv, tol)?;
        let line = Line::new(w.x, w.y, -w.dot(img))?;
        return Ok(InversionImage::Line(line));
    }
    if d <= tol.eps {
        return Ok(InversionImage::Circle(Circle::new(inv.center, inv.radius_sq / r)?));
    }
    let u = (1.0 / d) * w;
    // Endpoints of the diameter on the line through the inversion center.
    let p1 = invert_point(inv.center + (d - r) * u, inv, tol)?;
    let p2 = invert_point(inv.center + (d + r) * u, inv, tol)?;
    Ok(InversionImage::Circle(Circle::with_diameter(p1, p2)?))
}

/// The line `{X : (X − D)·(p − D) = k²}`.
pub fn polar_of_point(p: Point, inv: &InversionCircle, tol: Tolerance) -> Result<Line> {
    let n = p - inv.center;
    if n.norm() <= tol.eps {
        return Err(GeomError::CenterInversion);
    }
    Line::new(n.x, n.y, -n.dot(inv.center) - inv.radius_sq)
}

pub fn pole_of_line(l: &Line, inv: &InversionCircle, tol: Tolerance) -> Result<Point> {
    let s = l.signed_distance(inv.center);
    if s.abs() <= tol.eps {
        return Err(GeomError::LineThroughCenter);
    }
    Ok(inv.center - (inv.radius_sq / s) * l.normal())
}

/// Polar reciprocal: the locus of poles of the tangents of `k`, i.e.
/// `B·adj(M)·B` for the inversion-circle matrix `B`.
pub fn dual_of_conic(k: &Conic, inv: &InversionCircle) -> Result<Conic> {
    if !k.is_proper() {
        return Err(GeomError::DegenerateConic);
    }
    let b = inv.matrix();
    conic_from_matrix(b * k.adjugate() * b)
}

/// Envelope of the lines through `P ∈ c` perpendicular to `PD`.
///
/// Closed form: the conic centered at the circle's center with a focus at `d`,
/// semi-major axis equal to the radius and the diameter through `d` as its focal
/// axis. An ellipse when `d` is inside, a hyperbola when outside.
pub fn negative_pedal_of_circle(c: &Circle, d: Point, tol: Tolerance) -> Result<Conic> {
    let w = d - c.center;
    let a = c.radius();
    let focal = w.norm();
    if (focal - a).abs() <= tol.eps {
        return Err(GeomError::PointOnCircle);
    }
    let a2 = a * a;
    let beta = a2 - focal * focal;
    // In the frame (u, v) with u along the focal axis: β·x'² + a²·y'² = a²·β.
    // Conjugated back, β·uuᵀ + a²·vvᵀ = a²·I − w·wᵀ.
    let q = Matrix2::new(a2 - w.x * w.x, -w.x * w.y, -w.x * w.y, a2 - w.y * w.y);
    let o = Vector2::new(c.center.x, c.center.y);
    let qo = q * o;
    let m =
        Matrix3::new(q[(0, 0)], q[(0, 1)], -qo.x, q[(1, 0)], q[(1, 1)], -qo.y, -qo.x, -qo.y, o.dot(&qo) - a2 * beta);
    conic_from_matrix(m)
}
