//! Points, lines, circles and triangles in the Euclidean plane.

mod conic;
pub(crate) mod intersect;
mod poly;

pub use conic::{conic_from_matrix, line_conic_tangency_defect, tangents_from_point, CentralForm, Conic, ConicKind};
pub use intersect::{
    circle_circle_intersection, circle_conic_intersection, circle_line_intersection, line_intersection,
    second_intersection_circle, second_intersection_line,
};
pub use poly::real_roots_quartic;

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Point on the unit circle direction `angle`, scaled and offset.
    pub fn polar(center: Point, radius: f64, angle: f64) -> Self {
        Self::new(center.x + radius * angle.cos(), center.y + radius * angle.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Direction angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        Point::new(self * p.x, self * p.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Maps any angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// The line `a·x + b·y + c = 0`, kept with `a² + b² = 1` and the first
/// clearly nonzero coefficient of `(a, b)` positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

/// Below this magnitude the normalized `a` coefficient does not decide the sign.
const SIGN_CUTOFF: f64 = 1e-12;

impl Line {
    /// Normalizes arbitrary coefficients. Fails if `(a, b)` vanishes.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let n = a.hypot(b);
        if n == 0.0 || n < 1e-300 {
            return Err(GeomError::DegenerateOutput("line with zero normal"));
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        let flip = if a.abs() > SIGN_CUTOFF { a < 0.0 } else { b < 0.0 };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn coeffs(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Unit normal `(a, b)`.
    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// Unit direction, a quarter turn clockwise from the normal.
    pub fn direction(&self) -> Point {
        Point::new(self.b, -self.a)
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    /// |sin| of the angle between the two lines' normals.
    pub fn parallel_defect(&self, other: &Line) -> f64 {
        self.normal().cross(other.normal()).abs()
    }
}

pub fn line_through(p: Point, q: Point, tol: Tolerance) -> Result<Line> {
    let d = q - p;
    if d.norm() <= tol.eps {
        return Err(GeomError::CoincidentPoints);
    }
    let n = d.perp();
    Line::new(n.x, n.y, -n.dot(p))
}

/// Line through `p` perpendicular to the segment from `through` to `p`.
pub fn perpendicular_at(p: Point, through: Point, tol: Tolerance) -> Result<Line> {
    let n = p - through;
    if n.norm() <= tol.eps {
        return Err(GeomError::CoincidentPoints);
    }
    Line::new(n.x, n.y, -n.dot(p))
}

pub fn foot_of_perpendicular(d: Point, l: &Line) -> Point {
    d - l.signed_distance(d) * l.normal()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// The circle with diameter `[p, q]`.
    pub fn with_diameter(p: Point, q: Point) -> Result<Self> {
        Self::new(p.midpoint(q), 0.5 * p.dist(q))
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn point_at(&self, angle: f64) -> Point {
        Point::polar(self.center, self.radius, angle)
    }

    /// Angle of `p` as seen from the center, in `[0, 2π)`.
    pub fn angle_of(&self, p: Point) -> f64 {
        (p - self.center).angle()
    }

    /// Distance from `p` to the circle itself.
    pub fn incidence_defect(&self, p: Point) -> f64 {
        (p.dist(self.center) - self.radius).abs()
    }

    /// Power of `p`: positive outside, negative inside.
    pub fn power(&self, p: Point) -> f64 {
        (p - self.center).norm_sq() - self.radius * self.radius
    }

    /// Lossless conversion to the homogeneous matrix form.
    pub fn as_conic(&self) -> Conic {
        let (cx, cy, r) = (self.center.x, self.center.y, self.radius);
        let m = nalgebra::Matrix3::new(1.0, 0.0, -cx, 0.0, 1.0, -cy, -cx, -cy, cx * cx + cy * cy - r * r);
        conic_from_matrix(m).expect("circle matrix is never zero")
    }

    /// Max of center distance and radius difference to `other`.
    pub fn mismatch(&self, other: &Circle) -> (f64, f64) {
        (self.center.dist(other.center), (self.radius - other.radius).abs())
    }
}

/// Relative area threshold below which three points count as collinear.
const COLLINEAR_REL: f64 = 1e-12;

/// A non-degenerate triangle with counterclockwise vertices.
///
/// Construction keeps the first vertex in place and swaps the other two when
/// the input is clockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    v: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let cross = (b - a).cross(c - a);
        let scale = (b - a).norm_sq().max((c - a).norm_sq()).max((c - b).norm_sq());
        if scale == 0.0 || cross.abs() <= COLLINEAR_REL * scale {
            return Err(GeomError::DegenerateTriangle);
        }
        Ok(if cross > 0.0 { Self { v: [a, b, c] } } else { Self { v: [a, c, b] } })
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.v
    }

    pub fn a(&self) -> Point {
        self.v[0]
    }
    pub fn b(&self) -> Point {
        self.v[1]
    }
    pub fn c(&self) -> Point {
        self.v[2]
    }

    /// Side lines opposite A, B, C, i.e. `[BC, CA, AB]`.
    pub fn sides(&self, tol: Tolerance) -> Result<[Line; 3]> {
        let [a, b, c] = self.v;
        Ok([line_through(b, c, tol)?, line_through(c, a, tol)?, line_through(a, b, tol)?])
    }

    /// Side lengths opposite A, B, C.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.v;
        [b.dist(c), c.dist(a), a.dist(b)]
    }

    pub fn area(&self) -> f64 {
        let [a, b, c] = self.v;
        0.5 * (b - a).cross(c - a)
    }

    pub fn circumcircle(&self) -> Circle {
        // Relative to A for conditioning.
        let [a, b, c] = self.v;
        let (u, w) = (b - a, c - a);
        let d = 2.0 * u.cross(w);
        let (un, wn) = (u.norm_sq(), w.norm_sq());
        let off = Point::new((w.y * un - u.y * wn) / d, (u.x * wn - w.x * un) / d);
        let center = a + off;
        let r = (center.dist(a) + center.dist(b) + center.dist(c)) / 3.0;
        Circle::new(center, r).expect("non-degenerate triangle has a finite circumcircle")
    }

    /// Incenter from side-length barycentric weights.
    pub fn incenter(&self) -> Point {
        let [la, lb, lc] = self.side_lengths();
        let s = la + lb + lc;
        let [a, b, c] = self.v;
        Point::new((la * a.x + lb * b.x + lc * c.x) / s, (la * a.y + lb * b.y + lc * c.y) / s)
    }

    pub fn inradius(&self) -> f64 {
        let [la, lb, lc] = self.side_lengths();
        2.0 * self.area() / (la + lb + lc)
    }

    pub fn orthocenter(&self) -> Point {
        let o = self.circumcircle().center;
        let [a, b, c] = self.v;
        a + b + c - 2.0 * o
    }

    /// Largest vertex distance under the best cyclic alignment of the two
    /// vertex lists. Both triangles are counterclockwise, so rotations suffice.
    pub fn cyclic_distance(&self, other: &Triangle) -> f64 {
        (0..3)
            .map(|shift| (0..3).map(|i| self.v[i].dist(other.v[(i + shift) % 3])).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest vertex distance with labels taken as given.
    pub fn labeled_distance(&self, other: &Triangle) -> f64 {
        (0..3).map(|i| self.v[i].dist(other.v[i])).fold(0.0, f64::max)
    }
}
