//! Conics as symmetric homogeneous 3×3 matrices.

use nalgebra::{Matrix2, Matrix3, Vector3};

use super::{Line, Point};
use crate::error::{GeomError, Result};
use crate::tolerance::{Tolerance, EPS_REL};

/// Hadamard ratio `|det| / Π‖column‖` below which a conic is degenerate.
const SINGULAR_REL: f64 = 1e-13;
/// `det(Q) / ‖Q‖²` below which the quadratic part counts as parabolic.
const PARABOLIC_REL: f64 = 1e-10;
/// Relative anisotropy of the quadratic part below which an ellipse is a circle.
const CIRCLE_REL: f64 = 1e-9;
/// Entries within this relative band of the largest magnitude tie for the sign rule.
const SIGN_TIE_REL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicKind {
    Circle,
    Ellipse,
    Hyperbola,
    /// Near-parabolic; rejected by the operations that need a proper conic.
    Parabola,
    /// Non-degenerate but without real points.
    Imaginary,
    Degenerate,
}

impl ConicKind {
    pub fn is_proper(self) -> bool {
        matches!(self, ConicKind::Circle | ConicKind::Ellipse | ConicKind::Hyperbola)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    m: Matrix3<f64>,
    kind: ConicKind,
}

/// Canonically scales a symmetric matrix and classifies it.
///
/// The scale is fixed by Frobenius norm 1 with the largest-magnitude entry
/// positive (first in row-major order among near-ties).
pub fn conic_from_matrix(m: Matrix3<f64>) -> Result<Conic> {
    if m.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let m = 0.5 * (m + m.transpose());
    let norm = m.norm();
    if norm == 0.0 {
        return Err(GeomError::ZeroMatrix);
    }
    let mut m = m / norm;
    let max = m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let mut pivot = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if pivot == 0.0 && m[(i, j)].abs() >= (1.0 - SIGN_TIE_REL) * max {
                pivot = m[(i, j)];
            }
        }
    }
    if pivot < 0.0 {
        m = -m;
    }
    Ok(Conic { kind: classify(&m), m })
}

fn classify(m: &Matrix3<f64>) -> ConicKind {
    let cols: f64 = (0..3).map(|j| m.column(j).norm()).product();
    let det = m.determinant();
    if cols == 0.0 || det.abs() <= SINGULAR_REL * cols {
        return ConicKind::Degenerate;
    }
    let q = quadratic_part(m);
    let qn = q.norm_squared();
    let delta = q.determinant();
    if delta.abs() <= PARABOLIC_REL * qn {
        return ConicKind::Parabola;
    }
    if delta < 0.0 {
        return ConicKind::Hyperbola;
    }
    if det * q.trace() > 0.0 {
        return ConicKind::Imaginary;
    }
    let aniso = (q[(0, 0)] - q[(1, 1)]).abs().max(2.0 * q[(0, 1)].abs());
    if aniso <= CIRCLE_REL * (q[(0, 0)].abs() + q[(1, 1)].abs()) {
        ConicKind::Circle
    } else {
        ConicKind::Ellipse
    }
}

fn quadratic_part(m: &Matrix3<f64>) -> Matrix2<f64> {
    m.fixed_view::<2, 2>(0, 0).into_owned()
}

/// Adjugate of a 3×3 matrix (transpose of the cofactor matrix).
pub(crate) fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)];
    Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

pub(crate) fn homogeneous(p: Point) -> Vector3<f64> {
    Vector3::new(p.x, p.y, 1.0)
}

/// Axis-aligned description of a central conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralForm {
    pub center: Point,
    /// Unit vector along the major (ellipse) or transverse (hyperbola) axis.
    pub axis: Point,
    /// Semi-major or semi-transverse axis.
    pub a: f64,
    /// Semi-minor or semi-conjugate axis.
    pub b: f64,
    pub kind: ConicKind,
}

impl CentralForm {
    /// Linear eccentricity (center-to-focus distance).
    pub fn focal_distance(&self) -> f64 {
        match self.kind {
            ConicKind::Hyperbola => self.a.hypot(self.b),
            _ => (self.a * self.a - self.b * self.b).max(0.0).sqrt(),
        }
    }

    pub fn foci(&self) -> [Point; 2] {
        let c = self.focal_distance();
        [self.center + c * self.axis, self.center - c * self.axis]
    }

    /// Point of the ellipse at eccentric angle `t`.
    pub fn ellipse_point(&self, t: f64) -> Point {
        self.center + (self.a * t.cos()) * self.axis + (self.b * t.sin()) * self.axis.perp()
    }

    /// Point of hyperbola branch `branch` (±1) at hyperbolic parameter `t`.
    pub fn hyperbola_point(&self, branch: f64, t: f64) -> Point {
        self.center + (branch * self.a * t.cosh()) * self.axis + (self.b * t.sinh()) * self.axis.perp()
    }
}

impl Conic {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn kind(&self) -> ConicKind {
        self.kind
    }

    pub fn is_proper(&self) -> bool {
        self.kind.is_proper()
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(GeomError::DegenerateConic)
        }
    }

    /// Quadratic form value at `p`.
    pub fn eval(&self, p: Point) -> f64 {
        let x = homogeneous(p);
        x.dot(&(self.m * x))
    }

    /// Gradient of the quadratic form at `p`.
    pub fn gradient(&self, p: Point) -> Point {
        let g = self.m * homogeneous(p);
        Point::new(2.0 * g.x, 2.0 * g.y)
    }

    /// First-order distance from `p` to the curve.
    pub fn point_defect(&self, p: Point) -> f64 {
        let g = self.gradient(p).norm();
        let f = self.eval(p).abs();
        if g == 0.0 {
            if f == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            f / g
        }
    }

    /// Largest entrywise difference of the canonical matrices.
    pub fn max_entry_diff(&self, other: &Conic) -> f64 {
        (self.m - other.m).iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn adjugate(&self) -> Matrix3<f64> {
        adjugate(&self.m)
    }

    /// Center, axes and semi-axis lengths for ellipses, circles and hyperbolas.
    pub fn central_form(&self) -> Result<CentralForm> {
        self.require_proper()?;
        let q = quadratic_part(&self.m);
        let lin = nalgebra::Vector2::new(self.m[(0, 2)], self.m[(1, 2)]);
        let inv = q.try_inverse().ok_or(GeomError::DegenerateConic)?;
        let c = -(inv * lin);
        let f0 = self.m[(2, 2)] + lin.dot(&c);
        let eig = q.symmetric_eigen();
        // Squared semi-axes along the two eigenvectors (negative means imaginary axis).
        let s0 = -f0 / eig.eigenvalues[0];
        let s1 = -f0 / eig.eigenvalues[1];
        let e0 = Point::new(eig.eigenvectors[(0, 0)], eig.eigenvectors[(1, 0)]);
        let e1 = Point::new(eig.eigenvectors[(0, 1)], eig.eigenvectors[(1, 1)]);
        let (axis, a2, b2) = match self.kind {
            ConicKind::Hyperbola => {
                if s0 > 0.0 {
                    (e0, s0, -s1)
                } else {
                    (e1, s1, -s0)
                }
            }
            _ => {
                if s0 >= s1 {
                    (e0, s0, s1)
                } else {
                    (e1, s1, s0)
                }
            }
        };
        if !(a2 > 0.0 && b2 > 0.0) {
            return Err(GeomError::DegenerateConic);
        }
        // Canonical axis sign: first clearly nonzero component positive.
        let axis = if axis.x.abs() > 1e-12 {
            if axis.x < 0.0 {
                -axis
            } else {
                axis
            }
        } else if axis.y < 0.0 {
            -axis
        } else {
            axis
        };
        Ok(CentralForm { center: Point::new(c.x, c.y), axis, a: a2.sqrt(), b: b2.sqrt(), kind: self.kind })
    }
}

/// `|lᵀ·adj(M)·l| / (‖l‖²·‖adj(M)‖)`; zero exactly for tangent lines.
pub fn line_conic_tangency_defect(l: &Line, k: &Conic) -> Result<f64> {
    k.require_proper()?;
    let adj = k.adjugate();
    let v = Vector3::from(l.coeffs());
    Ok(v.dot(&(adj * v)).abs() / (v.norm_squared() * adj.norm()))
}

/// Tangent lines from `p` to `k`: two from exterior points, one from points on
/// the curve, none from interior points (the focal components of the plane).
pub fn tangents_from_point(p: Point, k: &Conic, _tol: Tolerance) -> Result<Vec<Line>> {
    k.require_proper()?;
    let adj = k.adjugate();
    let x = homogeneous(p);
    // Pencil of lines through p, spanned by its joins with the two points at infinity.
    let l1 = x.cross(&Vector3::new(1.0, 0.0, 0.0));
    let l2 = x.cross(&Vector3::new(0.0, 1.0, 0.0));
    let qa = l1.dot(&(adj * l1));
    let qb = l1.dot(&(adj * l2));
    let qc = l2.dot(&(adj * l2));
    let disc = qb * qb - qa * qc;
    let scale = qa * qa + qb * qb + qc * qc;
    if scale == 0.0 {
        return Err(GeomError::DegenerateConic);
    }
    let rel = disc / scale;
    let make = |alpha: f64, beta: f64| {
        let l = alpha * l1 + beta * l2;
        Line::new(l.x, l.y, l.z)
    };
    if rel.abs() <= EPS_REL {
        let line = if qa.abs() >= qc.abs() { make(-qb, qa)? } else { make(qc, -qb)? };
        return Ok(vec![line]);
    }
    if rel < 0.0 {
        return Ok(Vec::new());
    }
    let s = disc.sqrt();
    let q = -(qb + if qb >= 0.0 { s } else { -s });
    Ok(vec![make(q, qa)?, make(qc, q)?])
}
