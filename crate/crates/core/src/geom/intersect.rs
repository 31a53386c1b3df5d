//! Intersections between lines, circles and conics.
//!
//! Two-point results are ordered counterclockwise as seen from the center of
//! the first circle argument.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;

use super::{normalize_angle, poly::real_roots_quartic, Circle, Conic, Line, Point};
use crate::error::{GeomError, Result};
use crate::tolerance::Tolerance;

/// Roots closer than this in angle are reported once.
const ROOT_MERGE_ANGLE: f64 = 1e-7;
const NEWTON_STEPS: usize = 3;

pub fn line_intersection(l1: &Line, l2: &Line) -> Result<Point> {
    let p = Vector3::from(l1.coeffs()).cross(&Vector3::from(l2.coeffs()));
    // |w| is |sin| of the angle between the unit normals.
    if p.z.abs() < 1e-15 {
        return Err(GeomError::DegenerateOutput("parallel lines"));
    }
    Ok(Point::new(p.x / p.z, p.y / p.z))
}

fn ordered(center: Point, p: Point, q: Point) -> Vec<Point> {
    if (p - center).cross(q - center) < 0.0 {
        vec![q, p]
    } else {
        vec![p, q]
    }
}

pub fn circle_line_intersection(c: &Circle, l: &Line, tol: Tolerance) -> Vec<Point> {
    let s = l.signed_distance(c.center);
    let foot = c.center - s * l.normal();
    let r = c.radius();
    if s.abs() > r + tol.eps {
        return Vec::new();
    }
    if (s.abs() - r).abs() <= tol.eps {
        return vec![foot];
    }
    let h = (r * r - s * s).max(0.0).sqrt();
    let u = l.direction();
    ordered(c.center, foot - h * u, foot + h * u)
}

pub fn circle_circle_intersection(c1: &Circle, c2: &Circle, tol: Tolerance) -> Result<Vec<Point>> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    let (r1, r2) = (c1.radius(), c2.radius());
    if d <= tol.eps {
        return if (r1 - r2).abs() <= tol.eps { Err(GeomError::CoincidentCircles) } else { Ok(Vec::new()) };
    }
    let u = (1.0 / d) * delta;
    if d > r1 + r2 + tol.eps || d < (r1 - r2).abs() - tol.eps {
        return Ok(Vec::new());
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    if (d - (r1 + r2)).abs() <= tol.eps || (d - (r1 - r2).abs()).abs() <= tol.eps {
        let sign = if a >= 0.0 { 1.0 } else { -1.0 };
        return Ok(vec![c1.center + (sign * r1) * u]);
    }
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let base = c1.center + a * u;
    Ok(ordered(c1.center, base - h * u.perp(), base + h * u.perp()))
}

/// The other intersection of `l` with `c`, given a point `known` on both.
///
/// Fails when the chord is tangent or both intersections sit within `10·eps`
/// of `known`.
pub fn second_intersection_line(c: &Circle, l: &Line, known: Point, tol: Tolerance) -> Result<Point> {
    pick_other(circle_line_intersection(c, l, tol), known, tol)
}

/// The other intersection of two circles, given a point `known` on both.
pub fn second_intersection_circle(c1: &Circle, c2: &Circle, known: Point, tol: Tolerance) -> Result<Point> {
    pick_other(circle_circle_intersection(c1, c2, tol)?, known, tol)
}

fn pick_other(pts: Vec<Point>, known: Point, tol: Tolerance) -> Result<Point> {
    if pts.len() < 2 {
        return Err(GeomError::DegenerateOutput("tangent chord has no second intersection"));
    }
    let (d0, d1) = (pts[0].dist(known), pts[1].dist(known));
    if d0.max(d1) <= 10.0 * tol.eps {
        return Err(GeomError::DegenerateOutput("near-tangent chord"));
    }
    Ok(if d0 <= d1 { pts[1] } else { pts[0] })
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Angles (on `c`, in `[0, 2π)`, ascending) where `c` meets `k`.
pub(crate) fn circle_conic_angles(c: &Circle, k: &Conic, tol: Tolerance) -> Result<Vec<f64>> {
    k.require_proper()?;
    let f = |theta: f64| k.eval(c.point_at(theta));
    if (0..16).all(|i| k.point_defect(c.point_at(i as f64 * TAU / 16.0)) <= tol.eps) {
        return Err(GeomError::CoincidentCurves);
    }
    // Rotate the tan-half-angle parametrization so the point it cannot reach
    // (t = ∞) is as far from the conic as possible; keeps the quartic's leading
    // coefficient well away from zero.
    let phi0 = (0..12)
        .map(|j| 0.1234 + j as f64 * TAU / 12.0)
        .max_by(|a, b| f(a + PI).abs().total_cmp(&f(b + PI).abs()))
        .unwrap();
    let (r, cx, cy) = (c.radius(), c.center.x, c.center.y);
    let (s0, c0) = phi0.sin_cos();
    let comps = [[cx + r * c0, -2.0 * r * s0, cx - r * c0], [cy + r * s0, 2.0 * r * c0, cy - r * s0], [1.0, 0.0, 1.0]];
    let m = k.matrix();
    let mut quartic = [0.0; 5];
    for i in 0..3 {
        for j in 0..3 {
            for (deg, v) in poly_mul(&comps[i], &comps[j]).into_iter().enumerate() {
                quartic[deg] += m[(i, j)] * v;
            }
        }
    }
    let mut angles: Vec<f64> = Vec::new();
    for t in real_roots_quartic(quartic) {
        let mut theta = phi0 + 2.0 * t.atan();
        for _ in 0..NEWTON_STEPS {
            let p = c.point_at(theta);
            let dp = Point::new(-r * theta.sin(), r * theta.cos());
            let d = k.gradient(p).dot(dp);
            if d == 0.0 {
                break;
            }
            let step = k.eval(p) / d;
            if !step.is_finite() || step.abs() > 0.5 {
                break;
            }
            theta -= step;
        }
        if k.point_defect(c.point_at(theta)) <= tol.defect {
            angles.push(normalize_angle(theta));
        }
    }
    angles.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(angles.len());
    for a in angles {
        match merged.last() {
            Some(&last) if a - last < ROOT_MERGE_ANGLE => {}
            _ => merged.push(a),
        }
    }
    if merged.len() > 1 && merged[0] + TAU - merged[merged.len() - 1] < ROOT_MERGE_ANGLE {
        merged.pop();
    }
    Ok(merged)
}

/// Up to four intersection points, sorted by angle on `c`.
pub fn circle_conic_intersection(c: &Circle, k: &Conic, tol: Tolerance) -> Result<Vec<Point>> {
    Ok(circle_conic_angles(c, k, tol)?.into_iter().map(|a| c.point_at(a)).collect())
}
