//! Seeded random scenes for tests, benches and sweeps.

use std::f64::consts::TAU;

use rand::Rng;

use crate::error::Result;
use crate::geom::{Circle, Point, Triangle};
use crate::porism::PorismScene;
use crate::tolerance::Tolerance;

/// Where the pedal point is drawn relative to the seed triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Inside the triangle: elliptic inconic, whole circumcircle fertile.
    InsideTriangle,
    /// Inside the circumcircle but outside the triangle: hyperbolic inconic.
    BetweenTriangleAndCircle,
    /// Outside the circumcircle.
    OutsideCircle,
    /// Any of the above, chosen uniformly.
    Any,
}

/// Smallest angular gap between seed vertices.
const MIN_GAP: f64 = 0.4;
/// Smallest distance, relative to R, between D and the side lines or the circumcircle.
const MARGIN: f64 = 0.05;

pub fn random_circle<R: Rng + ?Sized>(rng: &mut R) -> Circle {
    let center = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    Circle::new(center, rng.random_range(0.5..2.0)).expect("positive radius")
}

/// Three points on `c`, counterclockwise, pairwise at least `MIN_GAP` apart in angle.
pub fn random_inscribed_triangle<R: Rng + ?Sized>(rng: &mut R, c: &Circle) -> Triangle {
    loop {
        let mut a = [rng.random_range(0.0..TAU), rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)];
        a.sort_by(f64::total_cmp);
        let gaps = [a[1] - a[0], a[2] - a[1], a[0] + TAU - a[2]];
        if gaps.iter().all(|&g| g >= MIN_GAP) {
            if let Ok(t) = Triangle::new(c.point_at(a[0]), c.point_at(a[1]), c.point_at(a[2])) {
                return t;
            }
        }
    }
}

fn inside_triangle(t: &Triangle, p: Point) -> bool {
    let [a, b, c] = t.vertices();
    (b - a).cross(p - a) > 0.0 && (c - b).cross(p - b) > 0.0 && (a - c).cross(p - c) > 0.0
}

fn clear_of_sides(t: &Triangle, p: Point, margin: f64) -> bool {
    t.sides(Tolerance::default()).map(|s| s.iter().all(|l| l.distance(p) >= margin)).unwrap_or(false)
}

/// A pedal point for `t` in the requested region, clear of the side lines and
/// the circumcircle by `MARGIN·R`.
pub fn random_pedal_point<R: Rng + ?Sized>(rng: &mut R, t: &Triangle, placement: Placement) -> Point {
    let circ = t.circumcircle();
    let r = circ.radius();
    let margin = MARGIN * r;
    let placement = match placement {
        Placement::Any => [Placement::InsideTriangle, Placement::BetweenTriangleAndCircle, Placement::OutsideCircle]
            [rng.random_range(0..3)],
        p => p,
    };
    loop {
        let rho = match placement {
            Placement::OutsideCircle => r * rng.random_range(1.0 + MARGIN..3.0),
            _ => r * (1.0 - MARGIN) * rng.random_range(0.0_f64..1.0).sqrt(),
        };
        let p = Point::polar(circ.center, rho, rng.random_range(0.0..TAU));
        if !clear_of_sides(t, p, margin) {
            continue;
        }
        let ok = match placement {
            Placement::InsideTriangle => inside_triangle(t, p),
            Placement::BetweenTriangleAndCircle => !inside_triangle(t, p),
            _ => true,
        };
        if ok {
            return p;
        }
    }
}

/// A random scene with inversion radius² 1. Retries the rare draws whose
/// derived objects degenerate.
pub fn random_scene<R: Rng + ?Sized>(rng: &mut R, placement: Placement) -> PorismScene {
    loop {
        if let Ok(s) = try_random_scene(rng, placement) {
            return s;
        }
    }
}

fn try_random_scene<R: Rng + ?Sized>(rng: &mut R, placement: Placement) -> Result<PorismScene> {
    let c = random_circle(rng);
    let t = random_inscribed_triangle(rng, &c);
    let d = random_pedal_point(rng, &t, placement);
    PorismScene::new(t, d, 1.0)
}

/// The equilateral scene: unit circumcircle centered at the origin, D at the center.
pub fn equilateral_scene() -> PorismScene {
    let c = Circle::new(Point::ORIGIN, 1.0).expect("unit circle");
    let t = Triangle::new(c.point_at(0.0), c.point_at(TAU / 3.0), c.point_at(2.0 * TAU / 3.0)).expect("equilateral");
    PorismScene::new(t, Point::ORIGIN, 1.0).expect("equilateral scene")
}
