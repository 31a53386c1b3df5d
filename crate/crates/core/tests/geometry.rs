use std::f64::consts::TAU;

use nalgebra::{Matrix3, Rotation2, Vector2};
use porism_core::geom::{
    circle_conic_intersection, conic_from_matrix, line_conic_tangency_defect, tangents_from_point, Circle, Conic,
    ConicKind, Point, Triangle,
};
use porism_core::inversive::{
    dual_of_conic, invert_circle, invert_point, negative_pedal_of_circle, polar_of_point, pole_of_line, InversionCircle,
};
use porism_core::{perpendicular_at, Tolerance};
use proptest::prelude::*;

const TOL: Tolerance = Tolerance { eps: 1e-9, defect: 1e-7, scale: 1.0 };

fn pt() -> impl Strategy<Value = Point> {
    (-3.0..3.0_f64, -3.0..3.0_f64).prop_map(|(x, y)| Point::new(x, y))
}

fn circle() -> impl Strategy<Value = Circle> {
    (pt(), 0.3..2.5_f64).prop_map(|(c, r)| Circle::new(c, r).unwrap())
}

/// Matrix of the ellipse or hyperbola with the given center, axis angle and semi-axes.
fn central_conic(center: Point, angle: f64, a: f64, b: f64, hyperbola: bool) -> Conic {
    let rot = Rotation2::new(angle);
    let s = if hyperbola { -1.0 } else { 1.0 };
    let q = rot.matrix() * nalgebra::Matrix2::new(1.0 / (a * a), 0.0, 0.0, s / (b * b)) * rot.matrix().transpose();
    let c = Vector2::new(center.x, center.y);
    let lin = -(q * c);
    let k = c.dot(&(q * c)) - 1.0;
    conic_from_matrix(Matrix3::new(q[(0, 0)], q[(0, 1)], lin.x, q[(1, 0)], q[(1, 1)], lin.y, lin.x, lin.y, k)).unwrap()
}

fn conic() -> impl Strategy<Value = Conic> {
    (pt(), 0.0..TAU, 0.4..2.0_f64, 0.4..2.0_f64, any::<bool>())
        .prop_map(|(c, ang, a, b, h)| central_conic(c, ang, a, b, h))
}

fn triangle() -> impl Strategy<Value = Triangle> {
    (pt(), pt(), pt())
        .prop_filter("non-degenerate", |(a, b, c)| {
            let area = 0.5 * (*b - *a).cross(*c - *a).abs();
            let m = a.dist(*b).max(b.dist(*c)).max(c.dist(*a));
            area > 0.05 * m * m
        })
        .prop_map(|(a, b, c)| Triangle::new(a, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn circumcircle_passes_through_vertices(t in triangle()) {
        let c = t.circumcircle();
        for v in t.vertices() {
            prop_assert!(c.incidence_defect(v) < 1e-9 * c.radius().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tangents_from_exterior_points_are_tangent(k in conic(), p in pt()) {
        for l in tangents_from_point(p, &k, TOL).unwrap() {
            prop_assert!(l.distance(p) < 1e-9);
            prop_assert!(line_conic_tangency_defect(&l, &k).unwrap() < 1e-9);
        }
    }

    #[test]
    fn inversion_is_an_involution(center in pt(), k2 in 0.1..4.0_f64, p in pt()) {
        prop_assume!(p.dist(center) > 0.05);
        let inv = InversionCircle::new(center, k2).unwrap();
        let back = invert_point(invert_point(p, &inv, TOL).unwrap(), &inv, TOL).unwrap();
        prop_assert!(back.dist(p) < 1e-9 * (1.0 + p.norm()));
    }

    #[test]
    fn circle_inversion_maps_points_onto_image(center in pt(), k2 in 0.1..4.0_f64, c in circle(), t in 0.0..TAU) {
        prop_assume!((c.center.dist(center) - c.radius()).abs() > 0.05 && c.center.dist(center) > 0.01);
        let inv = InversionCircle::new(center, k2).unwrap();
        let img = invert_circle(&c, &inv, TOL).unwrap().circle().unwrap();
        let q = invert_point(c.point_at(t), &inv, TOL).unwrap();
        prop_assert!(img.incidence_defect(q) < 1e-8 * img.radius().max(1.0));
    }

    #[test]
    fn pole_polar_reciprocity(center in pt(), k2 in 0.1..4.0_f64, p in pt(), q in pt()) {
        prop_assume!(p.dist(center) > 0.05 && q.dist(center) > 0.05);
        let inv = InversionCircle::new(center, k2).unwrap();
        // La Hire: p lies on the polar of q exactly when q lies on the polar of p,
        // since both say (p − D)·(q − D) = k².
        let lp = polar_of_point(p, &inv, TOL).unwrap();
        let lq = polar_of_point(q, &inv, TOL).unwrap();
        // Both equal |(p − D)·(q − D) − k²|; line orientation is normalized, so compare magnitudes.
        let sp = lq.distance(p) * (q - center).norm();
        let sq = lp.distance(q) * (p - center).norm();
        prop_assert!((sp - sq).abs() < 1e-9 * (1.0 + sp.abs()));
        let back = pole_of_line(&lp, &inv, TOL).unwrap();
        prop_assert!(back.dist(p) < 1e-9 * (1.0 + p.norm()));
    }

    #[test]
    fn dual_is_an_involution(k in conic(), center in pt(), k2 in 0.2..3.0_f64) {
        let inv = InversionCircle::new(center, k2).unwrap();
        let kd = dual_of_conic(&k, &inv).unwrap();
        prop_assume!(kd.is_proper());
        let back = dual_of_conic(&kd, &inv).unwrap();
        prop_assert!(back.max_entry_diff(&k) < 1e-9, "diff {}", back.max_entry_diff(&k));
    }

    #[test]
    fn negative_pedal_two_paths_agree(c in circle(), ratio in 0.1..3.0_f64, ang in 0.0..TAU) {
        prop_assume!((ratio - 1.0).abs() > 0.01);
        let d = Point::polar(c.center, ratio * c.radius(), ang);
        let closed = negative_pedal_of_circle(&c, d, TOL).unwrap();
        let inv = InversionCircle::new(d, 1.0).unwrap();
        let inverse = invert_circle(&c, &inv, TOL).unwrap().circle().unwrap();
        let dual = dual_of_conic(&inverse.as_conic(), &inv).unwrap();
        prop_assert!(closed.max_entry_diff(&dual) < 1e-9, "diff {}", closed.max_entry_diff(&dual));
        let want = if ratio < 1.0 { ConicKind::Ellipse } else { ConicKind::Hyperbola };
        prop_assert_eq!(closed.kind(), want);
    }

    #[test]
    fn negative_pedal_envelopes_the_perpendiculars(c in circle(), ratio in 0.1..3.0_f64, ang in 0.0..TAU, t in 0.0..TAU) {
        prop_assume!((ratio - 1.0).abs() > 0.01);
        let d = Point::polar(c.center, ratio * c.radius(), ang);
        let p = c.point_at(t);
        prop_assume!(p.dist(d) > 1e-3);
        let k = negative_pedal_of_circle(&c, d, TOL).unwrap();
        let l = perpendicular_at(p, d, TOL).unwrap();
        prop_assert!(line_conic_tangency_defect(&l, &k).unwrap() < 1e-7);
    }
}

/// Brute-force root finding on a fine angular grid, refined by bisection.
fn brute_force_angles(c: &Circle, k: &Conic) -> Vec<f64> {
    let n = 20_000;
    let f = |t: f64| k.eval(c.point_at(t));
    let mut out = Vec::new();
    for i in 0..n {
        let (mut lo, mut hi) = (i as f64 * TAU / n as f64, (i + 1) as f64 * TAU / n as f64);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            out.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

#[test]
fn circle_conic_intersection_matches_brute_force() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 100 {
        let c = Circle::new(
            Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            rng.random_range(0.5..2.0),
        )
        .unwrap();
        let k = central_conic(
            Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            rng.random_range(0.0..TAU),
            rng.random_range(0.4..2.0),
            rng.random_range(0.4..2.0),
            rng.random_bool(0.5),
        );
        let want = brute_force_angles(&c, &k);
        // Skip near-tangent draws where grid sign changes are unreliable.
        let min_slope = want
            .iter()
            .map(|&t| {
                let p = c.point_at(t);
                let dp = Point::new(-t.sin(), t.cos());
                k.gradient(p).dot(dp).abs() / k.gradient(p).norm()
            })
            .fold(f64::INFINITY, f64::min);
        if min_slope < 1e-3 {
            continue;
        }
        let got: Vec<f64> = circle_conic_intersection(&c, &k, TOL).unwrap().iter().map(|p| c.angle_of(*p)).collect();
        assert_eq!(got.len(), want.len(), "got {got:?} want {want:?}");
        for (g, w) in got.iter().zip(&want) {
            let d = (g - w).abs();
            assert!(d.min(TAU - d) < 1e-7, "got {got:?} want {want:?}");
        }
        checked += 1;
    }
}
