use std::f64::consts::TAU;

use crate::error::Result;
use crate::geom::intersect::circle_conic_angles;
use crate::geom::{normalize_angle, tangents_from_point, Circle, Conic};
use crate::tolerance::Tolerance;

/// Counterclockwise half-open angular intervals `[start, end)` on a circle.
/// `end` may exceed `2π` for an interval wrapping past angle zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FertileArcs {
    intervals: Vec<(f64, f64)>,
}

impl FertileArcs {
    pub fn full() -> Self {
        Self { intervals: vec![(0.0, TAU)] }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0].1 - self.intervals[0].0 >= TAU
    }

    pub fn contains(&self, angle: f64) -> bool {
        let a = normalize_angle(angle);
        self.intervals.iter().any(|&(s, e)| (a >= s && a < e) || (a + TAU >= s && a + TAU < e))
    }

    /// Total fertile angle.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(s, e)| e - s).sum()
    }

    /// Fraction of the circle that is fertile.
    pub fn fraction(&self) -> f64 {
        self.measure() / TAU
    }

    /// Distance, in radians, from `angle` to the nearest arc endpoint.
    pub fn boundary_distance(&self, angle: f64) -> f64 {
        if self.is_full() {
            return f64::INFINITY;
        }
        let a = normalize_angle(angle);
        self.intervals
            .iter()
            .flat_map(|&(s, e)| [s, normalize_angle(e)])
            .map(|b| {
                let d = (a - b).abs();
                d.min(TAU - d)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Arcs of `c` whose points see two tangents to `k`.
pub fn fertile_arcs(c: &Circle, k: &Conic, tol: Tolerance) -> Result<FertileArcs> {
    let fertile_at = |angle: f64| -> Result<bool> { Ok(tangents_from_point(c.point_at(angle), k, tol)?.len() == 2) };
    let cuts = circle_conic_angles(c, k, tol)?;
    if cuts.is_empty() {
        return Ok(if fertile_at(0.0)? { FertileArcs::full() } else { FertileArcs { intervals: Vec::new() } });
    }
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for (i, &s) in cuts.iter().enumerate() {
        let e = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + TAU };
        if !fertile_at(0.5 * (s + e))? {
            continue;
        }
        // Join with the previous arc across a tangential touch point.
        match intervals.last_mut() {
            Some(last) if last.1 == s => last.1 = e,
            _ => intervals.push((s, e)),
        }
    }
    if intervals.len() > 1 {
        let first = intervals[0];
        let last = intervals[intervals.len() - 1];
        if last.1 - TAU == first.0 {
            intervals.pop();
            intervals[0] = (last.0, first.1 + TAU);
        }
    }
    if intervals.len() == 1 && intervals[0].1 - intervals[0].0 >= TAU {
        return Ok(FertileArcs::full());
    }
    // Keep starts within [0, 2π) and the list sorted by start.
    for iv in &mut intervals {
        if iv.0 >= TAU {
            *iv = (iv.0 - TAU, iv.1 - TAU);
        }
    }
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(FertileArcs { intervals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{conic_from_matrix, Point};
    use nalgebra::{Matrix3, Vector3};

    fn unit() -> Circle {
        Circle::new(Point::ORIGIN, 1.0).unwrap()
    }

    #[test]
    fn concentric_small_circle_leaves_everything_fertile() {
        let k = Circle::new(Point::ORIGIN, 0.5).unwrap().as_conic();
        let arcs = fertile_arcs(&unit(), &k, Tolerance::default()).unwrap();
        assert!(arcs.is_full());
        assert!(arcs.contains(1.0));
    }

    #[test]
    fn enclosing_circle_leaves_nothing() {
        let k = Circle::new(Point::ORIGIN, 2.0).unwrap().as_conic();
        let arcs = fertile_arcs(&unit(), &k, Tolerance::default()).unwrap();
        assert!(arcs.intervals().is_empty());
    }

    #[test]
    fn tangent_hyperbola_matches_tangent_count_oracle() {
        // x² − y²/3 = 1 touches the unit circle at (±1, 0).
        let k = conic_from_matrix(Matrix3::from_diagonal(&Vector3::new(1.0, -1.0 / 3.0, -1.0))).unwrap();
        let c = unit();
        let tol = Tolerance::default();
        let arcs = fertile_arcs(&c, &k, tol).unwrap();
        for i in 0..360 {
            let a = (i as f64 + 0.5) * TAU / 360.0;
            let oracle = tangents_from_point(c.point_at(a), &k, tol).unwrap().len() == 2;
            assert_eq!(arcs.contains(a), oracle, "angle {a}");
        }
    }

    #[test]
    fn secant_ellipse_has_two_arcs() {
        // Ellipse x²/4 + y²/0.25 = 1 crosses the unit circle four times; points
        // near (0, ±1) are outside it.
        let k = conic_from_matrix(Matrix3::from_diagonal(&Vector3::new(0.25, 4.0, -1.0))).unwrap();
        let arcs = fertile_arcs(&unit(), &k, Tolerance::default()).unwrap();
        assert_eq!(arcs.intervals().len(), 2);
        assert!(arcs.contains(std::f64::consts::FRAC_PI_2));
        assert!(!arcs.contains(0.0));
        let expected = {
            // cos²θ/4 + 4 sin²θ = 1  ->  sin²θ = 3/15
            let s = (0.2_f64).sqrt().asin();
            2.0 * (std::f64::consts::PI - 2.0 * s)
        };
        assert!((arcs.measure() - expected).abs() < 1e-9);
    }
}
