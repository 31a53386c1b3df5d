//! Scene-scaled tolerances.
//!
//! Two tiers are used throughout the crate: `eps` for primitive predicates
//! (coincidence, incidence, tangency classification of a single intersection)
//! and `defect` for "on curve" / "tangent" claims at the end of a construction
//! chain, where rounding has had several steps to grow.

/// Relative size of the primitive tolerance with respect to the scene diameter.
pub const EPS_REL: f64 = 1e-9;

/// Relative size of the chained-construction defect threshold.
pub const DEFECT_REL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Primitive tolerance, in scene units.
    pub eps: f64,
    /// Threshold for construction-chain defects, in scene units.
    pub defect: f64,
    /// The scene diameter these were derived from.
    pub scale: f64,
}

impl Tolerance {
    pub fn for_scale(scale: f64) -> Self {
        let scale = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
        Self { eps: EPS_REL * scale, defect: DEFECT_REL * scale, scale }
    }

    /// Multiplies the defect threshold, leaving the primitive tolerance alone.
    pub fn with_defect_scale(mut self, factor: f64) -> Self {
        self.defect *= factor;
        self
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::for_scale(1.0)
    }
}
