//! The three porism constructions, infertile-arc computation and sweep-based
//! verification.

mod arcs;
mod consistency;
mod scene;
mod steps;
mod sweep;

pub use arcs::{fertile_arcs, FertileArcs};
pub use consistency::{cross_family_consistency, ConsistencyRecord};
pub use scene::PorismScene;
pub use steps::{
    evaluate_negative_pedal, evaluate_pedal, evaluate_polar, negative_pedal_porism_step, pedal_porism_step,
    polar_porism_step, Construction, Defects,
};
pub use sweep::{run_sweep, Outcome, PorismSweepReport, SweepRecord};

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Thales circle on the start and the pedal point against the pedal circle.
    Pedal,
    /// Polars against the circumcircle of the polar triangle.
    Polar,
    /// Perpendiculars against the negative-pedal circle.
    NegativePedal,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Pedal, Algorithm::Polar, Algorithm::NegativePedal];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pedal => "pedal",
            Algorithm::Polar => "polar",
            Algorithm::NegativePedal => "negative-pedal",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pedal" => Ok(Algorithm::Pedal),
            "polar" => Ok(Algorithm::Polar),
            "negative-pedal" | "negative_pedal" => Ok(Algorithm::NegativePedal),
            other => Err(format!("unknown algorithm `{other}` (expected pedal|polar|negative-pedal)")),
        }
    }
}
