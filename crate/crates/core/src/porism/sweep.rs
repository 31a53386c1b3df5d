use std::f64::consts::TAU;
use std::fmt;

use rayon::prelude::*;

use crate::error::GeomError;

use super::steps::{Construction, Defects};
use super::{fertile_arcs, Algorithm, PorismScene};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Constructed,
    Infertile,
    Degenerate,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Constructed => "constructed",
            Outcome::Infertile => "infertile",
            Outcome::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub start_angle: f64,
    pub outcome: Outcome,
    /// Fertility predicted from the circumcircle/inconic arcs, when they could be computed.
    pub expected_fertile: Option<bool>,
    /// Angular distance to the nearest arc endpoint.
    pub boundary_distance: f64,
    /// Present for constructed samples.
    pub defects: Option<Defects>,
    /// False for constructed samples with a defect above the threshold.
    pub passed: bool,
    /// Why construction stopped, for degenerate samples.
    pub error: Option<GeomError>,
}

impl SweepRecord {
    /// The sweep classification contradicts the arc prediction.
    pub fn disagrees_with_arcs(&self) -> bool {
        matches!(
            (self.outcome, self.expected_fertile),
            (Outcome::Constructed, Some(false)) | (Outcome::Infertile, Some(true))
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PorismSweepReport {
    pub algorithm: Algorithm,
    pub threshold: f64,
    /// Fertile fraction of the circumcircle from the arc computation.
    pub arc_fertile_fraction: Option<f64>,
    /// In start-angle order.
    pub records: Vec<SweepRecord>,
}

impl PorismSweepReport {
    fn count(&self, o: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == o).count()
    }

    pub fn constructed(&self) -> usize {
        self.count(Outcome::Constructed)
    }

    pub fn infertile(&self) -> usize {
        self.count(Outcome::Infertile)
    }

    pub fn degenerate(&self) -> usize {
        self.count(Outcome::Degenerate)
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| !r.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn arc_disagreements(&self) -> usize {
        self.records.iter().filter(|r| r.disagrees_with_arcs()).count()
    }

    pub fn infertile_fraction(&self) -> f64 {
        self.infertile() as f64 / self.records.len().max(1) as f64
    }

    /// Largest value of each defect over constructed samples, in record order.
    pub fn max_defects(&self) -> Defects {
        let mut m = Defects::default();
        for d in self.records.iter().filter_map(|r| r.defects.as_ref()) {
            m.tangency = m.tangency.max(d.tangency);
            m.center_err = m.center_err.max(d.center_err);
            m.radius_err = m.radius_err.max(d.radius_err);
            m.closure = m.closure.max(d.closure);
        }
        m
    }
}

/// Runs `algorithm` from `n_samples` uniformly spaced start angles on the
/// circumcircle. Samples run in parallel; records come back in angle order.
pub fn run_sweep(scene: &PorismScene, algorithm: Algorithm, n_samples: usize) -> PorismSweepReport {
    let n = n_samples.max(1);
    let threshold = scene.acceptance_threshold();
    let arcs = fertile_arcs(scene.circumcircle(), scene.inconic(), scene.tolerance()).ok();
    let records = (0..n)
        .into_par_iter()
        .map(|i| {
            let start_angle = i as f64 * TAU / n as f64;
            let expected_fertile = arcs.as_ref().map(|a| a.contains(start_angle));
            let boundary_distance = arcs.as_ref().map_or(f64::INFINITY, |a| a.boundary_distance(start_angle));
            let base = SweepRecord {
                start_angle,
                outcome: Outcome::Degenerate,
                expected_fertile,
                boundary_distance,
                defects: None,
                passed: true,
                error: None,
            };
            match Construction::run(scene, algorithm, scene.start_point(start_angle)) {
                Ok(c) => SweepRecord {
                    outcome: Outcome::Constructed,
                    passed: c.defects.passes(threshold),
                    defects: Some(c.defects),
                    ..base
                },
                Err(GeomError::InfertileStart) => SweepRecord { outcome: Outcome::Infertile, ..base },
                Err(e) => SweepRecord { error: Some(e), ..base },
            }
        })
        .collect();
    PorismSweepReport { algorithm, threshold, arc_fertile_fraction: arcs.map(|a| a.fraction()), records }
}
