//! One-scene verification: every porism claim that can be checked on a single
//! scene, as named pass/fail checks.

use crate::error::Result;
use crate::pedal::{self, PedalConfig};
use crate::porism::{
    cross_family_consistency, polar_porism_step, run_sweep, Algorithm, Outcome, PorismScene, PorismSweepReport,
};
use crate::tolerance::EPS_REL;

/// Bound on arc-classification disagreements per 1000 samples.
const ARC_DISAGREEMENTS_PER_1000: usize = 2;
/// Absolute tolerance for parallel corresponding sides.
const PARALLEL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, passed: value <= threshold }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub sweeps: Vec<PorismSweepReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the three sweeps with `samples` starts each, plus the cross-family,
/// homothety and inversion-radius checks on the fertile starts.
pub fn verify_scene(scene: &PorismScene, samples: usize) -> Result<VerifyReport> {
    let threshold = scene.acceptance_threshold();
    let r = scene.circumcircle().radius();
    let mut checks = Vec::new();

    let (dual_diff, seed_tangency) = scene.consistency_defects()?;
    checks.push(Check::at_most("inconic equals dual of polar circle", dual_diff, 1e3 * EPS_REL));
    checks.push(Check::at_most("seed sides tangent to inconic", seed_tangency, threshold));

    let mut sweeps = Vec::new();
    for alg in Algorithm::ALL {
        let rep = run_sweep(scene, alg, samples);
        let m = rep.max_defects();
        checks.push(Check::at_most(format!("{alg}: failed samples"), rep.failed() as f64, 0.0));
        checks.push(Check::at_most(format!("{alg}: max tangency defect"), m.tangency, threshold));
        checks.push(Check::at_most(format!("{alg}: max center error"), m.center_err, threshold));
        checks.push(Check::at_most(format!("{alg}: max radius error"), m.radius_err, threshold));
        checks.push(Check::at_most(format!("{alg}: max closure defect"), m.closure, threshold));
        let allowed = (ARC_DISAGREEMENTS_PER_1000 * samples).div_ceil(1000);
        checks.push(Check::at_most(
            format!("{alg}: arc classification disagreements"),
            rep.arc_disagreements() as f64,
            allowed as f64,
        ));
        if let Some(f) = rep.arc_fertile_fraction {
            checks.push(Check::at_most(
                format!("{alg}: infertile fraction vs arc length"),
                (rep.infertile_fraction() - (1.0 - f)).abs(),
                0.01,
            ));
        }
        sweeps.push(rep);
    }

    // Starts constructed by both the pedal and the polar sweep.
    let shared: Vec<f64> = sweeps[0]
        .records
        .iter()
        .zip(&sweeps[1].records)
        .filter(|(a, b)| a.outcome == Outcome::Constructed && b.outcome == Outcome::Constructed)
        .map(|(a, _)| a.start_angle)
        .collect();

    let mut gap = 0.0_f64;
    let mut np_err = 0.0_f64;
    let mut parallel = 0.0_f64;
    let mut spread = 0.0_f64;
    for &angle in &shared {
        let rec = cross_family_consistency(scene, scene.start_point(angle))?;
        gap = gap.max(rec.algorithm_gap);
        np_err = np_err.max(rec.negative_pedal_center_err).max(rec.negative_pedal_radius_err);
        parallel = parallel.max(rec.homothety.parallel_defect);
        spread = spread.max(rec.homothety.ratio_spread);
    }
    checks.push(Check::at_most("pedal and polar triangles coincide", gap, threshold));
    checks.push(Check::at_most("negative-pedal circle is shared", np_err, threshold));
    checks.push(Check::at_most("negative-pedal and polar sides parallel", parallel, PARALLEL_TOL));
    checks.push(Check::at_most("negative-pedal to polar side-ratio spread", spread, 1e-7));

    let scaled = scene.with_inversion_radius_sq(scene.inversion().radius_sq() * 100.0)?;
    let mut rescale = 0.0_f64;
    for &angle in &shared {
        let start = scene.start_point(angle);
        let (t1, _) = polar_porism_step(scene, start)?;
        let (t2, _) = polar_porism_step(&scaled, start)?;
        rescale = rescale.max(t1.labeled_distance(&t2));
    }
    checks.push(Check::at_most("polar triangle independent of inversion radius", rescale, EPS_REL * r));

    // Incenter ground case: each family member's pedal circle is its incircle.
    if scene.seed().incenter().dist(scene.pedal_point()) <= scene.tolerance().eps {
        let tol = scene.tolerance();
        let (mut tangency, mut euler) = (0.0_f64, 0.0_f64);
        for &angle in &shared {
            let t = crate::porism::pedal_porism_step(scene, scene.start_point(angle))?;
            let cfg = PedalConfig::new(t, scene.pedal_point(), tol)?;
            let pc = pedal::pedal_circle(&cfg, tol)?;
            tangency = tangency.max(pedal::side_tangency_to_circle(&t, &pc, tol)?);
            let circ = t.circumcircle();
            let od2 = circ.center.dist(scene.pedal_point()).powi(2);
            euler = euler.max((od2 - circ.radius() * (circ.radius() - 2.0 * t.inradius())).abs());
        }
        checks.push(Check::at_most("incenter: pedal circle is the incircle", tangency, threshold));
        checks.push(Check::at_most("incenter: Euler relation", euler, threshold * r));
    }

    Ok(VerifyReport { checks, sweeps })
}
