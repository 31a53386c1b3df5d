use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use porism_core::porism::Construction;
use porism_core::verify::verify_scene;
use porism_core::{Algorithm, GeomError, PorismScene};

use crate::error::CliError;
use crate::figure::{render_svg, FigureSpec};
use crate::report::write_csv;
use crate::scene_file::parse_scene_file;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Error = 1,
    Infertile = 2,
    ThresholdFailure = 3,
}

#[derive(Debug, Parser)]
#[command(name = "porism", version, about = "Triangle porisms around a pedal point: construct, sweep, verify, draw")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    /// Scene JSON file.
    #[arg(long)]
    pub scene: PathBuf,
    /// Overrides the scene's inversion radius squared.
    #[arg(long = "inversion-r2", allow_negative_numbers = true)]
    pub inversion_r2: Option<f64>,
    /// Multiplies the defect threshold.
    #[arg(long = "tolerance-scale", default_value_t = 1.0, allow_negative_numbers = true)]
    pub tolerance_scale: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one porism step and print the triangle and its defects.
    Construct {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, default_value = "pedal")]
        algorithm: Algorithm,
        /// Start angle on the circumcircle, in radians.
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
    },
    /// Sweep uniformly spaced starts and write a CSV report.
    Sweep {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, default_value = "pedal")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the scene as SVG.
    Figure {
        #[command(flatten)]
        scene: SceneArgs,
        /// Figure spec JSON; draws an overview when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every porism check on the scene.
    Verify {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn load(args: &SceneArgs) -> Result<(PorismScene, Option<[String; 3]>), CliError> {
    let text = std::fs::read_to_string(&args.scene).map_err(|e| CliError::io(&args.scene, e))?;
    let mut file = parse_scene_file(&text)?;
    if let Some(r2) = args.inversion_r2 {
        file.inversion_radius_sq = r2;
    }
    if !(args.tolerance_scale.is_finite() && args.tolerance_scale > 0.0) {
        return Err(CliError::Usage(format!("tolerance scale {} must be positive", args.tolerance_scale)));
    }
    let scene = file.to_scene()?.with_threshold_factor(args.tolerance_scale);
    Ok((scene, file.labels))
}

/// Formats `x` with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=11).contains(&mag) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn write_triangle(out: &mut dyn Write, title: &str, t: &porism_core::Triangle) -> std::io::Result<()> {
    writeln!(out, "{title}:")?;
    for (name, v) in ["A", "B", "C"].iter().zip(t.vertices()) {
        writeln!(out, "  {name} {} {}", sig12(v.x), sig12(v.y))?;
    }
    Ok(())
}

fn construct(scene: &PorismScene, algorithm: Algorithm, start: f64, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let c = match Construction::run(scene, algorithm, scene.start_point(start)) {
        Ok(c) => c,
        Err(GeomError::InfertileStart) => return Ok(ExitCode::Infertile),
        Err(e) => return Err(e.into()),
    };
    let threshold = scene.acceptance_threshold();
    let io = |e| CliError::io("<stdout>", e);
    (|| -> std::io::Result<()> {
        writeln!(out, "algorithm: {algorithm}")?;
        writeln!(out, "start: {}", sig12(start))?;
        write_triangle(out, "triangle", &c.triangle)?;
        if let Some(tc) = &c.companion {
            let title = match algorithm {
                Algorithm::Polar => "polar triangle",
                _ => "negative-pedal triangle",
            };
            write_triangle(out, title, tc)?;
        }
        let d = c.defects;
        writeln!(out, "tangency_defect: {:.3e}", d.tangency)?;
        writeln!(out, "center_err: {:.3e}", d.center_err)?;
        writeln!(out, "radius_err: {:.3e}", d.radius_err)?;
        writeln!(out, "closure_defect: {:.3e}", d.closure)?;
        writeln!(out, "threshold: {threshold:.3e}")?;
        writeln!(out, "status: {}", if d.passes(threshold) { "pass" } else { "FAILED" })
    })()
    .map_err(io)?;
    Ok(if c.defects.passes(threshold) { ExitCode::Success } else { ExitCode::ThresholdFailure })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn sweep(
    scene: &PorismScene,
    algorithm: Algorithm,
    samples: usize,
    path: &Path,
    out: &mut dyn Write,
) -> Result<ExitCode, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let mut file = create(path)?;
    let report = porism_core::porism::run_sweep(scene, algorithm, samples);
    write_csv(&report, &mut file).map_err(|e| CliError::io(path, e.into()))?;
    file.flush().map_err(|e| CliError::io(path, e))?;
    let m = report.max_defects();
    writeln!(
        out,
        "{algorithm}: {} constructed, {} infertile, {} degenerate, {} failed; max defects: tangency {:.3e}, center {:.3e}, radius {:.3e}, closure {:.3e} (threshold {:.3e})",
        report.constructed(),
        report.infertile(),
        report.degenerate(),
        report.failed(),
        m.tangency,
        m.center_err,
        m.radius_err,
        m.closure,
        report.threshold
    )
    .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(if report.all_passed() { ExitCode::Success } else { ExitCode::ThresholdFailure })
}

fn figure(
    scene: &PorismScene,
    labels: Option<&[String; 3]>,
    spec: Option<&Path>,
    path: &Path,
) -> Result<ExitCode, CliError> {
    let spec = match spec {
        Some(p) => FigureSpec::parse(&std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?)?,
        None => FigureSpec::overview(),
    };
    let svg = render_svg(scene, &spec, labels)?;
    let mut file = create(path)?;
    file.write_all(svg.as_bytes()).and_then(|_| file.flush()).map_err(|e| CliError::io(path, e))?;
    Ok(ExitCode::Success)
}

fn verify(scene: &PorismScene, samples: usize, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let report = verify_scene(scene, samples.max(1))?;
    for c in &report.checks {
        writeln!(
            out,
            "{} {}: {:.3e} (limit {:.3e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        )
        .map_err(|e| CliError::io("<stdout>", e))?;
    }
    Ok(if report.all_passed() { ExitCode::Success } else { ExitCode::ThresholdFailure })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Construct { scene, algorithm, start } => construct(&load(scene)?.0, *algorithm, *start, out),
        Command::Sweep { scene, algorithm, samples, out: path } => {
            sweep(&load(scene)?.0, *algorithm, *samples, path, out)
        }
        Command::Figure { scene, spec, out: path } => {
            let (s, labels) = load(scene)?;
            figure(&s, labels.as_ref(), spec.as_deref(), path)
        }
        Command::Verify { scene, samples } => verify(&load(scene)?.0, *samples, out),
    }
}

/// Runs `cli`, printing results to `out` and failures to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    match dispatch(cli, out) {
        Ok(ExitCode::Infertile) => {
            let _ = writeln!(err, "{}", GeomError::InfertileStart);
            ExitCode::Infertile
        }
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::Error
        }
    }
}
