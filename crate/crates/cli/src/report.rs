use std::io::Write;

use porism_core::porism::SweepRecord;
use porism_core::PorismSweepReport;

pub const HEADER: [&str; 8] = [
    "start_angle",
    "outcome",
    "tangency_defect",
    "center_err",
    "radius_err",
    "closure_defect",
    "expected_fertile",
    "status",
];

fn num(x: f64) -> String {
    format!("{x:.6e}")
}

fn row(r: &SweepRecord) -> [String; 8] {
    let d = r.defects;
    let field = |f: fn(&porism_core::porism::Defects) -> f64| d.as_ref().map(|d| num(f(d))).unwrap_or_default();
    [
        format!("{:.12}", r.start_angle),
        r.outcome.to_string(),
        field(|d| d.tangency),
        field(|d| d.center_err),
        field(|d| d.radius_err),
        field(|d| d.closure),
        r.expected_fertile.map(|f| f.to_string()).unwrap_or_default(),
        if r.passed { "ok" } else { "FAILED" }.to_string(),
    ]
}

/// One row per sample, in start-angle order.
pub fn write_csv<W: Write>(report: &PorismSweepReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in &report.records {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}
