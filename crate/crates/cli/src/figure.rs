use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use porism_core::porism::{fertile_arcs, Construction};
use porism_core::{Algorithm, Circle, Conic, ConicKind, Point, PorismScene, Triangle};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

const WIDTH_PX: f64 = 800.0;
const PAD: f64 = 0.08;
/// Conic polylines are refined until midpoint deviation is below this fraction
/// of the viewport diagonal, keeping true chord deviation under 0.1%.
const CHORD_REL: f64 = 5e-4;
const MAX_DEPTH: u32 = 18;

/// Which derived objects to draw.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FigureSpec {
    pub circumcircle: bool,
    pub pedal_circle: bool,
    pub inconic: bool,
    pub polar_caustic: bool,
    pub negative_pedal_caustic: bool,
    pub polar_circle: bool,
    pub negative_pedal_circle: bool,
    pub seed_triangle: bool,
    pub pedal_point: bool,
    /// Highlight the infertile arcs of the circumcircle.
    pub fertile_arcs: bool,
    /// Algorithms run from each start; `pedal` when empty. Polar and
    /// negative-pedal runs also draw their companion triangle.
    pub algorithms: Vec<String>,
    /// Start angles, in `[0, 2π)`, of the constructed triangles.
    pub starts: Vec<f64>,
    pub style: Style,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Style {
    /// Stroke width in pixels.
    pub stroke_width: Option<f64>,
    /// Stroke color per element class, overriding the defaults.
    pub colors: BTreeMap<String, String>,
}

impl FigureSpec {
    /// Circumcircle, pedal circle, inconic, seed triangle, pedal point and arcs.
    pub fn overview() -> Self {
        Self {
            circumcircle: true,
            pedal_circle: true,
            inconic: true,
            seed_triangle: true,
            pedal_point: true,
            fertile_arcs: true,
            ..Self::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Parse { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
        })
    }

    fn algorithms(&self) -> Result<Vec<Algorithm>, CliError> {
        if self.algorithms.is_empty() {
            return Ok(vec![Algorithm::Pedal]);
        }
        self.algorithms.iter().map(|s| s.parse().map_err(CliError::Usage)).collect()
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.starts.iter().find(|t| !(0.0..TAU).contains(*t)) {
            return Err(CliError::Usage(format!("start angle {t} outside [0, 2π)")));
        }
        if let Some(w) = self.style.stroke_width {
            if !(w.is_finite() && w > 0.0) {
                return Err(CliError::Usage(format!("stroke width {w} must be positive")));
            }
        }
        self.algorithms().map(|_| ())
    }
}

const DEFAULT_COLORS: [(&str, &str); 13] = [
    ("frame", "#999999"),
    ("axis", "#dddddd"),
    ("circumcircle", "#1f4e9c"),
    ("pedal-circle", "#2b8a3e"),
    ("polar-circle", "#7b2cbf"),
    ("negative-pedal-circle", "#c2410c"),
    ("inconic", "#2b8a3e"),
    ("polar-caustic", "#7b2cbf"),
    ("negative-pedal-caustic", "#c2410c"),
    ("infertile-arc", "#d00000"),
    ("seed", "#000000"),
    ("constructed", "#555555"),
    ("pedal-point", "#000000"),
];

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn empty() -> Self {
        Self { min: Point::new(f64::INFINITY, f64::INFINITY), max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn add(&mut self, p: Point) {
        self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn add_circle(&mut self, c: &Circle) {
        let r = c.radius();
        self.add(c.center + Point::new(r, r));
        self.add(c.center - Point::new(r, r));
    }

    fn padded(self, f: f64) -> Self {
        let d = self.max - self.min;
        let m = f * d.x.max(d.y);
        Self { min: self.min - Point::new(m, m), max: self.max + Point::new(m, m) }
    }

    fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    fn diagonal(&self) -> f64 {
        self.max.dist(self.min)
    }
}

/// Maps scene coordinates to pixels, flipping y.
struct View {
    b: Bounds,
    scale: f64,
}

impl View {
    fn x(&self, p: Point) -> f64 {
        (p.x - self.b.min.x) * self.scale
    }
    fn y(&self, p: Point) -> f64 {
        (self.b.max.y - p.y) * self.scale
    }
    fn xy(&self, p: Point) -> String {
        format!("{:.3},{:.3}", self.x(p), self.y(p))
    }
}

fn sample_adaptive(f: &dyn Fn(f64) -> Point, t0: f64, t1: f64, tol: f64) -> Vec<Point> {
    fn refine(f: &dyn Fn(f64) -> Point, a: (f64, Point), b: (f64, Point), tol: f64, depth: u32, out: &mut Vec<Point>) {
        let tm = 0.5 * (a.0 + b.0);
        let m = f(tm);
        let chord = b.1 - a.1;
        let len = chord.norm();
        let dev = if len > 0.0 { (m - a.1).cross(chord).abs() / len } else { m.dist(a.1) };
        if dev > tol && depth < MAX_DEPTH {
            refine(f, a, (tm, m), tol, depth + 1, out);
            refine(f, (tm, m), b, tol, depth + 1, out);
        } else {
            out.push(b.1);
        }
    }
    let n = 32;
    let mut out = vec![f(t0)];
    for i in 0..n {
        let a = t0 + (t1 - t0) * i as f64 / n as f64;
        let b = t0 + (t1 - t0) * (i + 1) as f64 / n as f64;
        refine(f, (a, f(a)), (b, f(b)), tol, 0, &mut out);
    }
    out
}

/// Splits a polyline into the runs that enter `clip`, keeping one point past
/// each crossing so the drawn curve reaches the edge.
fn clip_runs(points: &[Point], clip: &Bounds) -> Vec<Vec<Point>> {
    let mut runs = Vec::new();
    let mut cur: Vec<Point> = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        if clip.contains(p) {
            if cur.is_empty() && i > 0 {
                cur.push(points[i - 1]);
            }
            cur.push(p);
        } else if !cur.is_empty() {
            cur.push(p);
            runs.push(std::mem::take(&mut cur));
        }
    }
    if cur.len() >= 2 {
        runs.push(cur);
    }
    runs
}

fn conic_polylines(k: &Conic, view: &Bounds) -> Option<Vec<Vec<Point>>> {
    let cf = k.central_form().ok()?;
    let tol = CHORD_REL * view.diagonal();
    let clip = view.padded(0.02);
    match k.kind() {
        ConicKind::Ellipse | ConicKind::Circle => {
            let pts = sample_adaptive(&|t| cf.ellipse_point(t), 0.0, TAU, tol);
            Some(clip_runs(&pts, &clip))
        }
        ConicKind::Hyperbola => {
            let reach = cf.center.dist(clip.min.midpoint(clip.max)) + clip.diagonal();
            let t_max = (reach / cf.a.min(cf.b)).max(1.0).acosh() + 0.1;
            let mut runs = Vec::new();
            for branch in [1.0, -1.0] {
                let pts = sample_adaptive(&|t| cf.hyperbola_point(branch, t), -t_max, t_max, tol);
                runs.extend(clip_runs(&pts, &clip));
            }
            Some(runs)
        }
        _ => None,
    }
}

/// Infertile arcs of the circumcircle as `(start, end)` angles.
fn infertile_intervals(scene: &PorismScene) -> Vec<(f64, f64)> {
    let Ok(arcs) = fertile_arcs(scene.circumcircle(), scene.inconic(), scene.tolerance()) else {
        return Vec::new();
    };
    let iv = arcs.intervals();
    if iv.is_empty() {
        return vec![(0.0, PI), (PI, TAU)];
    }
    let mut out = Vec::new();
    for i in 0..iv.len() {
        let end = iv[i].1;
        let next = if i + 1 < iv.len() { iv[i + 1].0 } else { iv[0].0 + TAU };
        if next - end > 1e-12 {
            out.push((end, next));
        }
    }
    out
}

fn triangle_edges(svg: &mut String, view: &View, t: &Triangle, class: &str, role: &str) {
    let v = t.vertices();
    let _ = writeln!(svg, "<g class=\"{class}\" data-role=\"{role}\">");
    for i in 0..3 {
        let (p, q) = (v[i], v[(i + 1) % 3]);
        let _ = writeln!(
            svg,
            "<line class=\"edge\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            view.x(p),
            view.y(p),
            view.x(q),
            view.y(q)
        );
    }
    let _ = writeln!(svg, "</g>");
}

/// SVG 1.1 drawing of `scene` per `spec`. Identical inputs give identical bytes.
pub fn render_svg(scene: &PorismScene, spec: &FigureSpec, labels: Option<&[String; 3]>) -> Result<String, CliError> {
    spec.validate()?;
    let algorithms = spec.algorithms()?;

    let mut notes = Vec::new();
    let mut constructed = Vec::new();
    for &alg in &algorithms {
        for &t in &spec.starts {
            match Construction::run(scene, alg, scene.start_point(t)) {
                Ok(c) => constructed.push((t, c)),
                Err(e) => notes.push(format!("{alg} start {t:.12}: {e}")),
            }
        }
    }

    let circles: Vec<(&str, &Circle)> = [
        (spec.circumcircle, "circumcircle", scene.circumcircle()),
        (spec.pedal_circle, "pedal-circle", scene.pedal_circle()),
        (spec.polar_circle, "polar-circle", scene.polar_circle()),
        (spec.negative_pedal_circle, "negative-pedal-circle", scene.negative_pedal_circle()),
    ]
    .into_iter()
    .filter(|(on, _, _)| *on)
    .map(|(_, name, c)| (name, c))
    .collect();

    let mut b = Bounds::empty();
    b.add_circle(scene.circumcircle());
    b.add(scene.pedal_point());
    for (_, c) in &circles {
        b.add_circle(c);
    }
    for (_, c) in &constructed {
        for t in std::iter::once(&c.triangle).chain(c.companion.as_ref()) {
            for v in t.vertices() {
                b.add(v);
            }
        }
    }
    let b = b.padded(PAD);
    let size = b.max - b.min;
    let view = View { b, scale: WIDTH_PX / size.x };
    let (w, h) = (WIDTH_PX, size.y * view.scale);
    let stroke = spec.style.stroke_width.unwrap_or(1.5);

    let mut colors: BTreeMap<&str, &str> = DEFAULT_COLORS.into_iter().collect();
    for (k, v) in &spec.style.colors {
        colors.insert(k.as_str(), v.as_str());
    }

    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">"
    );
    let _ = writeln!(svg, "<style type=\"text/css\"><![CDATA[");
    let _ = writeln!(svg, "* {{ fill: none; stroke-width: {stroke:.3}; }}");
    for (class, color) in &colors {
        let _ = writeln!(svg, ".{class}, .{class} .edge {{ stroke: {color}; }}");
    }
    let _ = writeln!(svg, ".infertile-arc {{ stroke-width: {:.3}; }}", 3.0 * stroke);
    let _ = writeln!(svg, ".axis {{ stroke-dasharray: 4 4; }}");
    let _ = writeln!(svg, "text {{ fill: #000000; stroke: none; font: 14px sans-serif; }}");
    let _ = writeln!(svg, "]]></style>");
    for n in &notes {
        let _ = writeln!(svg, "<!-- {n} -->");
    }
    let _ = writeln!(svg, "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"{w:.3}\" height=\"{h:.3}\"/>");
    if b.contains(Point::new(0.0, b.min.y)) {
        let (p, q) = (Point::new(0.0, b.min.y), Point::new(0.0, b.max.y));
        let _ = writeln!(
            svg,
            "<line class=\"axis\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            view.x(p),
            view.y(p),
            view.x(q),
            view.y(q)
        );
    }
    if b.contains(Point::new(b.min.x, 0.0)) {
        let (p, q) = (Point::new(b.min.x, 0.0), Point::new(b.max.x, 0.0));
        let _ = writeln!(
            svg,
            "<line class=\"axis\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            view.x(p),
            view.y(p),
            view.x(q),
            view.y(q)
        );
    }

    for (class, c) in &circles {
        let _ = writeln!(
            svg,
            "<circle class=\"{class}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\"/>",
            view.x(c.center),
            view.y(c.center),
            c.radius() * view.scale
        );
    }

    let conics = [
        (spec.inconic, "inconic", scene.inconic()),
        (spec.polar_caustic, "polar-caustic", scene.polar_caustic()),
        (spec.negative_pedal_caustic, "negative-pedal-caustic", scene.negative_pedal_caustic()),
    ];
    for (_, class, k) in conics.iter().filter(|c| c.0) {
        match conic_polylines(k, &b) {
            Some(runs) => {
                for run in runs {
                    let pts: Vec<String> = run.iter().map(|p| view.xy(*p)).collect();
                    let _ = writeln!(svg, "<polyline class=\"{class}\" points=\"{}\"/>", pts.join(" "));
                }
            }
            None => {
                let _ = writeln!(svg, "<!-- {class}: no drawable central form -->");
            }
        }
    }

    if spec.fertile_arcs {
        let c = scene.circumcircle();
        let r = c.radius() * view.scale;
        for (s, e) in infertile_intervals(scene) {
            let (p, q) = (c.point_at(s), c.point_at(e));
            let large = if e - s > PI { 1 } else { 0 };
            // Counterclockwise in scene coordinates is sweep-flag 0 once y is flipped.
            let _ = writeln!(
                svg,
                "<path class=\"infertile-arc\" d=\"M {} A {r:.3} {r:.3} 0 {large} 0 {}\"/>",
                view.xy(p),
                view.xy(q)
            );
        }
    }

    if spec.seed_triangle {
        triangle_edges(&mut svg, &view, scene.seed(), "seed", "seed");
        if let Some(labels) = labels {
            for (v, l) in scene.seed().vertices().iter().zip(labels) {
                let _ = writeln!(
                    svg,
                    "<text x=\"{:.3}\" y=\"{:.3}\">{}</text>",
                    view.x(*v) + 6.0,
                    view.y(*v) - 6.0,
                    xml_escape(l)
                );
            }
        }
    }
    for (t, c) in &constructed {
        let role = format!("{} {t:.12}", c.algorithm);
        triangle_edges(&mut svg, &view, &c.triangle, "constructed", &role);
        if let Some(tc) = &c.companion {
            let kind = match c.algorithm {
                Algorithm::Polar => "polar",
                _ => "negative-pedal",
            };
            triangle_edges(&mut svg, &view, tc, "constructed companion", &format!("{role} {kind}"));
        }
    }
    if spec.pedal_point {
        let p = scene.pedal_point();
        let _ = writeln!(
            svg,
            "<path class=\"pedal-point\" d=\"M {:.3},{:.3} l 8,8 m -8,0 l 8,-8\"/>",
            view.x(p) - 4.0,
            view.y(p) - 4.0
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
