use std::path::Path;

use porism_core::{GeomError, InversionCircle, Point, PorismScene, Triangle};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// On-disk scene description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub triangle: [[f64; 2]; 3],
    pub pedal_point: [f64; 2],
    #[serde(default = "default_radius_sq")]
    pub inversion_radius_sq: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<[String; 3]>,
}

fn default_radius_sq() -> f64 {
    1.0
}

fn pt(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

impl SceneFile {
    pub fn from_scene(scene: &PorismScene) -> Self {
        let v = scene.seed().vertices();
        let d = scene.pedal_point();
        Self {
            triangle: [[v[0].x, v[0].y], [v[1].x, v[1].y], [v[2].x, v[2].y]],
            pedal_point: [d.x, d.y],
            inversion_radius_sq: scene.inversion().radius_sq(),
            labels: None,
        }
    }

    /// Builds the scene, naming the offending field on geometric failures.
    pub fn to_scene(&self) -> Result<PorismScene, CliError> {
        let [a, b, c] = self.triangle.map(pt);
        let t = Triangle::new(a, b, c).map_err(|source| CliError::Validation { field: "triangle", source })?;
        let d = pt(self.pedal_point);
        InversionCircle::new(d, self.inversion_radius_sq)
            .map_err(|source| CliError::Validation { field: "inversion_radius_sq", source })?;
        PorismScene::new(t, d, self.inversion_radius_sq).map_err(|source| {
            let field = match source {
                GeomError::PedalPointOnSide(_) | GeomError::PedalPointOnCircumcircle | GeomError::NonFinite => {
                    "pedal_point"
                }
                _ => "scene",
            };
            CliError::Validation { field, source }
        })
    }
}

pub fn parse_scene_file(text: &str) -> Result<SceneFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
    })
}

pub fn parse_scene_str(text: &str) -> Result<PorismScene, CliError> {
    parse_scene_file(text)?.to_scene()
}

pub fn parse_scene(path: &Path) -> Result<PorismScene, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scene_str(&text)
}

/// Pretty JSON for `scene`; parsing it back reproduces the coordinates exactly.
pub fn emit_scene(scene: &PorismScene) -> String {
    serde_json::to_string_pretty(&SceneFile::from_scene(scene)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE_345: &str = r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [1,1]}"#;

    #[test]
    fn incenter_scene() {
        let s = parse_scene_str(TRIANGLE_345).unwrap();
        let e = s.pedal_circle();
        assert!(e.center.dist(Point::new(1.0, 1.0)) < 1e-12 && (e.radius() - 1.0).abs() < 1e-12);
        assert_eq!(s.inversion().radius_sq(), 1.0);
    }

    #[test]
    fn pedal_point_on_side_is_named() {
        let err = parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [2,0]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, CliError::Validation { field: "pedal_point", .. }));
        assert!(msg.contains("pedal point on side"), "{msg}");
    }

    #[test]
    fn missing_field_is_reported() {
        let err = parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]]}"#).unwrap_err();
        assert!(err.to_string().contains("pedal_point"), "{err}");
        let err = parse_scene_str(r#"{"triangle": [[0,0],[4,0]], "pedal_point": [1,1]}"#).unwrap_err();
        match err {
            CliError::Parse { path, .. } => assert_eq!(path, "triangle"),
            other => panic!("{other}"),
        }
        let err = parse_scene_str(r#"{"triangle": [[0,0],[4,"x"],[0,3]], "pedal_point": [1,1]}"#).unwrap_err();
        match err {
            CliError::Parse { path, line, .. } => {
                assert_eq!(path, "triangle[1][1]");
                assert_eq!(line, 1);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn round_trip() {
        let s = parse_scene_str(r#"{"triangle": [[0.1,0.2],[4.123456789012345,0],[0.3,3.3]], "pedal_point": [1.1,0.9], "inversion_radius_sq": 2.5}"#)
            .unwrap();
        let back = parse_scene_str(&emit_scene(&s)).unwrap();
        assert_eq!(back.seed(), s.seed());
        assert_eq!(back.pedal_point(), s.pedal_point());
        assert_eq!(back.inversion().radius_sq(), 2.5);
    }
}
