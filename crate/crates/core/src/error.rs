use thiserror::Error;

/// Which side line of a triangle an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    BC,
    CA,
    AB,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::BC => "BC",
            Side::CA => "CA",
            Side::AB => "AB",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("points coincide within tolerance")]
    CoincidentPoints,
    #[error("circles coincide")]
    CoincidentCircles,
    #[error("curves coincide")]
    CoincidentCurves,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("conic matrix is zero")]
    ZeroMatrix,
    #[error("conic is degenerate or near-parabolic")]
    DegenerateConic,
    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,
    #[error("point coincides with the inversion center")]
    CenterInversion,
    #[error("line passes through the inversion center")]
    LineThroughCenter,
    #[error("pedal point lies on the circle")]
    PointOnCircle,
    #[error("pedal point on side {0}")]
    PedalPointOnSide(Side),
    #[error("pedal point on circumcircle")]
    PedalPointOnCircumcircle,
    #[error("inversion circle is not centered at the pedal point")]
    InversionNotAtPedalPoint,
    #[error("start point is not on the circumcircle")]
    StartNotOnCircle,
    #[error("infertile start")]
    InfertileStart,
    #[error("degenerate output: {0}")]
    DegenerateOutput(&'static str),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
