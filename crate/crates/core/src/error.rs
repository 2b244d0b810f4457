use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not on the unit sphere (norm {norm})")]
    NotOnSphere { norm: f64 },
    #[error("cannot normalize a zero direction")]
    ZeroDirection,
    #[error("homogeneous pair [0 : 0] is not a point of CP1")]
    ZeroHomogeneousPair,
    #[error("Mobius matrix is singular")]
    SingularMobius,

    #[error("configuration needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("{what} {index} has a non-finite coordinate")]
    NonFinite { what: &'static str, index: usize },
    #[error("points {i} and {j} coincide")]
    DegenerateConfiguration { i: usize, j: usize },
    #[error("ball radius must be positive and finite, got {radius}")]
    InvalidRadius { radius: f64 },
    #[error("point {index} lies outside the ball (|x| = {norm}, R = {radius})")]
    PointOutsideBall { index: usize, norm: f64, radius: f64 },
    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("world line {index} is not subluminal (|b| = {speed}); set allow_superluminal to permit it")]
    Superluminal { index: usize, speed: f64 },
    #[error("world lines {i} and {j} intersect")]
    IntersectingWorldLines { i: usize, j: usize },
    #[error("events {i} and {j} coincide")]
    CoincidentEvents { i: usize, j: usize },
    #[error("the past light cone of event {i} does not meet world line {j}")]
    NoPastIntersection { i: usize, j: usize },

    #[error("directions u_{i}{j} and u_{j}{i} coincide (|v_ij ^ v_ji| = {wedge})")]
    DegenerateDirection { i: usize, j: usize, wedge: f64 },
    #[error("normalized determinant is not finite")]
    NonFiniteDeterminant,

    #[error("invalid ellipsoid: {0}")]
    InvalidEllipsoid(String),
    #[error("inner ellipsoid is not contained in the outer one")]
    EllipsoidNotNested,
    #[error("invalid radius grid: {0}")]
    InvalidGrid(String),
    #[error("invalid search space: {0}")]
    InvalidSearchSpace(String),
    #[error("could not sample {n} distinct points after {attempts} attempts")]
    SamplingExhausted { n: usize, attempts: usize },
    #[error("{0}")]
    Invalid(String),
}
