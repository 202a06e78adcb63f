//! Geodesic versus Euclidean diameters of convex polygonal domains with
//! convex holes.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`] holds the planar kernel: exact orientation, convex polygons,
//!   rotating calipers, tangents and boundary arcs.
//! * [`domain`] defines [`PolygonalDomain`] (an outer convex polygon minus
//!   disjoint convex holes), its validation and the distortion report.
//! * [`geodesic`] computes exact shortest paths through a visibility graph
//!   and carries an independent grid oracle.
//! * [`escape`] implements the constructive escape paths (greedy, detours,
//!   grid lines, monotone paths, staircases) with evaluated certificates.
//! * [`constructions`] generates the nested k-gon family, the greedy-hard
//!   family and seeded random corpora.
//! * [`tri`] bridges to geometric triangulations, including a constrained
//!   Delaunay triangulator.

pub mod constructions;
pub mod domain;
pub mod escape;
pub mod geodesic;
pub mod geom;
pub mod tri;

pub use constructions::{
    greedy_hard_instance, nested_kgon, random_family, Epsilon, Family, GreedyHardInstance, InstanceRecipe,
    NestedConstruction,
};
pub use domain::{distortion, DistortionReport, PolygonalDomain, SamplerConfig, ValidationReport, Violation};
pub use escape::{EscapeResult, GreedyTrace, Method};
pub use geodesic::{geod, grid_oracle_geod, GeodesicEngine, GeodesicResult, VisibilityGraph};
pub use geom::{ConvexPolygon, Direction, FatnessReport, Orientation, Point, PointLocation, Polyline, Segment};
pub use tri::{Pslg, Triangulation};

/// Errors produced by the library.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("input contains a non-finite coordinate")]
    NonFinite,

    #[error("polygon needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },

    #[error("polygon has a repeated vertex at ({x}, {y})")]
    DuplicateVertex { x: f64, y: f64 },

    #[error("vertices are not in strictly convex position")]
    NotConvex,

    #[error("point ({x}, {y}) is not strictly outside the polygon")]
    PointNotOutside { x: f64, y: f64 },

    #[error("point ({x}, {y}) is not on the polygon boundary")]
    PointNotOnBoundary { x: f64, y: f64 },

    #[error("point ({x}, {y}) is not in the domain: {reason}")]
    PointNotInDomain { x: f64, y: f64, reason: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(ValidationReport),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no path found between ({sx}, {sy}) and ({tx}, {ty})")]
    Unreachable { sx: f64, sy: f64, tx: f64, ty: f64 },

    #[error("escape path stalled: {0}")]
    Stalled(String),

    #[error("unsupported hole shape: {0}")]
    UnsupportedHoles(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("constraint edges ({0}, {1}) and ({2}, {3}) cross")]
    CrossingConstraints(usize, usize, usize, usize),

    #[error("vertex {vertex} lies on constraint ({a}, {b})")]
    VertexOnConstraint { vertex: usize, a: usize, b: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
