use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::Point;
use crate::grid::NodeIndex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("degenerate contour: shoelace sum is zero")]
    DegenerateContour,
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),
    #[error("partition counts must be at least 2 (got nx={nx}, ny={ny})")]
    TooFewPartitions { nx: usize, ny: usize },
    #[error("padding must be finite and non-negative (got {0})")]
    InvalidPadding(f64),
    #[error("node ({}, {}) is outside the {nx}x{ny} grid", .node.i, .node.j)]
    OutOfBounds {
        node: NodeIndex,
        nx: usize,
        ny: usize,
    },
    #[error("point ({}, {}) lies outside the grid domain", .point.x, .point.y)]
    PointOutsideDomain { point: Point },
    #[error("no grid node inside the contour near ({}, {})", .point.x, .point.y)]
    SnapFailure { point: Point },
}

/// Failure while walking the contour onto the grid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceError {
    #[error("no admissible candidate after node ({}, {}) (geometry thinner than one cell?)", .node.i, .node.j)]
    NoAdmissibleCandidate { node: NodeIndex },
    #[error("every candidate step from node ({}, {}) falls outside the grid", .node.i, .node.j)]
    EmptyCandidates { node: NodeIndex },
    #[error("emitted more than {limit} nodes without reaching the segment end point")]
    NonTermination { limit: usize },
    #[error("pruning would remove every node of the chain")]
    PrunedEmpty,
    #[error("interior side is undefined: no segment has a nonzero delta in the queried direction")]
    UndefinedSide,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("at given point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<TraceError>,
    },
}

impl TraceError {
    pub(crate) fn at_point(self, index: usize) -> Self {
        match self {
            e @ TraceError::AtPoint { .. } => e,
            e => TraceError::AtPoint {
                index,
                source: Box::new(e),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("approximate contour lives on a different grid than the one being classified")]
    GridMismatch,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: non-finite coordinate")]
    NonFiniteAt { line: usize },
    #[error("element {element}: {message}")]
    Json { element: usize, message: String },
    #[error("malformed JSON contour: {0}")]
    JsonSyntax(String),
    #[error("contour has {0} distinct points, at least 3 are required")]
    TooFewPoints(usize),
    #[error("contour encloses zero area")]
    ZeroArea,
}

/// Top-level error for the whole pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Io(#[from] IoError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
