//! Staircase approximation of irregular 2D contours on rectangular grids.
//!
//! A given polygon is walked segment by segment and replaced by a closed,
//! 8-connected chain of grid nodes lying on its interior side. The grid
//! nodes are then labelled boundary / interior / exterior for use as a
//! finite-difference mesh, and the approximation is measured by area
//! difference and node-to-contour distance across grid refinements.
//!
//! ```
//! use stairmesh::{shapes, trace_contour, classify_nodes, Grid, Point};
//!
//! let circle = shapes::circle(64, Point::new(0.5, 0.5), 0.4);
//! let grid = Grid::around(&circle, 50, 50, 0.0).unwrap();
//! let chain = trace_contour(&circle, &grid).unwrap();
//! let mesh = classify_nodes(&grid, &chain).unwrap();
//! assert!(mesh.interior_count() > 0);
//! ```

pub mod classify;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod shapes;
pub mod tracer;

pub use classify::{classify_nodes, point_in_polygon, Location, NodeClass, NodeClassification};
pub use error::{ClassifyError, Error, GeometryError, GridError, IoError, Result, TraceError};
pub use geometry::{
    orientation, point_to_polyline_distance, signed_area, Contour, Orientation, Point, Polyline,
};
pub use grid::{build_grid, Grid, NodeIndex};
pub use metrics::{
    area_difference_pct, boundary_distance_profile, chain_area, refinement_study, DistanceProfile,
    LevelResult, StudyRow,
};
pub use tracer::{trace_contour, ApproxContour, InteriorSide, SegmentLine};
