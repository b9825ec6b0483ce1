//! Area, distance and refinement metrics comparing a given contour with
//! its staircase approximation.

use rayon::prelude::*;

use crate::classify::classify_nodes;
use crate::error::{Error, GeometryError};
use crate::geometry::{point_to_polyline_distance, Contour};
use crate::grid::{Grid, NodeIndex};
use crate::tracer::{trace_contour, ApproxContour};

/// `100 * | |A_given| - |A_approx| | / |A_given|`.
pub fn area_difference_pct(given: &Contour, approx: &ApproxContour) -> Result<f64, GeometryError> {
    let given_area = given.area();
    if given_area == 0.0 {
        return Err(GeometryError::DegenerateContour);
    }
    let approx_area = chain_area(approx);
    Ok(100.0 * (given_area - approx_area).abs() / given_area)
}

/// Shoelace area of the chain, summed exactly in index space and scaled
/// by the domain size so grid-aligned polygons come out exact.
pub fn chain_area(approx: &ApproxContour) -> f64 {
    let nodes = approx.nodes();
    let twice: i64 = nodes
        .iter()
        .zip(nodes.iter().cycle().skip(1))
        .map(|(a, b)| a.i * b.j - b.i * a.j)
        .sum();
    let g = approx.grid();
    let cells = twice.unsigned_abs() as f64 / (2 * g.nx() * g.ny()) as f64;
    cells * (g.xf() - g.x0()) * (g.yf() - g.y0())
}

/// Distance from each chain node (in chain order) to the given contour.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    entries: Vec<(NodeIndex, f64)>,
}

impl DistanceProfile {
    pub fn entries(&self) -> &[(NodeIndex, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        self.entries.iter().map(|e| e.1).sum::<f64>() / self.entries.len() as f64
    }
}

pub fn boundary_distance_profile(approx: &ApproxContour, given: &Contour) -> DistanceProfile {
    let line = given.to_polyline();
    let grid = approx.grid();
    DistanceProfile {
        entries: approx
            .nodes()
            .iter()
            .map(|&n| (n, point_to_polyline_distance(grid.world(n), &line)))
            .collect(),
    }
}

/// One refinement level of a study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyRow {
    /// Partitions per axis (`nx = ny = n`).
    pub n: usize,
    pub area_diff_pct: f64,
    pub boundary_nodes: usize,
    pub interior_nodes: usize,
}

/// Outcome of one level; failures do not affect the other levels.
#[derive(Debug)]
pub struct LevelResult {
    pub n: usize,
    pub row: Result<StudyRow, Error>,
}

/// Runs grid build, trace, classification and the area comparison for a
/// single `n x n` level over the contour's bounding box.
pub fn study_level(given: &Contour, n: usize) -> Result<StudyRow, Error> {
    let grid = Grid::around(given, n, n, 0.0)?;
    let approx = trace_contour(given, &grid)?;
    let classes = classify_nodes(&grid, &approx)?;
    Ok(StudyRow {
        n,
        area_diff_pct: area_difference_pct(given, &approx)?,
        boundary_nodes: classes.boundary_count(),
        interior_nodes: classes.interior_count(),
    })
}

/// One row per entry of `levels`, in input order. Levels run in parallel.
pub fn refinement_study(given: &Contour, levels: &[usize]) -> Vec<LevelResult> {
    levels
        .par_iter()
        .map(|&n| LevelResult {
            n,
            row: study_level(given, n),
        })
        .collect()
}
