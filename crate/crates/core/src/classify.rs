//! Boundary / interior / exterior labelling of grid nodes.

use crate::error::{ClassifyError, GeometryError};
use crate::geometry::{point_to_segment_distance, Point};
use crate::grid::{Grid, NodeIndex};
use crate::tracer::ApproxContour;

/// Distance below which [`point_in_polygon`] reports `OnBoundary`.
pub const ON_EDGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Outside,
    OnBoundary,
}

/// Even-odd ray casting with a horizontal ray towards `+x`.
///
/// An edge counts when exactly one endpoint lies strictly above the ray
/// (lower endpoint inclusive), so vertices on the ray are counted once.
pub fn point_in_polygon(p: Point, polygon: &[Point]) -> Result<Location, GeometryError> {
    if polygon.len() < 3 {
        return Err(GeometryError::InvalidContour(format!(
            "{} vertices, at least 3 are required",
            polygon.len()
        )));
    }
    if let Some(bad) = polygon.iter().find(|q| !q.is_finite()) {
        return Err(GeometryError::NonFinite { x: bad.x, y: bad.y });
    }
    Ok(point_in_polygon_with_tolerance(
        p,
        polygon,
        ON_EDGE_TOLERANCE,
    ))
}

/// Same as [`point_in_polygon`] with an explicit on-edge tolerance and no
/// validation of the polygon.
pub fn point_in_polygon_with_tolerance(p: Point, polygon: &[Point], tol: f64) -> Location {
    let n = polygon.len();
    let mut inside = false;
    for k in 0..n {
        let a = polygon[k];
        let b = polygon[(k + 1) % n];
        if point_to_segment_distance(p, a, b) <= tol {
            return Location::OnBoundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeClass {
    Boundary,
    Interior,
    Exterior,
}

impl NodeClass {
    /// Single-letter code used in mesh files.
    pub fn code(self) -> char {
        match self {
            NodeClass::Boundary => 'B',
            NodeClass::Interior => 'I',
            NodeClass::Exterior => 'E',
        }
    }
}

/// Labels for every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeClassification {
    grid: Grid,
    labels: Vec<NodeClass>,
    boundary_count: usize,
    interior_count: usize,
}

impl NodeClassification {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Label of `n`, or `None` when `n` is outside the grid.
    pub fn label(&self, n: NodeIndex) -> Option<NodeClass> {
        self.grid
            .contains(n)
            .then(|| self.labels[self.grid.linear_index(n)])
    }

    /// Labels in row-major `(j, i)` order.
    pub fn labels(&self) -> &[NodeClass] {
        &self.labels
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_count
    }

    pub fn interior_count(&self) -> usize {
        self.interior_count
    }

    pub fn exterior_count(&self) -> usize {
        self.labels.len() - self.boundary_count - self.interior_count
    }

    pub fn nodes_with(&self, class: NodeClass) -> impl Iterator<Item = NodeIndex> + '_ {
        self.grid
            .nodes()
            .zip(self.labels.iter())
            .filter(move |(_, &c)| c == class)
            .map(|(n, _)| n)
    }
}

/// Labels chain nodes `Boundary` and every other node `Interior` or
/// `Exterior` relative to the polygon formed by the chain.
///
/// Works row by row in index space. Chain edges join 8-neighbours, so an
/// edge crossing row `j` (one endpoint above, the other on the row) meets it
/// exactly at its endpoint on the row; the parity of crossings to the right
/// of a node then matches [`point_in_polygon`] on the node's world point.
pub fn classify_nodes(
    grid: &Grid,
    approx: &ApproxContour,
) -> Result<NodeClassification, ClassifyError> {
    if approx.grid() != grid {
        return Err(ClassifyError::GridMismatch);
    }
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut labels = vec![NodeClass::Exterior; grid.node_count()];

    let mut crossings: Vec<Vec<i64>> = vec![Vec::new(); ny + 1];
    let nodes = approx.nodes();
    let m = nodes.len();
    for k in 0..m {
        let (a, b) = (nodes[k], nodes[(k + 1) % m]);
        if a.j != b.j {
            let on_row = if a.j < b.j { a } else { b };
            crossings[on_row.j as usize].push(on_row.i);
        }
    }

    for (j, row) in crossings.iter_mut().enumerate() {
        row.sort_unstable();
        // crossings strictly right of i, counted from the right
        let mut right = row.len();
        let mut idx = 0;
        for i in 0..=nx as i64 {
            while idx < row.len() && row[idx] <= i {
                idx += 1;
                right -= 1;
            }
            if right % 2 == 1 {
                labels[j * (nx + 1) + i as usize] = NodeClass::Interior;
            }
        }
    }

    for &n in nodes {
        labels[grid.linear_index(n)] = NodeClass::Boundary;
    }

    let boundary_count = labels.iter().filter(|&&c| c == NodeClass::Boundary).count();
    let interior_count = labels.iter().filter(|&&c| c == NodeClass::Interior).count();
    Ok(NodeClassification {
        grid: *grid,
        labels,
        boundary_count,
        interior_count,
    })
}
