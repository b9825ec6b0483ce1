//! The rectangular grid `[x0, xf] x [y0, yf]` with `nx` by `ny` partitions.

use crate::classify::{point_in_polygon_with_tolerance, Location};
use crate::error::GridError;
use crate::geometry::{Contour, Point};

/// Relative slack applied to index-space comparisons (fractions of a cell).
/// Rings of nodes searched beyond the four surrounding `p` when snapping
/// with an inside preference.
pub const SNAP_SEARCH_RINGS: i64 = 2;

pub(crate) const INDEX_EPS: f64 = 1e-9;

/// Integer grid coordinates of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIndex {
    pub i: i64,
    pub j: i64,
}

impl NodeIndex {
    #[inline]
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    #[inline]
    pub fn offset(self, di: i64, dj: i64) -> Self {
        Self::new(self.i + di, self.j + dj)
    }

    /// True when the two nodes are distinct 8-neighbours.
    #[inline]
    pub fn is_adjacent(self, other: NodeIndex) -> bool {
        let (di, dj) = ((self.i - other.i).abs(), (self.j - other.j).abs());
        di <= 1 && dj <= 1 && (di, dj) != (0, 0)
    }

    #[inline]
    pub fn chebyshev(self, other: NodeIndex) -> i64 {
        (self.i - other.i).abs().max((self.j - other.j).abs())
    }
}

impl From<(i64, i64)> for NodeIndex {
    fn from((i, j): (i64, i64)) -> Self {
        NodeIndex::new(i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x0: f64,
    y0: f64,
    xf: f64,
    yf: f64,
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
}

impl Grid {
    pub fn new(
        x0: f64,
        y0: f64,
        xf: f64,
        yf: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self, GridError> {
        if nx < 2 || ny < 2 {
            return Err(GridError::TooFewPartitions { nx, ny });
        }
        if ![x0, y0, xf, yf].iter().all(|v| v.is_finite()) {
            return Err(GridError::DegenerateDomain("non-finite bounds".into()));
        }
        let dx = (xf - x0) / nx as f64;
        let dy = (yf - y0) / ny as f64;
        if !(dx > 0.0 && dy > 0.0) {
            return Err(GridError::DegenerateDomain(format!(
                "[{x0}, {xf}] x [{y0}, {yf}] has zero width or height"
            )));
        }
        Ok(Self {
            x0,
            y0,
            xf,
            yf,
            nx,
            ny,
            dx,
            dy,
        })
    }

    /// Grid over the bounding box of `contour`, grown by `padding` on every
    /// side.
    pub fn around(
        contour: &Contour,
        nx: usize,
        ny: usize,
        padding: f64,
    ) -> Result<Self, GridError> {
        if !(padding.is_finite() && padding >= 0.0) {
            return Err(GridError::InvalidPadding(padding));
        }
        let (lo, hi) = contour.bounding_box();
        Grid::new(
            lo.x - padding,
            lo.y - padding,
            hi.x + padding,
            hi.y + padding,
            nx,
            ny,
        )
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn y0(&self) -> f64 {
        self.y0
    }
    pub fn xf(&self) -> f64 {
        self.xf
    }
    pub fn yf(&self) -> f64 {
        self.yf
    }
    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn dx(&self) -> f64 {
        self.dx
    }
    pub fn dy(&self) -> f64 {
        self.dy
    }

    /// Larger of the two spacings.
    pub fn cell(&self) -> f64 {
        self.dx.max(self.dy)
    }

    /// Half the cell diagonal: the worst-case snapping error.
    pub fn half_diagonal(&self) -> f64 {
        0.5 * self.dx.hypot(self.dy)
    }

    /// `(nx + 1) * (ny + 1)`.
    pub fn node_count(&self) -> usize {
        (self.nx + 1) * (self.ny + 1)
    }

    #[inline]
    pub fn contains(&self, n: NodeIndex) -> bool {
        n.i >= 0 && n.j >= 0 && n.i <= self.nx as i64 && n.j <= self.ny as i64
    }

    pub fn node_to_world(&self, n: NodeIndex) -> Result<Point, GridError> {
        if self.contains(n) {
            Ok(self.world(n))
        } else {
            Err(GridError::OutOfBounds {
                node: n,
                nx: self.nx,
                ny: self.ny,
            })
        }
    }

    /// World coordinates of a node without the bounds check.
    #[inline]
    pub fn world(&self, n: NodeIndex) -> Point {
        Point::new(
            self.x0 + n.i as f64 * self.dx,
            self.y0 + n.j as f64 * self.dy,
        )
    }

    /// Position of a world point in fractional index units.
    #[inline]
    pub fn index_coords(&self, p: Point) -> (f64, f64) {
        ((p.x - self.x0) / self.dx, (p.y - self.y0) / self.dy)
    }

    /// Row-major position of a node (rows are `j`).
    #[inline]
    pub fn linear_index(&self, n: NodeIndex) -> usize {
        n.j as usize * (self.nx + 1) + n.i as usize
    }

    /// All nodes, ordered by `(j, i)`.
    pub fn nodes(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        (0..=self.ny as i64)
            .flat_map(move |j| (0..=self.nx as i64).map(move |i| NodeIndex::new(i, j)))
    }

    fn domain_contains(&self, p: Point) -> bool {
        let (tx, ty) = self.index_coords(p);
        let (mx, my) = (self.nx as f64, self.ny as f64);
        tx >= -INDEX_EPS && ty >= -INDEX_EPS && tx <= mx + INDEX_EPS && ty <= my + INDEX_EPS
    }

    /// Nearest node to `p`.
    ///
    /// Without a preference, each axis is rounded half up in index space.
    /// With `prefer_inside_of`, the nearest node lying inside or on the
    /// contour is returned, searched outwards from the four surrounding
    /// nodes for at most [`SNAP_SEARCH_RINGS`] further rings. Equidistant
    /// nodes resolve to the larger `(i, j)`.
    pub fn snap(
        &self,
        p: Point,
        prefer_inside_of: Option<&Contour>,
    ) -> Result<NodeIndex, GridError> {
        if !p.is_finite() || !self.domain_contains(p) {
            return Err(GridError::PointOutsideDomain { point: p });
        }
        let (tx, ty) = self.index_coords(p);
        let Some(contour) = prefer_inside_of else {
            return Ok(NodeIndex::new(
                self.clamp_i((tx + 0.5).floor() as i64),
                self.clamp_j((ty + 0.5).floor() as i64),
            ));
        };

        let (i_lo, i_hi) = (
            self.clamp_i(tx.floor() as i64),
            self.clamp_i(tx.ceil() as i64),
        );
        let (j_lo, j_hi) = (
            self.clamp_j(ty.floor() as i64),
            self.clamp_j(ty.ceil() as i64),
        );
        let tol = self.on_line_tolerance();
        let tie_tol = INDEX_EPS * self.cell() * self.cell();
        let step = self.dx.min(self.dy);
        let mut best: Option<(NodeIndex, f64)> = None;
        for r in 0..=SNAP_SEARCH_RINGS {
            // every node of ring r is at least r cells away from p
            if let Some((_, bd)) = best {
                if (r as f64 * step).powi(2) > bd + tie_tol {
                    break;
                }
            }
            for j in (j_lo - r)..=(j_hi + r) {
                for i in (i_lo - r)..=(i_hi + r) {
                    let on_ring = i == i_lo - r || i == i_hi + r || j == j_lo - r || j == j_hi + r;
                    let n = NodeIndex::new(i, j);
                    if !on_ring || !self.contains(n) {
                        continue;
                    }
                    if point_in_polygon_with_tolerance(self.world(n), contour.points(), tol)
                        == Location::Outside
                    {
                        continue;
                    }
                    // offsets taken in index space keep midway ties exact
                    let d =
                        ((i as f64 - tx) * self.dx).powi(2) + ((j as f64 - ty) * self.dy).powi(2);
                    best = match best {
                        Some((b, bd)) => {
                            let tie = (d - bd).abs() <= tie_tol;
                            if (!tie && d < bd) || (tie && (n.i, n.j) > (b.i, b.j)) {
                                Some((n, d))
                            } else {
                                Some((b, bd))
                            }
                        }
                        None => Some((n, d)),
                    };
                }
            }
        }
        best.map(|(n, _)| n)
            .ok_or(GridError::SnapFailure { point: p })
    }

    /// Distance below which a node counts as lying on a line.
    pub fn on_line_tolerance(&self) -> f64 {
        1e-9 * self.cell()
    }

    fn clamp_i(&self, i: i64) -> i64 {
        i.clamp(0, self.nx as i64)
    }

    fn clamp_j(&self, j: i64) -> i64 {
        j.clamp(0, self.ny as i64)
    }
}

/// Free-function form of [`Grid::around`].
pub fn build_grid(
    contour: &Contour,
    nx: usize,
    ny: usize,
    padding: f64,
) -> Result<Grid, GridError> {
    Grid::around(contour, nx, ny, padding)
}
