//! World-coordinate primitives: points, closed contours, polylines, the
//! shoelace area and point-to-polyline distance.

use std::cmp::Ordering;

use crate::error::GeometryError;

/// Absolute tolerance used when merging consecutive duplicate vertices.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeometryError::NonFinite { x, y })
        }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn translated(&self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }

    fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        (self.x - other.x).abs() <= tol && (self.y - other.y).abs() <= tol
    }

    fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
}

impl Orientation {
    /// +1 for counter-clockwise, -1 for clockwise.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Clockwise => -1.0,
            Orientation::CounterClockwise => 1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Orientation::Clockwise => f.write_str("clockwise"),
            Orientation::CounterClockwise => f.write_str("counter-clockwise"),
        }
    }
}

/// Signed area of the closed polygon through `points` (implicit closing edge).
///
/// Positive for counter-clockwise vertex order. The terms are accumulated
/// along a canonical traversal (starting at the lexicographically smallest
/// vertex) so that reversing or rotating the vertex list yields exactly the
/// negated or identical value.
pub fn signed_area(points: &[Point]) -> Result<f64, GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::InvalidContour(format!(
            "{n} points, at least 3 are required"
        )));
    }
    let start = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.lex_cmp(b))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let next = &points[(start + 1) % n];
    let prev = &points[(start + n - 1) % n];
    let forward = next.lex_cmp(prev) != Ordering::Greater;

    let mut sum = 0.0;
    for k in 0..n {
        let (a, b) = if forward {
            (&points[(start + k) % n], &points[(start + k + 1) % n])
        } else {
            (
                &points[(start + n - k) % n],
                &points[(start + 2 * n - k - 1) % n],
            )
        };
        sum += a.x * b.y - b.x * a.y;
    }
    let area = 0.5 * sum;
    Ok(if forward { area } else { -area })
}

/// Vertex order of a closed polygon.
pub fn orientation(points: &[Point]) -> Result<Orientation, GeometryError> {
    let area = signed_area(points)?;
    if area > 0.0 {
        Ok(Orientation::CounterClockwise)
    } else if area < 0.0 {
        Ok(Orientation::Clockwise)
    } else {
        Err(GeometryError::DegenerateContour)
    }
}

/// A closed polygon stored open: the closing edge from the last point back
/// to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Point>,
    orientation: Orientation,
}

impl Contour {
    /// Normalizes and validates a vertex list.
    ///
    /// A trailing copy of the first point is dropped and consecutive
    /// duplicates (within [`DUPLICATE_TOLERANCE`]) are merged.
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { x: bad.x, y: bad.y });
        }
        let points = normalize_points(points);
        if points.len() < 3 {
            return Err(GeometryError::InvalidContour(format!(
                "{} distinct points, at least 3 are required",
                points.len()
            )));
        }
        let orientation = orientation(&points)?;
        Ok(Self {
            points,
            orientation,
        })
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points).expect("contour holds at least 3 points")
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn reversed(&self) -> Contour {
        let mut points = self.points.clone();
        points.reverse();
        Contour {
            points,
            orientation: self.orientation.reversed(),
        }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Contour {
        Contour {
            points: self.points.iter().map(|p| p.translated(dx, dy)).collect(),
            orientation: self.orientation,
        }
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for p in &self.points[1..] {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Edges `(p[k], p[k+1])`, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        (0..n).map(move |k| (self.points[k], self.points[(k + 1) % n]))
    }

    pub fn to_polyline(&self) -> Polyline {
        Polyline {
            points: self.points.clone(),
            closed: true,
        }
    }
}

/// Drops a trailing repeat of the first point and merges consecutive
/// duplicates.
pub fn normalize_points(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        match out.last() {
            Some(last) if last.approx_eq(&p, DUPLICATE_TOLERANCE) => {}
            _ => out.push(p),
        }
    }
    while out.len() > 1 && out[out.len() - 1].approx_eq(&out[0], DUPLICATE_TOLERANCE) {
        out.pop();
    }
    out
}

/// Open or closed chain of segments, used for distance queries.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point>,
    closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self, GeometryError> {
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { x: bad.x, y: bad.y });
        }
        if points.len() < 2 {
            return Err(GeometryError::InvalidContour(
                "a polyline needs at least 2 points".into(),
            ));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeometryError::InvalidContour(
                "polyline has consecutive identical points".into(),
            ));
        }
        Ok(Self { points, closed })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |k| (self.points[k], self.points[(k + 1) % n]))
    }
}

/// Distance from `p` to the segment `a`-`b`, clamping the projection to the
/// endpoints.
pub fn point_to_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let len2 = ex * ex + ey * ey;
    if len2 == 0.0 {
        return p.distance(&a);
    }
    let t = (((p.x - a.x) * ex + (p.y - a.y) * ey) / len2).clamp(0.0, 1.0);
    let foot = Point::new(a.x + t * ex, a.y + t * ey);
    p.distance(&foot)
}

pub fn point_to_polyline_distance(p: Point, line: &Polyline) -> f64 {
    line.segments()
        .map(|(a, b)| point_to_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}
