//! Staircase tracing of a given contour onto grid nodes.
//!
//! The walk visits the given contour segment by segment. Between two given
//! points it repeatedly steps to one of the (up to three) neighbouring nodes
//! in the segment's direction, keeping only nodes on the interior side of
//! the segment's line and taking the one nearest to that line. At
//! outward-turning (convex) vertices trailing nodes that ended up outside
//! the figure are dropped; before each segment the chain end is checked to
//! be a usable starting node and, if not, one bridging node is appended
//! (inward-turning, concave vertices).

use log::{debug, warn};

use crate::classify::{point_in_polygon_with_tolerance, Location};
use crate::error::TraceError;
use crate::geometry::{Contour, Orientation, Point};
use crate::grid::{Grid, NodeIndex, INDEX_EPS};

#[inline]
fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[inline]
fn step_sign(v: f64) -> i64 {
    sign(v) as i64
}

/// The line through two consecutive given points, `f(x) = ay + slope * (x - ax)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentLine {
    anchor: Point,
    vx: f64,
    vy: f64,
}

impl SegmentLine {
    /// `None` when `from == to`.
    pub fn new(from: Point, to: Point) -> Option<Self> {
        let (vx, vy) = (to.x - from.x, to.y - from.y);
        (vx != 0.0 || vy != 0.0).then_some(Self {
            anchor: from,
            vx,
            vy,
        })
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn end(&self) -> Point {
        Point::new(self.anchor.x + self.vx, self.anchor.y + self.vy)
    }

    pub fn vx(&self) -> f64 {
        self.vx
    }

    pub fn vy(&self) -> f64 {
        self.vy
    }

    /// `vy / vx`, undefined for vertical segments.
    pub fn slope(&self) -> Option<f64> {
        (self.vx != 0.0).then(|| self.vy / self.vx)
    }

    /// `f(x)`: ordinate of the line at abscissa `x`.
    pub fn eval(&self, x: f64) -> Option<f64> {
        self.slope()
            .map(|m| self.anchor.y + m * (x - self.anchor.x))
    }

    /// `g(y) = f^-1(y)`: abscissa of the line at ordinate `y`.
    pub fn eval_inverse(&self, y: f64) -> Option<f64> {
        (self.vy != 0.0).then(|| self.anchor.x + (y - self.anchor.y) * self.vx / self.vy)
    }

    /// Index step direction along each axis: -1, 0 or +1.
    pub fn step_signs(&self) -> (i64, i64) {
        (step_sign(self.vx), step_sign(self.vy))
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.vx == 0.0 || self.vy == 0.0
    }

    /// Perpendicular offset of `q`, positive to the left of the direction
    /// of travel.
    pub fn signed_offset(&self, q: Point) -> f64 {
        let cross = self.vx * (q.y - self.anchor.y) - self.vy * (q.x - self.anchor.x);
        cross / self.vx.hypot(self.vy)
    }

    /// Perpendicular distance from `q` to the (infinite) line.
    pub fn distance(&self, q: Point) -> f64 {
        self.signed_offset(q).abs()
    }
}

/// Which side of a segment holds the figure's interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteriorSide {
    Above,
    Below,
    Left,
    Right,
    /// Unresolved: take the side of the previous segment.
    InheritPrevious,
}

/// The two families of side rules: `AboveBelow` is decided by the sign of
/// `vx`, `LeftRight` by the sign of `vy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideRule {
    AboveBelow,
    LeftRight,
}

impl InteriorSide {
    /// Whether `q` lies on this side of `seg`'s line, or within `tol` of it.
    pub fn admits(self, seg: &SegmentLine, q: Point, tol: f64) -> bool {
        let off = seg.signed_offset(q);
        match self {
            InteriorSide::Above => off * sign(seg.vx) >= -tol,
            InteriorSide::Below => off * sign(seg.vx) <= tol,
            InteriorSide::Left => off * sign(seg.vy) >= -tol,
            InteriorSide::Right => off * sign(seg.vy) <= tol,
            InteriorSide::InheritPrevious => false,
        }
    }

    pub fn is_resolved(self) -> bool {
        self != InteriorSide::InheritPrevious
    }
}

fn raw_side(seg: &SegmentLine, orientation: Orientation, rule: SideRule) -> InteriorSide {
    use InteriorSide::*;
    let ccw = orientation == Orientation::CounterClockwise;
    match rule {
        SideRule::AboveBelow => match (sign(seg.vx) as i64, ccw) {
            (0, _) => InheritPrevious,
            (1, true) | (-1, false) => Above,
            _ => Below,
        },
        SideRule::LeftRight => match (sign(seg.vy) as i64, ccw) {
            (0, _) => InheritPrevious,
            (1, true) | (-1, false) => Left,
            _ => Right,
        },
    }
}

/// Interior side of `seg` under `rule`.
///
/// When the delta the rule looks at is zero the previous segment's side is
/// carried over; without a resolved previous side this is an error (see
/// [`resolve_sides`] for the scan-forward fallback).
pub fn interior_side(
    seg: &SegmentLine,
    orientation: Orientation,
    previous: Option<InteriorSide>,
    rule: SideRule,
) -> Result<InteriorSide, TraceError> {
    match raw_side(seg, orientation, rule) {
        InteriorSide::InheritPrevious => previous
            .filter(|s| s.is_resolved())
            .ok_or(TraceError::UndefinedSide),
        side => Ok(side),
    }
}

/// Sides for a whole run of segments. Leading segments with no side of
/// their own take the first resolved side found scanning forward.
pub fn resolve_sides(
    segments: &[SegmentLine],
    orientation: Orientation,
    rule: SideRule,
) -> Result<Vec<InteriorSide>, TraceError> {
    let first = segments
        .iter()
        .map(|s| raw_side(s, orientation, rule))
        .find(|s| s.is_resolved())
        .ok_or(TraceError::UndefinedSide)?;
    let mut previous = first;
    segments
        .iter()
        .map(|s| {
            previous = interior_side(s, orientation, Some(previous), rule)?;
            Ok(previous)
        })
        .collect()
}

/// Side used for the half-plane test of a segment: the above/below rule
/// whenever the segment is not vertical, left/right otherwise.
pub fn line_side(seg: &SegmentLine, orientation: Orientation) -> InteriorSide {
    let rule = if seg.vx != 0.0 {
        SideRule::AboveBelow
    } else {
        SideRule::LeftRight
    };
    raw_side(seg, orientation, rule)
}

/// Next-node candidates from `current` when moving by `(sx, sy)`, ordered
/// diagonal, x-step, y-step. Candidates outside the grid are dropped.
pub fn candidate_nodes(
    current: NodeIndex,
    sx: i64,
    sy: i64,
    grid: &Grid,
) -> Result<Vec<NodeIndex>, TraceError> {
    let all: &[(i64, i64)] = match (sx, sy) {
        (0, 0) => &[],
        (_, 0) => &[(sx, 0)],
        (0, _) => &[(0, sy)],
        _ => &[(sx, sy), (sx, 0), (0, sy)],
    };
    let out: Vec<NodeIndex> = all
        .iter()
        .map(|&(di, dj)| current.offset(di, dj))
        .filter(|n| grid.contains(*n))
        .collect();
    if out.is_empty() {
        Err(TraceError::EmptyCandidates { node: current })
    } else {
        Ok(out)
    }
}

fn step_rank(from: NodeIndex, to: NodeIndex) -> u8 {
    match (to.i != from.i, to.j != from.j) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    }
}

/// Admissible candidate (interior side of the line, or on it) nearest to
/// the line. Ties go to the diagonal step, then the x-step.
pub fn select_next_node(
    current: NodeIndex,
    candidates: &[NodeIndex],
    seg: &SegmentLine,
    side: InteriorSide,
    grid: &Grid,
) -> Result<NodeIndex, TraceError> {
    let tol = grid.on_line_tolerance();
    candidates
        .iter()
        .copied()
        .filter(|&c| side.admits(seg, grid.world(c), tol))
        .map(|c| (c, seg.distance(grid.world(c))))
        .reduce(|best, cand| {
            let tie = (cand.1 - best.1).abs() <= tol;
            let better = if tie {
                step_rank(current, cand.0) < step_rank(current, best.0)
            } else {
                cand.1 < best.1
            };
            if better {
                cand
            } else {
                best
            }
        })
        .map(|(c, _)| c)
        .ok_or(TraceError::NoAdmissibleCandidate { node: current })
}

/// Nodes from `last` (exclusive) towards `target` along `seg`.
///
/// Stepping continues while the chain end is at least one cell short of the
/// target in some axis, measured along the direction of travel.
pub fn trace_segment(
    last: NodeIndex,
    seg: &SegmentLine,
    target: Point,
    side: InteriorSide,
    grid: &Grid,
) -> Result<Vec<NodeIndex>, TraceError> {
    let (sx, sy) = seg.step_signs();
    let (tx, ty) = grid.index_coords(target);
    let limit = 4 * (grid.nx() + grid.ny());
    let mut out = Vec::new();
    let mut cur = last;
    loop {
        let go_x = sx != 0 && (tx - cur.i as f64) * sx as f64 >= 1.0 - INDEX_EPS;
        let go_y = sy != 0 && (ty - cur.j as f64) * sy as f64 >= 1.0 - INDEX_EPS;
        if !(go_x || go_y) {
            break;
        }
        if out.len() >= limit {
            return Err(TraceError::NonTermination { limit });
        }
        let next = if seg.is_axis_aligned() {
            candidate_nodes(cur, sx, sy, grid)?[0]
        } else {
            let candidates = candidate_nodes(cur, sx, sy, grid)?;
            select_next_node(cur, &candidates, seg, side, grid)?
        };
        out.push(next);
        cur = next;
    }
    Ok(out)
}

/// Drops trailing chain nodes that lie strictly outside the given contour.
pub fn prune_convexity(
    mut chain: Vec<NodeIndex>,
    given: &Contour,
    grid: &Grid,
) -> Result<Vec<NodeIndex>, TraceError> {
    let tol = grid.on_line_tolerance();
    while let Some(&last) = chain.last() {
        let loc = point_in_polygon_with_tolerance(grid.world(last), given.points(), tol);
        if loc != Location::Outside {
            return Ok(chain);
        }
        chain.pop();
    }
    Err(TraceError::PrunedEmpty)
}

/// Whether tracing `seg` can start from `node`.
fn is_adequate_start(node: NodeIndex, seg: &SegmentLine, side: InteriorSide, grid: &Grid) -> bool {
    let tol = grid.on_line_tolerance();
    if seg.is_axis_aligned() {
        return side.admits(seg, grid.world(node), tol);
    }
    let (sx, sy) = seg.step_signs();
    candidate_nodes(node, sx, sy, grid)
        .map(|cs| cs.iter().any(|&c| side.admits(seg, grid.world(c), tol)))
        .unwrap_or(false)
}

/// Appends a bridging node when the chain end is not a usable start for
/// `next_seg`: the admissible 8-neighbour nearest to the next line,
/// preferring steps along the direction of travel. Neighbours inside or on
/// `given` are preferred over ones outside it.
pub fn bridge_concavity(
    mut chain: Vec<NodeIndex>,
    next_seg: &SegmentLine,
    next_side: InteriorSide,
    given: &Contour,
    grid: &Grid,
) -> Result<Vec<NodeIndex>, TraceError> {
    const MAX_BRIDGE: usize = 3;
    let tol = grid.on_line_tolerance();
    let (sx, sy) = next_seg.step_signs();
    for _ in 0..MAX_BRIDGE {
        let last = *chain.last().ok_or(TraceError::PrunedEmpty)?;
        if is_adequate_start(last, next_seg, next_side, grid) {
            return Ok(chain);
        }
        let bridge = NEIGHBOURS
            .iter()
            .map(|&(di, dj)| (last.offset(di, dj), di * sx + dj * sy))
            .filter(|(n, _)| grid.contains(*n) && next_side.admits(next_seg, grid.world(*n), tol))
            .map(|(n, along)| {
                let q = grid.world(n);
                let outside =
                    point_in_polygon_with_tolerance(q, given.points(), tol) == Location::Outside;
                (n, outside, along, next_seg.distance(q))
            })
            .reduce(|best, cand| {
                if cand.1 != best.1 {
                    return if cand.1 { best } else { cand };
                }
                let tie = (cand.3 - best.3).abs() <= tol;
                if (tie && cand.2 > best.2) || (!tie && cand.3 < best.3) {
                    cand
                } else {
                    best
                }
            })
            .ok_or(TraceError::NoAdmissibleCandidate { node: last })?;
        debug!(
            "bridging node ({}, {}) appended after ({}, {})",
            bridge.0.i, bridge.0.j, last.i, last.j
        );
        chain.push(bridge.0);
    }
    let last = *chain.last().expect("chain is non-empty");
    if is_adequate_start(last, next_seg, next_side, grid) {
        Ok(chain)
    } else {
        Err(TraceError::NoAdmissibleCandidate { node: last })
    }
}

const NEIGHBOURS: [(i64, i64); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Turn {
    Convex,
    Concave,
    Straight,
}

fn vertex_turn(prev: Point, at: Point, next: Point, orientation: Orientation) -> Turn {
    let cross = (at.x - prev.x) * (next.y - at.y) - (at.y - prev.y) * (next.x - at.x);
    let s = cross * orientation.sign();
    if s > 0.0 {
        Turn::Convex
    } else if s < 0.0 {
        Turn::Concave
    } else {
        Turn::Straight
    }
}

/// Steps from the chain end to `first` until the two are 8-adjacent,
/// choosing among the moves that reduce the Chebyshev distance. Admissible
/// moves for the closing line come first, then the one nearest the line.
fn connect_to_start(
    chain: &mut Vec<NodeIndex>,
    first: NodeIndex,
    seg: &SegmentLine,
    side: InteriorSide,
    grid: &Grid,
) -> Result<(), TraceError> {
    let tol = grid.on_line_tolerance();
    let limit = 2 * (grid.nx() + grid.ny());
    for _ in 0..limit {
        let last = *chain.last().expect("chain is non-empty");
        if last == first || last.is_adjacent(first) {
            return Ok(());
        }
        let (si, sj) = ((first.i - last.i).signum(), (first.j - last.j).signum());
        let gap = last.chebyshev(first);
        let next = [(si, sj), (si, 0), (0, sj)]
            .iter()
            .filter(|&&(di, dj)| (di, dj) != (0, 0))
            .map(|&(di, dj)| last.offset(di, dj))
            .filter(|n| n.chebyshev(first) < gap)
            .map(|n| {
                let q = grid.world(n);
                (n, !side.admits(seg, q, tol), seg.distance(q))
            })
            .min_by(|a, b| a.1.cmp(&b.1).then(a.2.total_cmp(&b.2)))
            .map(|(n, _, _)| n)
            .expect("a diagonal or axis move always shortens the gap");
        chain.push(next);
    }
    Err(TraceError::NonTermination { limit })
}

/// The closed chain of grid nodes approximating a given contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxContour {
    nodes: Vec<NodeIndex>,
    grid: Grid,
}

impl ApproxContour {
    /// Validates closure, 8-connectivity, bounds and the absence of
    /// consecutive duplicates (the wrap from last to first included).
    pub fn new(nodes: Vec<NodeIndex>, grid: Grid) -> Result<Self, TraceError> {
        if nodes.len() < 3 {
            return Err(TraceError::InvalidChain(format!(
                "{} nodes, a closed chain needs at least 3",
                nodes.len()
            )));
        }
        if let Some(n) = nodes.iter().find(|n| !grid.contains(**n)) {
            return Err(TraceError::InvalidChain(format!(
                "node ({}, {}) is outside the grid",
                n.i, n.j
            )));
        }
        let m = nodes.len();
        for k in 0..m {
            let (a, b) = (nodes[k], nodes[(k + 1) % m]);
            if !a.is_adjacent(b) {
                return Err(TraceError::InvalidChain(format!(
                    "nodes ({}, {}) and ({}, {}) at positions {k} and {} are not distinct 8-neighbours",
                    a.i,
                    a.j,
                    b.i,
                    b.j,
                    (k + 1) % m
                )));
            }
        }
        Ok(Self { nodes, grid })
    }

    pub fn nodes(&self) -> &[NodeIndex] {
        &self.nodes
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn world_points(&self) -> Vec<Point> {
        self.nodes.iter().map(|&n| self.grid.world(n)).collect()
    }

    /// Nodes visited more than once (the chain touches itself there).
    pub fn repeated_nodes(&self) -> Vec<NodeIndex> {
        let mut sorted = self.nodes.clone();
        sorted.sort_unstable();
        let mut out: Vec<NodeIndex> = sorted
            .windows(2)
            .filter(|w| w[0] == w[1])
            .map(|w| w[0])
            .collect();
        out.dedup();
        out
    }
}

/// Walks the whole given contour and returns its staircase approximation.
pub fn trace_contour(given: &Contour, grid: &Grid) -> Result<ApproxContour, TraceError> {
    let pts = given.points();
    let n = pts.len();
    let orientation = given.orientation();

    let first = grid
        .snap(pts[0], Some(given))
        .map_err(|e| TraceError::from(e).at_point(0))?;
    let mut chain = vec![first];

    let mut closing = None;
    for k in 1..=n {
        let idx = k % n;
        let (from, to) = (pts[k - 1], pts[idx]);
        let seg = SegmentLine::new(from, to).expect("normalized contours have no repeated points");
        let side = line_side(&seg, orientation);

        let last = *chain.last().expect("chain is non-empty");
        let (tx, ty) = grid.index_coords(to);
        let gap_x = (tx - last.i as f64).abs();
        let gap_y = (ty - last.j as f64).abs();
        if gap_x >= 1.0 - INDEX_EPS || gap_y >= 1.0 - INDEX_EPS {
            chain =
                bridge_concavity(chain, &seg, side, given, grid).map_err(|e| e.at_point(idx))?;
            let last = *chain.last().expect("chain is non-empty");
            let emitted = trace_segment(last, &seg, to, side, grid).map_err(|e| e.at_point(idx))?;
            chain.extend(emitted);
        }

        let next = pts[(idx + 1) % n];
        if vertex_turn(from, to, next, orientation) == Turn::Convex {
            chain = prune_convexity(chain, given, grid).map_err(|e| e.at_point(idx))?;
        }
        if idx == 0 {
            closing = Some((seg, side));
        }
    }

    let (seg, side) = closing.expect("loop visits the closing segment");
    connect_to_start(&mut chain, first, &seg, side, grid).map_err(|e| e.at_point(0))?;
    chain.dedup();
    while chain.len() > 1 && chain.last() == chain.first() {
        chain.pop();
    }

    let approx = ApproxContour::new(chain, *grid)?;
    let repeated = approx.repeated_nodes();
    if !repeated.is_empty() {
        warn!(
            "approximate contour touches itself at {} node(s): {:?}",
            repeated.len(),
            repeated.iter().map(|n| (n.i, n.j)).collect::<Vec<_>>()
        );
    }
    debug!(
        "traced {} given points into {} chain nodes",
        n,
        approx.len()
    );
    Ok(approx)
}
