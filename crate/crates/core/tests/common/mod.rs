//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use stairmesh::{shapes, ApproxContour, Contour, Grid, NodeClass, NodeIndex, Point};

pub const LEVELS: [usize; 4] = [20, 50, 100, 200];

pub struct Fixture {
    pub name: &'static str,
    pub contour: Contour,
    pub convex: bool,
}

pub fn fixtures() -> Vec<Fixture> {
    let c = Point::new(0.5, 0.5);
    vec![
        Fixture {
            name: "circle",
            contour: shapes::circle(64, c, 0.4),
            convex: true,
        },
        Fixture {
            name: "ellipse",
            contour: shapes::ellipse(64, c, 0.4, 0.2),
            convex: true,
        },
        Fixture {
            name: "l-shape",
            contour: shapes::l_shape(),
            convex: false,
        },
        Fixture {
            name: "star",
            contour: shapes::star(5, c, 0.45, 0.2),
            convex: false,
        },
        Fixture {
            name: "rectangle",
            contour: shapes::rectangle(0.0, 0.0, 2.0, 1.0),
            convex: true,
        },
    ]
}

pub fn fixture(name: &str) -> Contour {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .map(|f| f.contour)
        .expect("known fixture")
}

/// Wobbly closed curve with `n` vertices, star-shaped about (0.5, 0.5).
pub fn blob(n: usize) -> Contour {
    let pts = (0..n)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / n as f64;
            let r = 0.35 + 0.06 * (3.0 * t).sin() + 0.03 * (7.0 * t).cos();
            Point::new(0.5 + r * t.cos(), 0.5 + r * t.sin())
        })
        .collect();
    Contour::new(pts).unwrap()
}

pub fn contour(pts: &[(f64, f64)]) -> Contour {
    Contour::new(pts.iter().map(|&p| p.into()).collect()).unwrap()
}

pub fn ij(nodes: &[NodeIndex]) -> Vec<(i64, i64)> {
    nodes.iter().map(|n| (n.i, n.j)).collect()
}

/// Textbook crossing-number test. `None` when `p` is a vertex of the
/// polygon or lies on one of its edges (checked with exact collinearity).
pub fn ray_cast(p: Point, poly: &[Point]) -> Option<bool> {
    let mut inside = false;
    let n = poly.len();
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        let within = p.x >= a.x.min(b.x)
            && p.x <= a.x.max(b.x)
            && p.y >= a.y.min(b.y)
            && p.y <= a.y.max(b.y);
        if cross.abs() <= 1e-12 * (b.x - a.x).hypot(b.y - a.y) && within {
            return None;
        }
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    Some(inside)
}

/// Per-node labels computed one node at a time with [`ray_cast`] against
/// the chain's world polygon, in `(j, i)` order.
pub fn brute_force_labels(grid: &Grid, approx: &ApproxContour) -> Vec<NodeClass> {
    let poly = approx.world_points();
    let on_chain: std::collections::HashSet<NodeIndex> = approx.nodes().iter().copied().collect();
    let mut out = Vec::with_capacity(grid.node_count());
    for j in 0..=grid.ny() as i64 {
        for i in 0..=grid.nx() as i64 {
            let n = NodeIndex::new(i, j);
            let label = if on_chain.contains(&n) {
                NodeClass::Boundary
            } else {
                match ray_cast(grid.world(n), &poly) {
                    Some(true) => NodeClass::Interior,
                    Some(false) => NodeClass::Exterior,
                    None => NodeClass::Boundary,
                }
            };
            out.push(label);
        }
    }
    out
}

/// Exact rational re-derivation of candidate selection and segment
/// tracing. Interior is "left of travel" for counter-clockwise contours
/// and "right of travel" for clockwise ones.
pub mod exact {
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    use stairmesh::NodeIndex;

    pub type Q = BigRational;

    pub fn q(v: f64) -> Q {
        BigRational::from_float(v).expect("finite")
    }

    #[derive(Clone)]
    pub struct ExactGrid {
        pub x0: Q,
        pub y0: Q,
        pub dx: Q,
        pub dy: Q,
        pub nx: i64,
        pub ny: i64,
    }

    impl ExactGrid {
        pub fn new(x0: f64, y0: f64, xf: f64, yf: f64, nx: i64, ny: i64) -> Self {
            let n = |v: i64| Q::from_integer(v.into());
            Self {
                dx: (q(xf) - q(x0)) / n(nx),
                dy: (q(yf) - q(y0)) / n(ny),
                x0: q(x0),
                y0: q(y0),
                nx,
                ny,
            }
        }

        pub fn world(&self, n: NodeIndex) -> (Q, Q) {
            let i = Q::from_integer(n.i.into());
            let j = Q::from_integer(n.j.into());
            (&self.x0 + i * &self.dx, &self.y0 + j * &self.dy)
        }

        pub fn contains(&self, n: NodeIndex) -> bool {
            (0..=self.nx).contains(&n.i) && (0..=self.ny).contains(&n.j)
        }

        pub fn index_of(&self, x: &Q, y: &Q) -> (Q, Q) {
            ((x - &self.x0) / &self.dx, (y - &self.y0) / &self.dy)
        }
    }

    pub struct ExactLine {
        pub ax: Q,
        pub ay: Q,
        pub bx: Q,
        pub by: Q,
        pub ccw: bool,
    }

    impl ExactLine {
        pub fn new(a: (f64, f64), b: (f64, f64), ccw: bool) -> Self {
            Self {
                ax: q(a.0),
                ay: q(a.1),
                bx: q(b.0),
                by: q(b.1),
                ccw,
            }
        }

        /// Twice the signed area of (a, b, p): positive when `p` is left of
        /// the direction of travel. Proportional to the distance from `p`
        /// to the line by the same factor for every `p`.
        pub fn cross(&self, p: &(Q, Q)) -> Q {
            (&self.bx - &self.ax) * (&p.1 - &self.ay) - (&self.by - &self.ay) * (&p.0 - &self.ax)
        }

        pub fn admits(&self, p: &(Q, Q)) -> bool {
            let c = self.cross(p);
            if self.ccw {
                !c.is_negative()
            } else {
                !c.is_positive()
            }
        }

        pub fn signs(&self) -> (i64, i64) {
            let s = |v: Q| {
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            };
            (s(&self.bx - &self.ax), s(&self.by - &self.ay))
        }
    }

    pub fn candidates(cur: NodeIndex, sx: i64, sy: i64, g: &ExactGrid) -> Vec<NodeIndex> {
        let steps: Vec<(i64, i64)> = if sx != 0 && sy != 0 {
            vec![(sx, sy), (sx, 0), (0, sy)]
        } else {
            vec![(sx, sy)]
        };
        steps
            .into_iter()
            .map(|(di, dj)| NodeIndex::new(cur.i + di, cur.j + dj))
            .filter(|n| g.contains(*n))
            .collect()
    }

    /// Admissible candidate nearest to the line; earlier candidates win
    /// exact ties.
    pub fn select(cur: NodeIndex, line: &ExactLine, g: &ExactGrid) -> Option<NodeIndex> {
        let (sx, sy) = line.signs();
        let mut best: Option<(NodeIndex, Q)> = None;
        for c in candidates(cur, sx, sy, g) {
            let w = g.world(c);
            if !line.admits(&w) {
                continue;
            }
            let d = line.cross(&w).abs();
            if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
                best = Some((c, d));
            }
        }
        best.map(|b| b.0)
    }

    /// Steps from `start` while the target is at least one whole cell
    /// ahead in some axis of travel. `None` when a step has no admissible
    /// candidate.
    pub fn trace(start: NodeIndex, line: &ExactLine, g: &ExactGrid) -> Option<Vec<NodeIndex>> {
        let (sx, sy) = line.signs();
        let (ti, tj) = g.index_of(&line.bx, &line.by);
        let one = Q::one();
        let ahead = |t: &Q, c: i64, s: i64| {
            s != 0 && (t - Q::from_integer(c.into())) * Q::from_integer(s.into()) >= one
        };
        let mut out = Vec::new();
        let mut cur = start;
        while ahead(&ti, cur.i, sx) || ahead(&tj, cur.j, sy) {
            let next = if sx == 0 || sy == 0 {
                NodeIndex::new(cur.i + sx, cur.j + sy)
            } else {
                select(cur, line, g)?
            };
            out.push(next);
            cur = next;
        }
        Some(out)
    }

    /// Exact point-in-polygon for rational points: `Some(true)` strictly
    /// inside, `Some(false)` strictly outside, `None` on the boundary.
    pub fn inside(p: &(Q, Q), poly: &[(f64, f64)]) -> Option<bool> {
        let pts: Vec<(Q, Q)> = poly.iter().map(|&(x, y)| (q(x), q(y))).collect();
        let n = pts.len();
        let mut odd = false;
        for k in 0..n {
            let (a, b) = (&pts[k], &pts[(k + 1) % n]);
            let cross = (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0);
            let lo_x = a.0.clone().min(b.0.clone());
            let hi_x = a.0.clone().max(b.0.clone());
            let lo_y = a.1.clone().min(b.1.clone());
            let hi_y = a.1.clone().max(b.1.clone());
            if cross.is_zero() && p.0 >= lo_x && p.0 <= hi_x && p.1 >= lo_y && p.1 <= hi_y {
                return None;
            }
            if (a.1 > p.1) != (b.1 > p.1) {
                let x = &a.0 + (&p.1 - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1);
                if p.0 < x {
                    odd = !odd;
                }
            }
        }
        Some(odd)
    }
}
