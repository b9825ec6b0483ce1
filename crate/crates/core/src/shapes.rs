//! Synthetic test geometries, all counter-clockwise.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::geometry::{Contour, Point};

/// Regular `n`-gon inscribed in a circle.
pub fn circle(n: usize, center: Point, radius: f64) -> Contour {
    ellipse(n, center, radius, radius)
}

pub fn ellipse(n: usize, center: Point, semi_x: f64, semi_y: f64) -> Contour {
    let pts = (0..n)
        .map(|k| {
            let t = k as f64 * TAU / n as f64;
            Point::new(center.x + semi_x * t.cos(), center.y + semi_y * t.sin())
        })
        .collect();
    Contour::new(pts).expect("ellipse with positive semi-axes")
}

/// Unit square with the upper-right block `[1/3, 1] x [1/3, 1]` removed.
pub fn l_shape() -> Contour {
    let t = 1.0 / 3.0;
    Contour::new(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, t),
        Point::new(t, t),
        Point::new(t, 1.0),
        Point::new(0.0, 1.0),
    ])
    .expect("valid L-shape")
}

/// Star with `tips` outer vertices alternating with inner ones; the first
/// tip points straight up.
pub fn star(tips: usize, center: Point, outer: f64, inner: f64) -> Contour {
    let pts = (0..2 * tips)
        .map(|k| {
            let r = if k % 2 == 0 { outer } else { inner };
            let t = FRAC_PI_2 + k as f64 * TAU / (2 * tips) as f64;
            Point::new(center.x + r * t.cos(), center.y + r * t.sin())
        })
        .collect();
    Contour::new(pts).expect("star with positive radii")
}

pub fn rectangle(x0: f64, y0: f64, width: f64, height: f64) -> Contour {
    Contour::new(vec![
        Point::new(x0, y0),
        Point::new(x0 + width, y0),
        Point::new(x0 + width, y0 + height),
        Point::new(x0, y0 + height),
    ])
    .expect("rectangle with positive size")
}
