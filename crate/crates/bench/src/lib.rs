//! Workloads shared by the criterion benches.

use stairmesh::{shapes, Contour, Point};

/// Star-like blob with `n` vertices and a gently varying radius, roughly the
/// size of a densely digitized outline.
pub fn blob(n: usize) -> Contour {
    let pts = (0..n)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / n as f64;
            let r = 0.35 + 0.06 * (3.0 * t).sin() + 0.03 * (7.0 * t).cos();
            Point::new(0.5 + r * t.cos(), 0.5 + r * t.sin())
        })
        .collect();
    Contour::new(pts).expect("blob radius stays positive")
}

pub fn circle64() -> Contour {
    shapes::circle(64, Point::new(0.5, 0.5), 0.4)
}
