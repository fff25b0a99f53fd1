//! Planar geometry primitives shared across the crate.

use serde::{Deserialize, Serialize};

/// A point in the map frame, meters. Serializes as a `[x, y]` pair, the
/// shape used by every file format in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Self { x: p[0], y: p[1] }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Sum of Euclidean segment lengths of a polyline.
pub fn polyline_length(points: &[Point2]) -> f64 {
    points.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

/// Result of projecting a point onto a polyline.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    /// Distance from the query point to its closest point on the polyline.
    pub distance: f64,
    /// Arc-length position of that closest point, measured from the first vertex.
    pub arc_pos: f64,
}

/// Project `p` onto the polyline, clamping to its extent.
///
/// Ties between segments resolve to the smallest arc position.
pub fn project_onto_polyline(p: &Point2, points: &[Point2]) -> Projection {
    project_impl(p, points, false)
}

/// Project `p` onto the polyline with the first and last segments extended to
/// infinite rays. `arc_pos` may then be negative (before the first vertex) or
/// exceed the polyline length (past the last vertex).
pub fn project_onto_polyline_extended(p: &Point2, points: &[Point2]) -> Projection {
    project_impl(p, points, true)
}

fn project_impl(p: &Point2, points: &[Point2], extend_ends: bool) -> Projection {
    assert!(points.len() >= 2, "polyline needs at least 2 points");
    let mut best = Projection {
        distance: f64::INFINITY,
        arc_pos: 0.0,
    };
    let mut cum = 0.0;
    let n_segs = points.len() - 1;
    for i in 0..n_segs {
        let (a, b) = (points[i], points[i + 1]);
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let len2 = dx * dx + dy * dy;
        let mut t = if len2 > 0.0 {
            ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2
        } else {
            0.0
        };
        let clamp_lo = !(extend_ends && i == 0);
        let clamp_hi = !(extend_ends && i == n_segs - 1);
        if clamp_lo {
            t = t.max(0.0);
        }
        if clamp_hi {
            t = t.min(1.0);
        }
        let qx = a.x + t * dx;
        let qy = a.y + t * dy;
        let d = (p.x - qx).hypot(p.y - qy);
        if d < best.distance {
            best = Projection {
                distance: d,
                arc_pos: cum + t * len2.sqrt(),
            };
        }
        cum += len2.sqrt();
    }
    best
}
