//! Synthetic lane-graph builders: chain, fork, grid, roundabout.
//!
//! These cover the topologies the rest of the crate cares about: a single
//! corridor, a branch point, a DAG with combinatorially many routes, and a
//! directed cycle. Every builder returns a fully validated [`LaneGraph`].

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::lane_graph::{LaneGraph, Lanelet};

/// `n` collinear lanelets along +x, ids `0..n`, each `len` meters.
pub fn chain_map(n: u64, len: f64) -> Result<LaneGraph> {
    if n < 1 {
        return Err(Error::InvalidParameter("chain needs n >= 1".into()));
    }
    check_len(len)?;
    let entries = (0..n)
        .map(|i| {
            let lanelet = Lanelet {
                id: i,
                centerline: vec![
                    Point2::new(i as f64 * len, 0.0),
                    Point2::new((i + 1) as f64 * len, 0.0),
                ],
            };
            let succ = if i + 1 < n { vec![i + 1] } else { vec![] };
            (lanelet, succ)
        })
        .collect();
    LaneGraph::new(entries)
}

/// A stem lanelet (id 0) splitting into `branches` straight lanelets
/// (ids `1..=branches`) fanned over a 120-degree cone.
pub fn fork_map(branches: u64, len: f64) -> Result<LaneGraph> {
    if branches < 1 {
        return Err(Error::InvalidParameter("fork needs branches >= 1".into()));
    }
    check_len(len)?;
    let stem = Lanelet {
        id: 0,
        centerline: vec![Point2::new(-len, 0.0), Point2::new(0.0, 0.0)],
    };
    let mut entries = vec![(stem, (1..=branches).collect::<Vec<u64>>())];
    for b in 0..branches {
        let angle = if branches == 1 {
            0.0
        } else {
            let spread = 120f64.to_radians();
            -spread / 2.0 + spread * b as f64 / (branches - 1) as f64
        };
        let tip = Point2::new(len * angle.cos(), len * angle.sin());
        entries.push((
            Lanelet {
                id: b + 1,
                centerline: vec![Point2::new(0.0, 0.0), tip],
            },
            vec![],
        ));
    }
    LaneGraph::new(entries)
}

/// Manhattan grid of one-way streets heading east and north.
///
/// Intersections sit at `(c*len, r*len)` for `r in 0..rows`, `c in 0..cols`.
/// Eastbound lanelets come first in id order, then northbound. Strictly a
/// DAG, but route counts grow combinatorially with distance, so searches
/// over many blocks should budget their path cap.
pub fn grid_map(rows: u64, cols: u64, len: f64) -> Result<LaneGraph> {
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidParameter(
            "grid needs rows >= 2 and cols >= 2".into(),
        ));
    }
    check_len(len)?;
    let east_id = |r: u64, c: u64| r * (cols - 1) + c;
    let north_base = rows * (cols - 1);
    let north_id = |r: u64, c: u64| north_base + r * cols + c;
    // Successors of a lanelet ending at intersection (r, c).
    let departures = |r: u64, c: u64| {
        let mut out = Vec::new();
        if c + 1 < cols {
            out.push(east_id(r, c));
        }
        if r + 1 < rows {
            out.push(north_id(r, c));
        }
        out
    };
    let mut entries = Vec::new();
    for r in 0..rows {
        for c in 0..cols - 1 {
            entries.push((
                Lanelet {
                    id: east_id(r, c),
                    centerline: vec![
                        Point2::new(c as f64 * len, r as f64 * len),
                        Point2::new((c + 1) as f64 * len, r as f64 * len),
                    ],
                },
                departures(r, c + 1),
            ));
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            entries.push((
                Lanelet {
                    id: north_id(r, c),
                    centerline: vec![
                        Point2::new(c as f64 * len, r as f64 * len),
                        Point2::new(c as f64 * len, (r + 1) as f64 * len),
                    ],
                },
                departures(r + 1, c),
            ));
        }
    }
    LaneGraph::new(entries)
}

/// Circular one-way ring with `exits` evenly spaced connections.
///
/// Ring arcs (ids `0..exits`) form a directed cycle; at each junction an
/// entry lanelet (id `200 + i`) feeds the ring and an exit lanelet
/// (id `100 + i`) leaves it radially. Arc centerlines are sampled at 8
/// segments so the ring is visibly round.
pub fn roundabout_map(exits: u64, radius: f64) -> Result<LaneGraph> {
    if !(2..=99).contains(&exits) {
        return Err(Error::InvalidParameter(
            "roundabout needs 2..=99 exits".into(),
        ));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must be finite and > 0, got {radius}"
        )));
    }
    // Junction vertices, computed once so arc/exit/entry endpoints coincide
    // bitwise and guideline joints collapse exactly.
    let junction: Vec<Point2> = (0..exits)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / exits as f64;
            Point2::new(radius * a.cos(), radius * a.sin())
        })
        .collect();
    let outer: Vec<Point2> = (0..exits)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / exits as f64;
            Point2::new(2.0 * radius * a.cos(), 2.0 * radius * a.sin())
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..exits {
        let next = (i + 1) % exits;
        let a0 = std::f64::consts::TAU * i as f64 / exits as f64;
        let step = std::f64::consts::TAU / exits as f64 / 8.0;
        let mut centerline = vec![junction[i as usize]];
        for j in 1..8 {
            let a = a0 + step * j as f64;
            centerline.push(Point2::new(radius * a.cos(), radius * a.sin()));
        }
        centerline.push(junction[next as usize]);
        entries.push((
            Lanelet { id: i, centerline },
            vec![next, 100 + next],
        ));
    }
    for i in 0..exits {
        entries.push((
            Lanelet {
                id: 100 + i,
                centerline: vec![junction[i as usize], outer[i as usize]],
            },
            vec![],
        ));
        entries.push((
            Lanelet {
                id: 200 + i,
                centerline: vec![outer[i as usize], junction[i as usize]],
            },
            vec![i],
        ));
    }
    LaneGraph::new(entries)
}

fn check_len(len: f64) -> Result<()> {
    if !(len.is_finite() && len > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lanelet length must be finite and > 0, got {len}"
        )));
    }
    Ok(())
}
