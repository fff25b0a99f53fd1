//! Forward path enumeration, guide-line construction and backward history paths.
//!
//! A path is a sequence of lanelet ids; a trajectory is a timed sequence of
//! coordinates. This module only deals in paths and the polylines they induce.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::lane_graph::LaneGraph;

/// Safety cap on the number of enumerated paths. Dense graphs with short
/// lanelets can explode combinatorially; enumeration aborts with an error
/// instead of silently truncating.
pub const DEFAULT_PATH_CAP: usize = 64;

/// Two centerlines that meet end-to-start within this distance share the
/// joint vertex; the duplicate is dropped during concatenation.
pub const JOINT_TOLERANCE: f64 = 1e-6;

/// An ordered sequence of lanelet ids traversable via successor edges
/// (or predecessor edges for backward paths).
#[derive(Clone, Debug, PartialEq)]
pub struct LanePath {
    pub node_ids: Vec<u64>,
    /// Sum of member lanelet arc lengths, meters.
    pub total_length: f64,
}

/// Concatenated centerline polyline with its cumulative arc-length table.
#[derive(Clone, Debug, PartialEq)]
pub struct Guideline {
    points: Vec<Point2>,
    cum_arclen: Vec<f64>,
}

impl Guideline {
    /// Build from a polyline. Every segment must have positive length so the
    /// arc-length table is strictly increasing.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::GuidelineTooShort);
        }
        let mut cum_arclen = Vec::with_capacity(points.len());
        cum_arclen.push(0.0);
        for w in points.windows(2) {
            let d = w[0].distance(&w[1]);
            if d <= 0.0 {
                return Err(Error::Validation(
                    "guideline has a zero-length segment".into(),
                ));
            }
            cum_arclen.push(cum_arclen.last().unwrap() + d);
        }
        Ok(Self { points, cum_arclen })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn cum_arclen(&self) -> &[f64] {
        &self.cum_arclen
    }

    pub fn total_length(&self) -> f64 {
        *self.cum_arclen.last().unwrap()
    }

    /// The same polyline walked in the opposite direction.
    pub fn reversed(&self) -> Self {
        let points: Vec<Point2> = self.points.iter().rev().copied().collect();
        let total = self.total_length();
        let mut cum_arclen: Vec<f64> = self
            .cum_arclen
            .iter()
            .rev()
            .map(|&s| total - s)
            .collect();
        cum_arclen[0] = 0.0;
        Self { points, cum_arclen }
    }
}

/// Enumerate every forward path from `start` using the default path cap.
///
/// The search is a depth-first traversal over file-ordered successor lists.
/// A path terminates once its accumulated arc length reaches `max_dist` or
/// its tip has no successors. Revisiting nodes is allowed, so cycles are
/// traversed until the distance bound cuts them off.
pub fn enumerate_future_paths(
    graph: &LaneGraph,
    start: u64,
    max_dist: f64,
) -> Result<Vec<LanePath>> {
    enumerate_future_paths_with_cap(graph, start, max_dist, DEFAULT_PATH_CAP)
}

/// [`enumerate_future_paths`] with an explicit path-count cap.
pub fn enumerate_future_paths_with_cap(
    graph: &LaneGraph,
    start: u64,
    max_dist: f64,
    cap: usize,
) -> Result<Vec<LanePath>> {
    debug_assert!(max_dist > 0.0, "max_dist must be positive");
    graph.lanelet(start)?;
    let mut out = Vec::new();
    let mut stack = vec![start];
    dfs(graph, max_dist, cap, &mut stack, graph.lanelet(start)?.arc_length(), &mut out)?;
    Ok(out)
}

fn dfs(
    graph: &LaneGraph,
    max_dist: f64,
    cap: usize,
    stack: &mut Vec<u64>,
    acc_length: f64,
    out: &mut Vec<LanePath>,
) -> Result<()> {
    let tip = *stack.last().unwrap();
    let succs = graph.successors(tip)?;
    if acc_length >= max_dist || succs.is_empty() {
        if out.len() >= cap {
            return Err(Error::PathCapExceeded { cap });
        }
        out.push(LanePath {
            node_ids: stack.clone(),
            total_length: acc_length,
        });
        return Ok(());
    }
    // Successor lists borrow from the graph and stay valid across recursion.
    let succs: Vec<u64> = succs.to_vec();
    for next in succs {
        stack.push(next);
        let len = graph.lanelet(next)?.arc_length();
        dfs(graph, max_dist, cap, stack, acc_length + len, out)?;
        stack.pop();
    }
    Ok(())
}

/// Concatenate the member centerlines of `path` into a guide-line.
///
/// When the first point of a lanelet coincides with the last emitted point
/// within [`JOINT_TOLERANCE`], the duplicate is dropped; larger gaps are kept
/// and their bridging segment contributes to the arc length.
pub fn build_guideline(graph: &LaneGraph, path: &LanePath) -> Result<Guideline> {
    let mut points: Vec<Point2> = Vec::new();
    for &id in &path.node_ids {
        let lanelet = graph.lanelet(id)?;
        let mut line = lanelet.centerline.as_slice();
        if let Some(last) = points.last() {
            if last.distance(&line[0]) <= JOINT_TOLERANCE {
                line = &line[1..];
            }
        }
        points.extend_from_slice(line);
    }
    Guideline::new(points)
}

/// Walk predecessor edges from `start` until `max_dist` of accumulated arc
/// length is reached or no predecessor exists. At each branching one
/// predecessor is chosen uniformly from `rng`. Returned ids run from the
/// earliest lanelet to `start`.
pub fn backward_path<R: Rng>(
    graph: &LaneGraph,
    start: u64,
    max_dist: f64,
    rng: &mut R,
) -> Result<LanePath> {
    let mut ids = vec![start];
    let mut total = graph.lanelet(start)?.arc_length();
    let mut tip = start;
    while total < max_dist {
        let preds = graph.predecessors(tip)?;
        let chosen = match preds.len() {
            0 => break,
            1 => preds[0],
            n => preds[rng.gen_range(0..n)],
        };
        ids.push(chosen);
        total += graph.lanelet(chosen)?.arc_length();
        tip = chosen;
    }
    ids.reverse();
    Ok(LanePath {
        node_ids: ids,
        total_length: total,
    })
}
