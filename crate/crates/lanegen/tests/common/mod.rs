//! Test-side oracles: independent reference implementations the acceptance
//! suite checks the library against. Each is written for obviousness, not
//! speed, and deliberately shares no code with the crate internals.

#![allow(dead_code)]

use lanegen::{LaneGraph, Lanelet, Point2};

/// Minimal assignment cost by exhaustive enumeration over all injective
/// maps of the smaller side of the matrix into the larger.
pub fn brute_force_assignment(cost: &[Vec<f64>]) -> f64 {
    let rows = cost.len();
    let cols = cost[0].len();
    if rows <= cols {
        let mut used = vec![false; cols];
        best_from(cost, 0, &mut used)
    } else {
        let flipped: Vec<Vec<f64>> = (0..cols)
            .map(|j| (0..rows).map(|i| cost[i][j]).collect())
            .collect();
        let mut used = vec![false; rows];
        best_from(&flipped, 0, &mut used)
    }
}

fn best_from(cost: &[Vec<f64>], row: usize, used: &mut [bool]) -> f64 {
    if row == cost.len() {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for col in 0..used.len() {
        if !used[col] {
            used[col] = true;
            best = best.min(cost[row][col] + best_from(cost, row + 1, used));
            used[col] = false;
        }
    }
    best
}

/// Reference path enumerator, straight from the stopping rule: walk
/// successors depth-first in declaration order, emit the path at any tip
/// whose accumulated lanelet length reaches `max_dist` or that has no
/// successors. Revisits are allowed. Returns `None` once more than `cap`
/// paths would be emitted (used to skip pathological random graphs).
pub fn oracle_paths(
    succ: &[Vec<usize>],
    lengths: &[f64],
    start: usize,
    max_dist: f64,
    cap: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut stack = vec![start];
    if emit(succ, lengths, max_dist, lengths[start], &mut stack, &mut out, cap) {
        Some(out)
    } else {
        None
    }
}

fn emit(
    succ: &[Vec<usize>],
    lengths: &[f64],
    max_dist: f64,
    acc: f64,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> bool {
    let tip = *stack.last().unwrap();
    if acc >= max_dist || succ[tip].is_empty() {
        if out.len() == cap {
            return false;
        }
        out.push(stack.clone());
        return true;
    }
    for &next in &succ[tip] {
        stack.push(next);
        let ok = emit(succ, lengths, max_dist, acc + lengths[next], stack, out, cap);
        stack.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Straight two-point lanelets with the given arc lengths, each on its own
/// row; geometry beyond arc length is irrelevant to path search.
pub fn graph_from_lengths(lengths: &[f64], succ: &[Vec<usize>]) -> LaneGraph {
    let entries = lengths
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            let lanelet = Lanelet {
                id: i as u64,
                centerline: vec![
                    Point2::new(0.0, i as f64),
                    Point2::new(len, i as f64),
                ],
            };
            (lanelet, succ[i].iter().map(|&s| s as u64).collect())
        })
        .collect();
    LaneGraph::new(entries).expect("oracle graphs are valid by construction")
}

/// Fine-step trapezoid integration of the clamped speed profile
/// v(t) = max(0, v0 + a t); reference for the closed-form arc schedule.
/// Substep times are computed from integer indices so no float drift
/// accumulates across steps.
pub fn integrated_schedule(v0: f64, a: f64, dt: f64, n: usize, substeps: u64) -> Vec<f64> {
    let fine = dt / substeps as f64;
    let v = |t: f64| (v0 + a * t).max(0.0);
    let mut out = Vec::with_capacity(n);
    let mut s = 0.0;
    for k in 0..n as u64 {
        for j in 0..substeps {
            let t0 = (k * substeps + j) as f64 * fine;
            s += 0.5 * (v(t0) + v(t0 + fine)) * fine;
        }
        out.push(s);
    }
    out
}
