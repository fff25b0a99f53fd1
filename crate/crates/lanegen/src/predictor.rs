//! Rule-based baseline predictor.
//!
//! It exists to close the generate/predict/evaluate loop without a learning
//! stack: estimate speed from the past, map-match the present position, and
//! coast at constant speed along every lane path ahead. On noise-free
//! constant-speed samples this reproduces the ground truth exactly, which is
//! what the closed-loop tests rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{polyline_length, project_onto_polyline, Point2};
use crate::kinematics::interpolate_along;
use crate::lane_graph::LaneGraph;
use crate::matching_loss::PredictionSet;
use crate::path_search::{build_guideline, enumerate_future_paths};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedEstimator {
    /// Distance of the last past step divided by dt.
    LastStep,
    /// Mean step distance over the whole past divided by dt.
    MeanPast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PredictorConfig {
    /// Number of output modes; always emitted exactly.
    pub k: usize,
    pub speed_estimator: SpeedEstimator,
    /// How far into the future to predict, seconds.
    pub horizon: f64,
}

impl Default for PredictorConfig {
    fn default() -> Self {
        Self {
            k: 6,
            speed_estimator: SpeedEstimator::LastStep,
            horizon: 3.0,
        }
    }
}

impl PredictorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("predictor k must be >= 1".into()));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        Ok(())
    }
}

/// Lanelet whose centerline is closest to `point`; ties go to the lowest id.
pub fn map_match(graph: &LaneGraph, point: &Point2) -> Result<u64> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut best_d = f64::INFINITY;
    let mut best_id = u64::MAX;
    for lanelet in graph.lanelets() {
        let d = project_onto_polyline(point, &lanelet.centerline).distance;
        if d < best_d || (d == best_d && lanelet.id < best_id) {
            best_d = d;
            best_id = lanelet.id;
        }
    }
    Ok(best_id)
}

/// Predict exactly `cfg.k` constant-speed futures from a past track.
///
/// Speed comes from the past per the estimator; the agent's position is the
/// last past point projected onto the matched lanelet. One mode per lane
/// path, shortest paths first; surplus paths are dropped and a shortfall is
/// filled by duplicating the last mode. Logits are negative path lengths, so
/// shorter paths rank as more probable.
pub fn predict(
    graph: &LaneGraph,
    past: &[Point2],
    cfg: &PredictorConfig,
    dt: f64,
) -> Result<PredictionSet> {
    cfg.validate()?;
    if past.len() < 2 {
        return Err(Error::PastTooShort(past.len()));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
    }
    let speed = match cfg.speed_estimator {
        SpeedEstimator::LastStep => past[past.len() - 1].distance(&past[past.len() - 2]) / dt,
        SpeedEstimator::MeanPast => polyline_length(past) / ((past.len() - 1) as f64 * dt),
    };
    let n_points = (cfg.horizon / dt).round().max(1.0) as usize;
    let present = *past.last().unwrap();

    let matched = map_match(graph, &present)?;
    let matched_len = graph.lanelet(matched)?.arc_length();
    let reach = matched_len + speed * cfg.horizon + 10.0;
    let mut paths = enumerate_future_paths(graph, matched, reach)?;
    if paths.is_empty() {
        return Err(Error::Validation(format!(
            "no path found from matched lanelet {matched}"
        )));
    }
    paths.sort_by(|a, b| a.total_length.partial_cmp(&b.total_length).unwrap());
    paths.truncate(cfg.k);

    let mut trajectories = Vec::with_capacity(cfg.k);
    let mut logits = Vec::with_capacity(cfg.k);
    for path in &paths {
        let gl = build_guideline(graph, path)?;
        let agent_arc = project_onto_polyline(&present, gl.points()).arc_pos;
        let arcs: Vec<f64> = (1..=n_points)
            .map(|j| agent_arc + speed * (j as f64 * dt))
            .collect();
        trajectories.push(interpolate_along(&gl, &arcs));
        logits.push(-path.total_length);
    }
    while trajectories.len() < cfg.k {
        trajectories.push(trajectories.last().unwrap().clone());
        logits.push(*logits.last().unwrap());
    }
    Ok(PredictionSet { trajectories, logits })
}
