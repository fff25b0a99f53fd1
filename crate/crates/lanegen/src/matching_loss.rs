//! Assignment between predictions and multi-modal ground truths, and the
//! training losses built on it.
//!
//! The auxiliary loss matches predictions to ground truths one-to-one
//! (Hungarian) and averages the matched mean-L2 distances over the number of
//! ground truths, so unmatched predictions contribute exactly zero. The main
//! loss is winner-takes-all: only the prediction with the smallest final
//! displacement is penalized, via a smooth L1 on its coordinates.

use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Point2;

/// Documented default trade-off weights for the combined loss.
pub const LAMBDA_ARGOVERSE: f64 = 0.5;
pub const LAMBDA_INTERACTION: f64 = 0.1;

/// A model's output for one sample: trajectories plus unnormalized
/// probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictionSet {
    pub trajectories: Vec<Vec<Point2>>,
    pub logits: Vec<f64>,
}

impl PredictionSet {
    pub fn validate(&self) -> Result<()> {
        if self.trajectories.is_empty() {
            return Err(Error::EmptyPredictions);
        }
        if self.logits.len() != self.trajectories.len() {
            return Err(Error::LengthMismatch {
                expected: self.trajectories.len(),
                got: self.logits.len(),
            });
        }
        let n = self.trajectories[0].len();
        for t in &self.trajectories {
            if t.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: t.len(),
                });
            }
        }
        Ok(())
    }
}

/// Minimum-cost injective matching from ground truths to predictions.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    /// (ground-truth index, prediction index), sorted by ground-truth index;
    /// exactly min(n_gt, n_pred) pairs.
    pub matches: Vec<(usize, usize)>,
    /// Sum of the matched cost-matrix entries.
    pub total_cost: f64,
}

/// Cost matrix entry (j, i) = mean over points of the L2 distance between
/// ground truth j and prediction i.
pub fn mean_l2_cost(preds: &[Vec<Point2>], gts: &[Vec<Point2>]) -> Result<Vec<Vec<f64>>> {
    if preds.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    if gts.is_empty() {
        return Err(Error::Validation("no ground truths to match".into()));
    }
    let n = gts[0].len();
    for t in gts.iter().chain(preds.iter()) {
        if t.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: t.len(),
            });
        }
    }
    Ok(gts
        .iter()
        .map(|gt| {
            preds
                .iter()
                .map(|pred| {
                    let sum: f64 = gt.iter().zip(pred).map(|(q, p)| q.distance(p)).sum();
                    sum / n as f64
                })
                .collect()
        })
        .collect())
}

/// Minimum-cost assignment over a rectangular matrix (rows = ground truths,
/// columns = predictions), O(n³) shortest augmenting paths.
///
/// The matrix is padded to square with a uniform sentinel larger than any
/// real entry sum; dummy rows/columns absorb the surplus side, so the real
/// matches minimize cost over all injective maps of size min(rows, cols).
/// Scan order makes ties resolve toward low indices.
pub fn hungarian(cost: &[Vec<f64>]) -> Result<Assignment> {
    let n_gt = cost.len();
    if n_gt == 0 || cost[0].is_empty() {
        return Err(Error::Validation("empty cost matrix".into()));
    }
    let n_pred = cost[0].len();
    let mut max_abs = 0.0f64;
    for (j, row) in cost.iter().enumerate() {
        if row.len() != n_pred {
            return Err(Error::LengthMismatch {
                expected: n_pred,
                got: row.len(),
            });
        }
        for (i, &c) in row.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCost { row: j, col: i });
            }
            max_abs = max_abs.max(c.abs());
        }
    }

    let n = n_gt.max(n_pred);
    let sentinel = (max_abs + 1.0) * (n as f64 + 1.0);
    let at = |j: usize, i: usize| -> f64 {
        if j < n_gt && i < n_pred {
            cost[j][i]
        } else {
            sentinel
        }
    };

    // Jonker-Volgenant with 1-based columns; p[j] is the row matched to
    // column j, column 0 is the virtual source.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut matches = Vec::new();
    let mut total_cost = 0.0;
    for j in 1..=n {
        let row = p[j] - 1;
        let col = j - 1;
        if row < n_gt && col < n_pred {
            matches.push((row, col));
            total_cost += cost[row][col];
        }
    }
    matches.sort_unstable();
    debug_assert_eq!(matches.len(), n_gt.min(n_pred));
    Ok(Assignment { matches, total_cost })
}

/// Matched mean-L2 distances averaged over the number of ground truths.
/// Predictions left unmatched contribute zero.
pub fn aux_loss(preds: &PredictionSet, gts: &[Vec<Point2>]) -> Result<f64> {
    preds.validate()?;
    let cost = mean_l2_cost(&preds.trajectories, gts)?;
    let assignment = hungarian(&cost)?;
    Ok(assignment.total_cost / gts.len() as f64)
}

/// For every prediction, the index of the nearest ground truth by mean-L2
/// distance (ties to the lowest index). These are the targets the
/// probability loss trains against.
pub fn closest_gt_targets(preds: &[Vec<Point2>], gts: &[Vec<Point2>]) -> Result<Vec<usize>> {
    let cost = mean_l2_cost(preds, gts)?;
    Ok((0..preds.len())
        .map(|i| {
            let mut best = 0usize;
            for j in 1..gts.len() {
                if cost[j][i] < cost[best][i] {
                    best = j;
                }
            }
            best
        })
        .collect())
}

/// 0.5·x² inside the unit interval, |x| − 0.5 outside.
pub fn smooth_l1(x: f64) -> f64 {
    let a = x.abs();
    if a < 1.0 {
        0.5 * x * x
    } else {
        a - 0.5
    }
}

/// Winner-takes-all trajectory loss against a single ground truth.
///
/// The winner is the prediction whose final point lies closest to the ground
/// truth's final point (ties to the lowest index); the loss is the winner's
/// per-coordinate smooth L1, summed over x and y and averaged over points.
pub fn wta_main_loss(preds: &PredictionSet, gt: &[Point2]) -> Result<(f64, usize)> {
    preds.validate()?;
    let n = gt.len();
    if n == 0 || preds.trajectories[0].len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: preds.trajectories[0].len(),
        });
    }
    let gt_final = gt[n - 1];
    let mut winner = 0usize;
    let mut best = f64::INFINITY;
    for (i, traj) in preds.trajectories.iter().enumerate() {
        let d = traj[n - 1].distance(&gt_final);
        if d < best {
            best = d;
            winner = i;
        }
    }
    let loss: f64 = preds.trajectories[winner]
        .iter()
        .zip(gt)
        .map(|(p, q)| smooth_l1(p.x - q.x) + smooth_l1(p.y - q.y))
        .sum::<f64>()
        / n as f64;
    Ok((loss, winner))
}

/// Negative log softmax probability of the target mode. This is a plain
/// cross-entropy stand-in for the original probability loss.
pub fn prob_loss(logits: &[f64], target: usize) -> Result<f64> {
    if target >= logits.len() {
        return Err(Error::IndexOutOfRange {
            index: target,
            len: logits.len(),
        });
    }
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = m + logits.iter().map(|l| (l - m).exp()).sum::<f64>().ln();
    Ok(lse - logits[target])
}

/// main + lambda·aux.
pub fn combined_loss(main: f64, aux: f64, lambda: f64) -> f64 {
    main + lambda * aux
}

/// Serialized prediction set, one JSON object per line, aligned with the
/// sample file by `idx`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictionRecord {
    pub idx: u64,
    pub trajectories: Vec<Vec<Point2>>,
    pub logits: Vec<f64>,
}

impl PredictionRecord {
    pub fn prediction_set(&self) -> PredictionSet {
        PredictionSet {
            trajectories: self.trajectories.clone(),
            logits: self.logits.clone(),
        }
    }
}

/// Write prediction records as JSON lines.
pub fn write_prediction_records(path: &Path, records: &[PredictionRecord]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for rec in records {
        serde_json::to_writer(&mut w, rec).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a JSON-lines prediction file.
pub fn read_prediction_records(path: &Path) -> Result<Vec<PredictionRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PredictionRecord =
            serde_json::from_str(&line).map_err(|e| Error::SchemaMismatch {
                path: path.display().to_string(),
                line: i + 1,
                detail: e.to_string(),
            })?;
        out.push(rec);
    }
    Ok(out)
}
