//! Displacement metrics over aligned sample and prediction files.
//!
//! Samples here are multi-modal: each stores several equally valid futures.
//! Benchmark metrics assume a single ground truth, so the aggregate takes the
//! best value over (future, prediction) pairs; single-future samples reduce
//! to the standard definitions.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::matching_loss::{aux_loss, read_prediction_records, PredictionRecord, PredictionSet};
use crate::sample_gen::{read_sample_records, SampleRecord};

pub const DEFAULT_MISS_THRESHOLD: f64 = 2.0;

/// Aggregated metrics over a dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub k: usize,
    pub n_samples: u64,
    pub miss_threshold: f64,
    pub min_ade_k: f64,
    pub min_fde_k: f64,
    pub miss_rate_k: f64,
}

impl MetricReport {
    /// Fixed-width table for terminals; the JSON form is the machine output.
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let k = self.k;
        let _ = writeln!(s, "{:<18} {:>12}", "metric", "value");
        let _ = writeln!(s, "{:<18} {:>12.6}", format!("minADE_{k}"), self.min_ade_k);
        let _ = writeln!(s, "{:<18} {:>12.6}", format!("minFDE_{k}"), self.min_fde_k);
        let _ = writeln!(
            s,
            "{:<18} {:>12.6}",
            format!("MR_{k} ({} m)", self.miss_threshold),
            self.miss_rate_k
        );
        let _ = writeln!(s, "{:<18} {:>12}", "samples", self.n_samples);
        s
    }
}

/// Metric report plus the mean matching loss over the same file pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub report: MetricReport,
    /// Mean auxiliary loss per sample, computed over all stored predictions
    /// (not truncated to k).
    pub mean_aux_loss: f64,
}

impl Evaluation {
    pub fn render_table(&self) -> String {
        let mut s = self.report.render_table();
        let _ = writeln!(s, "{:<18} {:>12.6}", "mean aux_loss", self.mean_aux_loss);
        s
    }
}

fn check_lengths(preds: &[Vec<Point2>], gt: &[Point2]) -> Result<()> {
    if preds.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    for p in preds {
        if p.len() != gt.len() {
            return Err(Error::LengthMismatch {
                expected: gt.len(),
                got: p.len(),
            });
        }
    }
    Ok(())
}

/// Smallest final-point displacement over the predictions.
pub fn min_fde(preds: &[Vec<Point2>], gt: &[Point2]) -> Result<f64> {
    check_lengths(preds, gt)?;
    let gt_final = *gt.last().ok_or_else(|| Error::Validation("empty ground truth".into()))?;
    Ok(preds
        .iter()
        .map(|p| p.last().unwrap().distance(&gt_final))
        .fold(f64::INFINITY, f64::min))
}

/// Smallest mean per-point displacement over the predictions.
pub fn min_ade(preds: &[Vec<Point2>], gt: &[Point2]) -> Result<f64> {
    check_lengths(preds, gt)?;
    if gt.is_empty() {
        return Err(Error::Validation("empty ground truth".into()));
    }
    Ok(preds
        .iter()
        .map(|p| {
            p.iter().zip(gt).map(|(a, b)| a.distance(b)).sum::<f64>() / gt.len() as f64
        })
        .fold(f64::INFINITY, f64::min))
}

/// A miss is a best final displacement beyond the threshold.
pub fn is_miss(preds: &[Vec<Point2>], gt: &[Point2], threshold: f64) -> Result<bool> {
    Ok(min_fde(preds, gt)? > threshold)
}

/// Per-sample metrics over in-memory records, averaged across the dataset.
///
/// Records align by `idx`; every sample must have a prediction record, while
/// prediction records without a sample are ignored. Only the first `k` stored
/// predictions enter the displacement metrics; the auxiliary loss uses every
/// stored prediction. The ground truth per sample is its closest future.
pub fn evaluate_records(
    samples: &[SampleRecord],
    predictions: &[PredictionRecord],
    k: usize,
    miss_threshold: f64,
) -> Result<Evaluation> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let by_idx: HashMap<u64, &PredictionRecord> =
        predictions.iter().map(|p| (p.idx, p)).collect();
    let mut sum_ade = 0.0;
    let mut sum_fde = 0.0;
    let mut misses = 0u64;
    let mut sum_aux = 0.0;
    for sample in samples {
        let pred = by_idx
            .get(&sample.idx)
            .ok_or(Error::MissingPrediction(sample.idx))?;
        if pred.trajectories.len() < k {
            return Err(Error::NotEnoughPredictions {
                k,
                available: pred.trajectories.len(),
            });
        }
        let top_k = &pred.trajectories[..k];
        let mut best_ade = f64::INFINITY;
        let mut best_fde = f64::INFINITY;
        for future in &sample.futures {
            best_ade = best_ade.min(min_ade(top_k, future)?);
            best_fde = best_fde.min(min_fde(top_k, future)?);
        }
        sum_ade += best_ade;
        sum_fde += best_fde;
        if best_fde > miss_threshold {
            misses += 1;
        }
        let set = PredictionSet {
            trajectories: pred.trajectories.clone(),
            logits: pred.logits.clone(),
        };
        sum_aux += aux_loss(&set, &sample.futures)?;
    }
    let n = samples.len() as f64;
    let (ade, fde, mr, aux) = if samples.is_empty() {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        (sum_ade / n, sum_fde / n, misses as f64 / n, sum_aux / n)
    };
    Ok(Evaluation {
        report: MetricReport {
            k,
            n_samples: samples.len() as u64,
            miss_threshold,
            min_ade_k: ade,
            min_fde_k: fde,
            miss_rate_k: mr,
        },
        mean_aux_loss: aux,
    })
}

/// [`evaluate_records`] over JSON-lines files on disk.
pub fn evaluate_files(
    sample_path: &Path,
    prediction_path: &Path,
    k: usize,
    miss_threshold: f64,
) -> Result<Evaluation> {
    let samples = read_sample_records(sample_path)?;
    let predictions = read_prediction_records(prediction_path)?;
    evaluate_records(&samples, &predictions, k, miss_threshold)
}
