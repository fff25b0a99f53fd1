//! Full training samples: one noisy past, one ground-truth future per lane
//! path, plus the equal-distance ground-truth variant used for multitask
//! training targets.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::kinematics::{
    add_past_noise, arc_length_schedule, interpolate_along, sample_profile, KinematicProfile,
    SamplingConfig,
};
use crate::lane_graph::LaneGraph;
use crate::path_search::{
    backward_path, build_guideline, enumerate_future_paths, enumerate_future_paths_with_cap,
};
use crate::rng::sample_stream;

/// Extra meters walked backward beyond the exact displacement need, so the
/// past interpolates real map geometry instead of extrapolating at the seam.
const BACKWARD_MARGIN: f64 = 1.0;

/// Give up on a sample index after this many consecutive rejected starts.
const MAX_ATTEMPTS_PER_SAMPLE: u64 = 1000;

/// One generated sample: a single shared past and one future per lane path.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySample {
    pub start_lanelet: u64,
    /// Oldest first; the last point is the (noisy) present position.
    pub past: Vec<Point2>,
    pub futures: Vec<Vec<Point2>>,
    pub profile: KinematicProfile,
    /// Lanelet ids of the path behind each future, index-aligned.
    pub path_ids: Vec<Vec<u64>>,
}

impl TrajectorySample {
    /// Check the structural invariants every emitted sample must satisfy.
    pub fn validate(&self, cfg: &SamplingConfig) -> Result<()> {
        if self.past.len() != cfg.n_past {
            return Err(Error::LengthMismatch {
                expected: cfg.n_past,
                got: self.past.len(),
            });
        }
        if self.futures.is_empty() || self.futures.len() > cfg.path_cap {
            return Err(Error::Validation(format!(
                "sample must carry 1..={} futures, has {}",
                cfg.path_cap,
                self.futures.len()
            )));
        }
        for f in &self.futures {
            if f.len() != cfg.n_future {
                return Err(Error::LengthMismatch {
                    expected: cfg.n_future,
                    got: f.len(),
                });
            }
        }
        if self.profile.a_future.len() != self.futures.len()
            || self.path_ids.len() != self.futures.len()
        {
            return Err(Error::Validation(
                "profile and path ids must align with futures".into(),
            ));
        }
        Ok(())
    }
}

/// Generate one sample starting at the first centerline vertex of `start`.
///
/// Futures: every lane path from the start, each interpolated under its own
/// future acceleration. Past: a single predecessor chain walked backward in
/// time under the past acceleration (the position at time -k·dt, with the
/// zero-speed clamp), then Gaussian-perturbed. Draw order on `rng` is fixed:
/// profile, backward branch choices, past noise.
pub fn generate_sample<R: Rng>(
    graph: &LaneGraph,
    start: u64,
    cfg: &SamplingConfig,
    rng: &mut R,
) -> Result<TrajectorySample> {
    let paths = enumerate_future_paths_with_cap(
        graph,
        start,
        cfg.future_search_distance(),
        cfg.path_cap,
    )?;
    let guidelines = paths
        .iter()
        .map(|p| build_guideline(graph, p))
        .collect::<Result<Vec<_>>>()?;
    let profile = sample_profile(rng, cfg, paths.len());

    let futures: Vec<Vec<Point2>> = guidelines
        .iter()
        .zip(&profile.a_future)
        .map(|(gl, &a)| {
            let arcs = arc_length_schedule(profile.v0, a, cfg.dt, cfg.n_future);
            interpolate_along(gl, &arcs)
        })
        .collect();

    let start_vertex = graph.lanelet(start)?.start_point();
    let past = generate_past(graph, start, start_vertex, cfg, &profile, rng)?;

    Ok(TrajectorySample {
        start_lanelet: start,
        past,
        futures,
        profile,
        path_ids: paths.into_iter().map(|p| p.node_ids).collect(),
    })
}

/// Walk predecessors and lay the past trajectory backward from the present.
///
/// Looking back k steps, the agent sat where the time-reversed motion puts
/// it: displacement arc_length_schedule(v0, -a_past, dt, k), so a braking
/// agent was faster in the past and an accelerating one was slower, parked
/// before t* = -v0/a_past. The last pre-noise point is the start vertex
/// itself.
fn generate_past<R: Rng>(
    graph: &LaneGraph,
    start: u64,
    start_vertex: Point2,
    cfg: &SamplingConfig,
    profile: &KinematicProfile,
    rng: &mut R,
) -> Result<Vec<Point2>> {
    let mut past = Vec::with_capacity(cfg.n_past);
    if cfg.n_past >= 2 {
        let back = arc_length_schedule(profile.v0, -profile.a_past, cfg.dt, cfg.n_past - 1);
        let start_arc = graph.lanelet(start)?.arc_length();
        let reach = start_arc + back.last().unwrap() + BACKWARD_MARGIN;
        let bpath = backward_path(graph, start, reach, rng)?;
        let reversed = build_guideline(graph, &bpath)?.reversed();
        // On the reversed guideline the start vertex sits one start-lanelet
        // length from the origin.
        let arcs: Vec<f64> = back.iter().rev().map(|d| start_arc + d).collect();
        past = interpolate_along(&reversed, &arcs);
    }
    past.push(start_vertex);
    let std = if cfg.no_past_noise { 0.0 } else { cfg.past_noise_std };
    Ok(add_past_noise(&past, rng, std))
}

/// Ground-truth set for the multitask variant: zero acceleration and the one
/// speed that traverses exactly `gt_distance` over `horizon` on every path.
pub fn generate_mt_ground_truths(
    graph: &LaneGraph,
    start: u64,
    gt_distance: f64,
    horizon: f64,
    n_future: usize,
) -> Result<Vec<Vec<Point2>>> {
    if gt_distance < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gt_distance must be >= 0, got {gt_distance}"
        )));
    }
    if horizon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "horizon must be > 0, got {horizon}"
        )));
    }
    let paths = enumerate_future_paths(graph, start, gt_distance.max(1e-9))?;
    let v = gt_distance / horizon;
    let step = horizon / n_future as f64;
    let arcs: Vec<f64> = (1..=n_future).map(|k| k as f64 * v * step).collect();
    paths
        .iter()
        .map(|p| Ok(interpolate_along(&build_guideline(graph, p)?, &arcs)))
        .collect()
}

/// Serialized sample, one JSON object per line in a dataset file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub idx: u64,
    pub start_lanelet: u64,
    pub past: Vec<Point2>,
    pub futures: Vec<Vec<Point2>>,
    pub v0: f64,
    pub a_past: f64,
    pub a_future: Vec<f64>,
    pub path_ids: Vec<Vec<u64>>,
}

impl SampleRecord {
    pub fn from_sample(idx: u64, s: TrajectorySample) -> Self {
        Self {
            idx,
            start_lanelet: s.start_lanelet,
            past: s.past,
            futures: s.futures,
            v0: s.profile.v0,
            a_past: s.profile.a_past,
            a_future: s.profile.a_future,
            path_ids: s.path_ids,
        }
    }
}

/// Counters accumulated while generating a dataset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenStats {
    pub samples: u64,
    /// Starts redrawn because path enumeration exceeded the cap.
    pub rejections: u64,
}

/// Generate the sample for dataset index `idx` under `master_seed`.
///
/// Each index owns an independent random stream, so any subset of indices can
/// be produced on any worker and the bytes never change. Starts whose path
/// enumeration exceeds the cap are rejected and redrawn from the same stream.
pub fn generate_indexed_sample(
    graph: &LaneGraph,
    cfg: &SamplingConfig,
    master_seed: u64,
    idx: u64,
) -> Result<(TrajectorySample, u64)> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut rng = sample_stream(master_seed, idx);
    let mut rejections = 0u64;
    loop {
        let start = graph.lanelets()[rng.gen_range(0..graph.len())].id;
        match generate_sample(graph, start, cfg, &mut rng) {
            Ok(sample) => return Ok((sample, rejections)),
            Err(Error::PathCapExceeded { .. }) => {
                rejections += 1;
                if rejections >= MAX_ATTEMPTS_PER_SAMPLE {
                    return Err(Error::MapUnusable {
                        sample_idx: idx,
                        attempts: MAX_ATTEMPTS_PER_SAMPLE,
                        rejections,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Lazily generate `n_samples` records in index order on the calling thread.
pub fn generate_dataset<'a>(
    graph: &'a LaneGraph,
    cfg: &'a SamplingConfig,
    n_samples: u64,
    master_seed: u64,
) -> Result<impl Iterator<Item = Result<SampleRecord>> + 'a> {
    cfg.validate()?;
    if graph.is_empty() && n_samples > 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((0..n_samples).map(move |idx| {
        generate_indexed_sample(graph, cfg, master_seed, idx)
            .map(|(s, _)| SampleRecord::from_sample(idx, s))
    }))
}

/// Generate `n_samples` records across `threads` workers (0 = rayon default).
/// Output is in index order and byte-identical for any worker count.
pub fn generate_records(
    graph: &LaneGraph,
    cfg: &SamplingConfig,
    n_samples: u64,
    master_seed: u64,
    threads: usize,
) -> Result<(Vec<SampleRecord>, GenStats)> {
    cfg.validate()?;
    if graph.is_empty() && n_samples > 0 {
        return Err(Error::EmptyGraph);
    }
    let run = || -> Result<Vec<(SampleRecord, u64)>> {
        (0..n_samples)
            .into_par_iter()
            .map(|idx| {
                generate_indexed_sample(graph, cfg, master_seed, idx)
                    .map(|(s, rej)| (SampleRecord::from_sample(idx, s), rej))
            })
            .collect()
    };
    let produced = if threads == 0 {
        run()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(run)?
    };
    let mut stats = GenStats {
        samples: n_samples,
        rejections: 0,
    };
    let mut records = Vec::with_capacity(produced.len());
    for (rec, rej) in produced {
        stats.rejections += rej;
        records.push(rec);
    }
    Ok((records, stats))
}

/// Write records as JSON lines.
pub fn write_sample_records(path: &Path, records: &[SampleRecord]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for rec in records {
        serde_json::to_writer(&mut w, rec)
            .map_err(|e| Error::Parse {
                path: path.display().to_string(),
                detail: e.to_string(),
            })?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a JSON-lines dataset file.
pub fn read_sample_records(path: &Path) -> Result<Vec<SampleRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SampleRecord =
            serde_json::from_str(&line).map_err(|e| Error::SchemaMismatch {
                path: path.display().to_string(),
                line: i + 1,
                detail: e.to_string(),
            })?;
        out.push(rec);
    }
    Ok(out)
}
