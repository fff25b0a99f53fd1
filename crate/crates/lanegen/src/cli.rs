//! Run configuration and the command implementations behind the binary.
//!
//! Everything here is a plain library function returning `Result`, so the
//! whole command surface is testable without spawning processes; the binary
//! only parses arguments, picks exit codes, and routes output streams.
//!
//! Config echo: every run writes the fully resolved [`RunConfig`] into its
//! output (a `.stats.json` sidecar for JSONL datasets, the report document
//! for evaluation, an XML comment for SVG plots), so any artifact can be
//! reproduced from itself plus the map file.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::SamplingConfig;
use crate::lane_graph::{load_lane_graph, LaneGraph};
use crate::map_gen::{chain_map, fork_map, grid_map, roundabout_map};
use crate::matching_loss::{read_prediction_records, write_prediction_records, PredictionRecord};
use crate::metrics::{evaluate_files, MetricReport, DEFAULT_MISS_THRESHOLD};
use crate::plot::{render_svg, Scene};
use crate::predictor::{predict, PredictorConfig};
use crate::sample_gen::{generate_records, read_sample_records, write_sample_records};

/// Metric evaluation knobs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricConfig {
    /// Number of leading predictions scored by minADE/minFDE/miss rate.
    pub k: usize,
    /// Final-displacement miss threshold, meters.
    pub miss_threshold: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self { k: 6, miss_threshold: DEFAULT_MISS_THRESHOLD }
    }
}

/// One run's complete parameterization. Serialized as JSON; every field is
/// optional in the file and falls back to its default, so `{}` is a valid
/// config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub map: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub master_seed: u64,
    pub n_samples: u64,
    pub sampling: SamplingConfig,
    pub predictor: PredictorConfig,
    pub metrics: MetricConfig,
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.sampling.validate()?;
        self.predictor.validate()?;
        if self.metrics.k < 1 {
            return Err(Error::InvalidParameter("metrics k must be >= 1".into()));
        }
        if !(self.metrics.miss_threshold >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "miss_threshold must be >= 0, got {}",
                self.metrics.miss_threshold
            )));
        }
        Ok(())
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub map: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub num_samples: Option<u64>,
    /// Overrides both the predictor's mode count and the metric k.
    pub k: Option<usize>,
    pub miss_threshold: Option<f64>,
}

/// Config file (or defaults) with flag overrides applied, validated.
pub fn resolve_config(config_path: Option<&Path>, ov: &Overrides) -> Result<RunConfig> {
    let mut cfg = match config_path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(map) = &ov.map {
        cfg.map = Some(map.clone());
    }
    if let Some(out) = &ov.out {
        cfg.out = Some(out.clone());
    }
    if let Some(seed) = ov.seed {
        cfg.master_seed = seed;
    }
    if let Some(n) = ov.num_samples {
        cfg.n_samples = n;
    }
    if let Some(k) = ov.k {
        cfg.predictor.k = k;
        cfg.metrics.k = k;
    }
    if let Some(t) = ov.miss_threshold {
        cfg.metrics.miss_threshold = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn required_path<'a>(field: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    field
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("no {what} path given")))
}

/// Pretty JSON document with a trailing newline; the single serializer for
/// everything the commands write, so byte determinism has one code path.
pub fn to_json_document(value: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse {
        path: "<output document>".to_string(),
        detail: e.to_string(),
    })?;
    s.push('\n');
    Ok(s)
}

fn write_json_file(path: &Path, value: &impl Serialize) -> Result<()> {
    std::fs::write(path, to_json_document(value)?).map_err(|e| Error::io(path, e))
}

/// Sidecar path for a dataset's stats record: `samples.jsonl` ->
/// `samples.stats.json`.
pub fn stats_path(out: &Path) -> PathBuf {
    out.with_extension("stats.json")
}

/// Parameter block for one synthetic map kind.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Chain { n: u64, len: f64 },
    Fork { branches: u64, len: f64 },
    Grid { rows: u64, cols: u64, len: f64 },
    Roundabout { exits: u64, radius: f64 },
}

impl MapSpec {
    pub fn build(&self) -> Result<LaneGraph> {
        match *self {
            MapSpec::Chain { n, len } => chain_map(n, len),
            MapSpec::Fork { branches, len } => fork_map(branches, len),
            MapSpec::Grid { rows, cols, len } => grid_map(rows, cols, len),
            MapSpec::Roundabout { exits, radius } => roundabout_map(exits, radius),
        }
    }
}

/// What `gen-map` reports after writing the map file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSummary {
    pub generator: MapSpec,
    pub lanelets: usize,
    pub edges: usize,
    pub total_length: f64,
}

pub fn cmd_gen_map(spec: &MapSpec, out: &Path) -> Result<MapSummary> {
    let graph = spec.build()?;
    graph.save(out)?;
    Ok(MapSummary {
        generator: *spec,
        lanelets: graph.len(),
        edges: graph.edge_count(),
        total_length: graph.lanelets().iter().map(|l| l.arc_length()).sum(),
    })
}

/// Stats record written next to a generated sample file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateStats {
    pub config: RunConfig,
    pub samples: u64,
    pub rejections: u64,
}

/// Generate `cfg.n_samples` samples onto `cfg.out` (JSONL) plus a
/// `.stats.json` sidecar echoing the effective config.
///
/// `threads`: worker count for the generation fan-out, 0 meaning the default
/// pool. Output bytes do not depend on it.
pub fn cmd_generate(cfg: &RunConfig, threads: usize) -> Result<GenerateStats> {
    cfg.validate()?;
    let map = required_path(&cfg.map, "map")?;
    let out = required_path(&cfg.out, "output")?;
    let graph = load_lane_graph(map)?;
    let (records, stats) =
        generate_records(&graph, &cfg.sampling, cfg.n_samples, cfg.master_seed, threads)?;
    write_sample_records(out, &records)?;
    let doc = GenerateStats {
        config: cfg.clone(),
        samples: stats.samples,
        rejections: stats.rejections,
    };
    write_json_file(&stats_path(out), &doc)?;
    Ok(doc)
}

/// Stats record written next to a prediction file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictStats {
    pub config: RunConfig,
    pub predictions: u64,
}

/// Run the baseline predictor over every sample in `samples`, writing a
/// prediction file to `cfg.out` plus a `.stats.json` sidecar.
pub fn cmd_predict(cfg: &RunConfig, samples: &Path) -> Result<PredictStats> {
    cfg.validate()?;
    let map = required_path(&cfg.map, "map")?;
    let out = required_path(&cfg.out, "output")?;
    let graph = load_lane_graph(map)?;
    let records = read_sample_records(samples)?;
    let predictions = records
        .iter()
        .map(|r| {
            let set = predict(&graph, &r.past, &cfg.predictor, cfg.sampling.dt)?;
            Ok(PredictionRecord {
                idx: r.idx,
                trajectories: set.trajectories,
                logits: set.logits,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_prediction_records(out, &predictions)?;
    let doc = PredictStats {
        config: cfg.clone(),
        predictions: predictions.len() as u64,
    };
    write_json_file(&stats_path(out), &doc)?;
    Ok(doc)
}

/// Evaluation output: resolved config, displacement metrics, and the mean
/// matching loss over the file pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationDocument {
    pub config: RunConfig,
    pub report: MetricReport,
    pub mean_aux_loss: f64,
}

impl EvaluationDocument {
    /// Human-readable form; the JSON document is the machine output.
    pub fn render_table(&self) -> String {
        let mut s = self.report.render_table();
        let _ = writeln!(s, "{:<18} {:>12.6}", "mean aux_loss", self.mean_aux_loss);
        s
    }
}

/// Score a prediction file against a sample file. Writes the report document
/// to `cfg.out` when set; the caller decides how to display it otherwise.
pub fn cmd_evaluate(cfg: &RunConfig, samples: &Path, predictions: &Path) -> Result<EvaluationDocument> {
    cfg.validate()?;
    let ev = evaluate_files(samples, predictions, cfg.metrics.k, cfg.metrics.miss_threshold)?;
    let doc = EvaluationDocument {
        config: cfg.clone(),
        report: ev.report,
        mean_aux_loss: ev.mean_aux_loss,
    };
    if let Some(out) = &cfg.out {
        write_json_file(out, &doc)?;
    }
    Ok(doc)
}

/// Structural statistics of a map file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapStats {
    pub lanelets: usize,
    pub edges: usize,
    pub total_length: f64,
    pub mean_lanelet_length: f64,
}

pub fn cmd_stats(map: &Path) -> Result<MapStats> {
    let graph = load_lane_graph(map)?;
    let total: f64 = graph.lanelets().iter().map(|l| l.arc_length()).sum();
    Ok(MapStats {
        lanelets: graph.len(),
        edges: graph.edge_count(),
        total_length: total,
        mean_lanelet_length: total / graph.len() as f64,
    })
}

/// Render one SVG per requested sample index into the `cfg.out` directory.
///
/// Files are named `sample_<idx>.svg`. When a prediction file is given, its
/// record for each index is drawn in the prediction layer.
pub fn cmd_plot(
    cfg: &RunConfig,
    samples: &Path,
    predictions: Option<&Path>,
    indices: &[u64],
) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let map = required_path(&cfg.map, "map")?;
    let out_dir = required_path(&cfg.out, "output")?;
    let graph = load_lane_graph(map)?;
    let records = read_sample_records(samples)?;
    let by_idx: HashMap<u64, usize> =
        records.iter().enumerate().map(|(i, r)| (r.idx, i)).collect();
    let preds: HashMap<u64, PredictionRecord> = match predictions {
        Some(p) => read_prediction_records(p)?
            .into_iter()
            .map(|r| (r.idx, r))
            .collect(),
        None => HashMap::new(),
    };
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let comment = serde_json::to_string(cfg).map_err(|e| Error::Parse {
        path: "<config echo>".to_string(),
        detail: e.to_string(),
    })?;
    let mut written = Vec::with_capacity(indices.len());
    for &idx in indices {
        let rec = by_idx
            .get(&idx)
            .map(|&i| &records[i])
            .ok_or(Error::IndexOutOfRange {
                index: idx as usize,
                len: records.len(),
            })?;
        let empty = Vec::new();
        let pred_layers = preds.get(&idx).map_or(&empty, |p| &p.trajectories);
        let svg = render_svg(
            &Scene {
                graph: Some(&graph),
                past: Some(&rec.past),
                futures: &rec.futures,
                predictions: pred_layers,
            },
            Some(&comment),
        );
        let path = out_dir.join(format!("sample_{idx}.svg"));
        std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Sample indices selected on the command line: `7`, `2..5`, or `2..=5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSelection(pub Vec<u64>);

impl std::str::FromStr for IndexSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse_u64 =
            |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad index {t:?}: {e}"));
        if let Some((a, b)) = s.split_once("..") {
            let start = parse_u64(a)?;
            let (inclusive, b) = match b.strip_prefix('=') {
                Some(rest) => (true, rest),
                None => (false, b),
            };
            let end = parse_u64(b)?;
            let end = if inclusive { end.saturating_add(1) } else { end };
            if start >= end {
                return Err(format!("empty index range {s:?}"));
            }
            Ok(IndexSelection((start..end).collect()))
        } else {
            Ok(IndexSelection(vec![parse_u64(s)?]))
        }
    }
}
