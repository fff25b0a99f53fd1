//! Synthetic trajectory-prediction data from lane-graph maps.
//!
//! The pipeline: load a lane graph, enumerate forward lane paths from a start
//! lanelet, lay kinematic profiles along the resulting guide-lines to obtain
//! a noisy past track plus one ground-truth future per path, then score
//! prediction sets against those futures with matching-based losses and
//! standard displacement metrics.
//!
//! Everything downstream of a seed is deterministic: samples are generated
//! from per-index random streams, so a dataset is a pure function of
//! `(map, config, master_seed)` regardless of worker count.

pub mod cli;
pub mod error;
pub mod geom;
pub mod kinematics;
pub mod lane_graph;
pub mod map_gen;
pub mod matching_loss;
pub mod metrics;
pub mod path_search;
pub mod plot;
pub mod predictor;
pub mod rng;
pub mod sample_gen;

pub use cli::{
    cmd_evaluate, cmd_gen_map, cmd_generate, cmd_plot, cmd_predict, cmd_stats, resolve_config,
    EvaluationDocument, IndexSelection, MapSpec, MetricConfig, Overrides, RunConfig,
};
pub use error::{Error, Result};
pub use geom::Point2;
pub use kinematics::{
    add_past_noise, arc_length_schedule, interpolate_along, sample_profile, KinematicProfile,
    SamplingConfig,
};
pub use lane_graph::{load_lane_graph, parse_lane_graph, LaneGraph, Lanelet};
pub use map_gen::{chain_map, fork_map, grid_map, roundabout_map};
pub use matching_loss::{
    aux_loss, closest_gt_targets, combined_loss, hungarian, mean_l2_cost, prob_loss,
    read_prediction_records, smooth_l1, write_prediction_records, wta_main_loss, Assignment,
    PredictionRecord, PredictionSet, LAMBDA_ARGOVERSE, LAMBDA_INTERACTION,
};
pub use metrics::{
    evaluate_files, evaluate_records, is_miss, min_ade, min_fde, Evaluation, MetricReport,
    DEFAULT_MISS_THRESHOLD,
};
pub use path_search::{
    backward_path, build_guideline, enumerate_future_paths, enumerate_future_paths_with_cap,
    Guideline, LanePath, DEFAULT_PATH_CAP,
};
pub use plot::{render_svg, Scene};
pub use predictor::{map_match, predict, PredictorConfig, SpeedEstimator};
pub use rng::sample_stream;
pub use sample_gen::{
    generate_dataset, generate_mt_ground_truths, generate_records, generate_sample,
    read_sample_records, write_sample_records, GenStats, SampleRecord, TrajectorySample,
};
