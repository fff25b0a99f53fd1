//! The full loop in memory: generate a noise-free dataset, predict with the
//! constant-speed baseline, and score it. On such data the baseline is
//! exact, so every metric collapses to zero.
//!
//! Run with: cargo run --example closed_loop_evaluation

use lanegen::matching_loss::PredictionRecord;
use lanegen::{
    chain_map, evaluate_records, generate_records, predict, PredictorConfig, Result,
    SamplingConfig,
};

fn main() -> Result<()> {
    let graph = chain_map(60, 10.0)?;
    let mut cfg = SamplingConfig::default();
    cfg.accel_probability = 0.0; // no past acceleration
    cfg.fixed_acc = true; // futures inherit it: constant speed everywhere
    cfg.no_past_noise = true;

    let (samples, _) = generate_records(&graph, &cfg, 50, 1, 0)?;

    let pred_cfg = PredictorConfig::default();
    let predictions: Vec<PredictionRecord> = samples
        .iter()
        .map(|s| {
            let set = predict(&graph, &s.past, &pred_cfg, cfg.dt)?;
            Ok(PredictionRecord {
                idx: s.idx,
                trajectories: set.trajectories,
                logits: set.logits,
            })
        })
        .collect::<Result<_>>()?;

    let ev = evaluate_records(&samples, &predictions, pred_cfg.k, 2.0)?;
    print!("{}", ev.render_table());
    assert!(ev.report.min_fde_k < 1e-9);
    assert!(ev.mean_aux_loss < 1e-9);
    println!("\nthe baseline replays noise-free constant-speed data exactly");

    // With the default noisy config the same loop produces honest nonzero
    // numbers.
    let noisy = SamplingConfig::default();
    let (samples, _) = generate_records(&graph, &noisy, 50, 1, 0)?;
    let predictions: Vec<PredictionRecord> = samples
        .iter()
        .map(|s| {
            let set = predict(&graph, &s.past, &pred_cfg, noisy.dt)?;
            Ok(PredictionRecord {
                idx: s.idx,
                trajectories: set.trajectories,
                logits: set.logits,
            })
        })
        .collect::<Result<_>>()?;
    let ev = evaluate_records(&samples, &predictions, pred_cfg.k, 2.0)?;
    println!();
    print!("{}", ev.render_table());
    Ok(())
}
