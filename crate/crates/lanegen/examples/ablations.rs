//! What each sampling ablation flag does, demonstrated on small batches.
//!
//! Run with: cargo run --example ablations

use lanegen::{chain_map, fork_map, generate_records, Result, SamplingConfig};

const SEED: u64 = 5;
const N: u64 = 200;

fn main() -> Result<()> {
    let fork = fork_map(2, 60.0)?;
    let chain = chain_map(30, 10.0)?;

    // Baseline: initial speed uniform in [speed_min, speed_max], pasts noisy.
    let base = SamplingConfig::default();
    let (records, _) = generate_records(&fork, &base, N, SEED, 0)?;
    let speeds: Vec<f64> = records.iter().map(|r| r.v0).collect();
    println!(
        "baseline      v0 range [{:.2}, {:.2}], {} / {} samples accelerate",
        speeds.iter().cloned().fold(f64::INFINITY, f64::min),
        speeds.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        records.iter().filter(|r| r.a_past != 0.0).count(),
        N,
    );

    // fixed_speed pins v0 at 10 m/s; accelerations still vary.
    let cfg = SamplingConfig {
        fixed_speed: true,
        ..SamplingConfig::default()
    };
    let (records, _) = generate_records(&fork, &cfg, N, SEED, 0)?;
    assert!(records.iter().all(|r| r.v0 == 10.0));
    println!("fixed_speed   every v0 == 10.0 exactly");

    // fixed_acc copies a_past into every future mode (no per-mode noise).
    let cfg = SamplingConfig {
        fixed_acc: true,
        ..SamplingConfig::default()
    };
    let (records, _) = generate_records(&fork, &cfg, N, SEED, 0)?;
    assert!(records
        .iter()
        .all(|r| r.a_future.iter().all(|a| *a == r.a_past)));
    println!("fixed_acc     every future acceleration equals a_past");

    // fixed_length removes all kinematic variation: v0 = 10, zero acceleration,
    // so every future advances the same 10 * dt per step.
    let cfg = SamplingConfig {
        fixed_length: true,
        ..SamplingConfig::default()
    };
    let (records, _) = generate_records(&fork, &cfg, N, SEED, 0)?;
    assert!(records
        .iter()
        .all(|r| r.v0 == 10.0 && r.a_past == 0.0 && r.a_future.iter().all(|a| *a == 0.0)));
    let step = {
        let f = &records[0].futures[0];
        f[1].distance(&f[0])
    };
    println!(
        "fixed_length  v0 == 10.0, all accelerations zero, future step {:.3} m",
        step
    );

    // no_past_noise drops the Gaussian perturbation, so pasts stay on the
    // guideline. On a straight chain along y = 0 that is directly visible.
    let cfg = SamplingConfig {
        no_past_noise: true,
        ..SamplingConfig::default()
    };
    let (records, _) = generate_records(&chain, &cfg, N, SEED, 0)?;
    let max_off = records
        .iter()
        .flat_map(|r| r.past.iter().map(|p| p.y.abs()))
        .fold(0.0, f64::max);
    println!("no_past_noise max |y| over all past points: {max_off:.1e}");
    assert!(max_off < 1e-9);

    // accel_probability gates whether a sample accelerates at all.
    for p in [0.0, 1.0] {
        let cfg = SamplingConfig {
            accel_probability: p,
            ..SamplingConfig::default()
        };
        let (records, _) = generate_records(&fork, &cfg, N, SEED, 0)?;
        let moving = records.iter().filter(|r| r.a_past != 0.0).count();
        println!("accel_probability = {p:.0}: {moving} / {N} samples with nonzero a_past");
    }

    Ok(())
}
