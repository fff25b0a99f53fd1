//! Kinematic profile sampling and the closed-form arc-length schedule,
//! including the zero-speed clamp for braking agents.
//!
//! Run with: cargo run --example kinematic_profiles

use lanegen::{arc_length_schedule, sample_profile, sample_stream, SamplingConfig};

fn main() {
    let cfg = SamplingConfig::default();
    println!("three profiles from independent per-sample streams:");
    for idx in 0..3 {
        let mut rng = sample_stream(7, idx);
        let p = sample_profile(&mut rng, &cfg, 2);
        println!(
            "  sample {idx}: v0 {:.2} m/s, a_past {:+.3} m/s^2, a_future [{}]",
            p.v0,
            p.a_past,
            p.a_future.iter().map(|a| format!("{a:+.3}")).collect::<Vec<_>>().join(", ")
        );
    }

    // Distance covered after each step of dt under constant acceleration.
    println!("\narc schedule, v0 = 5 m/s, a = +1 m/s^2, dt = 1 s:");
    println!("  {:?}", arc_length_schedule(5.0, 1.0, 1.0, 3));

    // A braking agent stops at t = v0/|a| and stays put: the schedule
    // plateaus at v0^2 / (2|a|) instead of going backwards.
    println!("braking to a stop, v0 = 2 m/s, a = -1 m/s^2, dt = 1 s:");
    println!("  {:?}", arc_length_schedule(2.0, -1.0, 1.0, 4));
}
