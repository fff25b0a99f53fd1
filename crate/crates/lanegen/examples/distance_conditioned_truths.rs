//! Ground-truth sets for distance-conditioned multitask training: every
//! trajectory traverses exactly the requested arc length at constant speed,
//! one per lane path.
//!
//! Run with: cargo run --example distance_conditioned_truths

use lanegen::{fork_map, generate_mt_ground_truths, Result};

fn main() -> Result<()> {
    let graph = fork_map(3, 40.0)?;

    for distance in [15.0, 55.0] {
        let truths = generate_mt_ground_truths(&graph, 0, distance, 3.0, 6)?;
        println!("{distance} m over 3 s -> {} ground-truth futures:", truths.len());
        for t in &truths {
            let first = t.first().unwrap();
            let last = t.last().unwrap();
            println!(
                "  ({:+.1}, {:+.1}) ... ({:+.1}, {:+.1})",
                first.x, first.y, last.x, last.y
            );
        }
    }
    // 15 m stays on the 40 m stem: one trajectory. 55 m crosses the fork:
    // one per branch.

    let stationary = generate_mt_ground_truths(&graph, 0, 0.0, 3.0, 6)?;
    let p = stationary[0][0];
    println!("zero distance parks the agent at ({:.1}, {:.1})", p.x, p.y);
    Ok(())
}
