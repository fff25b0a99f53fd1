//! Depth-first lane-path enumeration: branching maps, distance cutoffs, and
//! cycles (a path may revisit lanelets, so rings terminate by distance).
//!
//! Run with: cargo run --example enumerate_paths

use lanegen::{build_guideline, enumerate_future_paths, fork_map, roundabout_map, Result};

fn main() -> Result<()> {
    // A fork: every branch becomes its own path once the search range
    // crosses the branch point.
    let fork = fork_map(3, 30.0)?;
    println!("fork, search distance 50 m:");
    for path in enumerate_future_paths(&fork, 0, 50.0)? {
        let guideline = build_guideline(&fork, &path)?;
        println!(
            "  path {:?}: {:.1} m, guideline of {} points",
            path.node_ids,
            path.total_length,
            guideline.points().len()
        );
    }

    // Short range: the stem alone satisfies the cutoff, one path.
    println!("fork, search distance 20 m:");
    for path in enumerate_future_paths(&fork, 0, 20.0)? {
        println!("  path {:?}: {:.1} m", path.node_ids, path.total_length);
    }

    // A roundabout contains a directed cycle; long searches simply lap it.
    let ring = roundabout_map(4, 15.0)?;
    println!("roundabout, search distance 150 m from an entry lanelet:");
    for path in enumerate_future_paths(&ring, 200, 150.0)? {
        println!("  path {:?}: {:.1} m", path.node_ids, path.total_length);
    }
    Ok(())
}
