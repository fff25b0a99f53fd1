//! Parse a lane-graph map from JSON, inspect it, and see what the validator
//! rejects.
//!
//! Run with: cargo run --example load_and_validate

use lanegen::{parse_lane_graph, Result};

fn main() -> Result<()> {
    let text = r#"{
        "format": 1,
        "lanelets": [
            {"id": 1, "centerline": [[0.0, 0.0], [25.0, 0.0]], "successors": [2, 3]},
            {"id": 2, "centerline": [[25.0, 0.0], [50.0, 0.0]], "successors": []},
            {"id": 3, "centerline": [[25.0, 0.0], [25.0, 20.0], [40.0, 35.0]], "successors": []}
        ]
    }"#;
    let graph = parse_lane_graph(text, "<inline>")?;
    println!("loaded {} lanelets, {} edges", graph.len(), graph.edge_count());
    for lanelet in graph.lanelets() {
        println!(
            "  lanelet {}: {:.1} m, successors {:?}, predecessors {:?}",
            lanelet.id,
            lanelet.arc_length(),
            graph.successors(lanelet.id)?,
            graph.predecessors(lanelet.id)?,
        );
    }

    // The validator refuses dangling references, duplicate ids, degenerate
    // centerlines, and unknown schema fields. A dangling successor:
    let broken = r#"{
        "format": 1,
        "lanelets": [
            {"id": 1, "centerline": [[0.0, 0.0], [25.0, 0.0]], "successors": [99]}
        ]
    }"#;
    match parse_lane_graph(broken, "<inline>") {
        Err(e) => println!("rejected broken map: {e}"),
        Ok(_) => unreachable!("validation must fail"),
    }
    Ok(())
}
