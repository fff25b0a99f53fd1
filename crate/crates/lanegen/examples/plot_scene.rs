//! Render a sample and its predictions to SVG: centerlines black, past gray,
//! ground-truth futures red, predictions blue with terminal dots.
//!
//! Run with: cargo run --example plot_scene

use lanegen::{
    fork_map, generate_sample, predict, render_svg, sample_stream, PredictorConfig, Result,
    SamplingConfig, Scene,
};

fn main() -> Result<()> {
    let graph = fork_map(2, 60.0)?;
    let cfg = SamplingConfig::default();
    let sample = generate_sample(&graph, 0, &cfg, &mut sample_stream(11, 0))?;
    let prediction = predict(&graph, &sample.past, &PredictorConfig::default(), cfg.dt)?;

    let svg = render_svg(
        &Scene {
            graph: Some(&graph),
            past: Some(&sample.past),
            futures: &sample.futures,
            predictions: &prediction.trajectories,
        },
        Some("demo scene"),
    );
    let out = std::env::temp_dir().join("lanegen_scene.svg");
    std::fs::write(&out, &svg).expect("temp dir is writable");
    println!(
        "wrote {} ({} ground-truth futures, {} predicted modes)",
        out.display(),
        sample.futures.len(),
        prediction.trajectories.len()
    );
    Ok(())
}
