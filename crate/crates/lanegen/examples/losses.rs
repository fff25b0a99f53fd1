//! The training losses: Hungarian-matched auxiliary loss over a whole
//! prediction set, winner-takes-all main loss against one ground truth, and
//! the mode-probability term.
//!
//! Run with: cargo run --example losses

use lanegen::{
    aux_loss, closest_gt_targets, combined_loss, hungarian, mean_l2_cost, prob_loss,
    wta_main_loss, Point2, PredictionSet, Result, LAMBDA_ARGOVERSE,
};

fn line(y: f64, n: usize) -> Vec<Point2> {
    (1..=n).map(|k| Point2::new(k as f64, y)).collect()
}

fn main() -> Result<()> {
    // Two ground-truth futures; three predicted modes, one of them wild.
    let gts = vec![line(0.0, 5), line(2.0, 5)];
    let preds = PredictionSet {
        trajectories: vec![line(1.9, 5), line(0.3, 5), line(7.0, 5)],
        logits: vec![0.8, 1.2, -0.5],
    };

    let cost = mean_l2_cost(&preds.trajectories, &gts)?;
    println!("mean-L2 cost matrix (rows = ground truths, columns = predictions):");
    for row in &cost {
        println!("  {:?}", row.iter().map(|c| format!("{c:.2}")).collect::<Vec<_>>());
    }

    // Optimal one-to-one matching; the spare prediction stays unmatched.
    let assignment = hungarian(&cost)?;
    println!(
        "assignment {:?}, total cost {:.2}",
        assignment.matches, assignment.total_cost
    );
    let aux = aux_loss(&preds, &gts)?;
    println!("aux_loss (total / n_gt) = {aux:.3}");

    // Main loss trains only the mode closest to this future by final
    // displacement; smooth-L1 keeps gradients bounded on the wild mode.
    let (main, winner) = wta_main_loss(&preds, &gts[0])?;
    println!("winner-takes-all vs gt 0: mode {winner} wins, loss {main:.4}");

    // The probability head is trained toward each mode's closest truth.
    let targets = closest_gt_targets(&preds.trajectories, &gts)?;
    println!("closest-truth targets per mode: {targets:?}");
    let p = prob_loss(&preds.logits, winner)?;
    println!("prob_loss toward the winner = {p:.4}");

    println!(
        "combined = main + lambda * aux = {:.4} (lambda = {LAMBDA_ARGOVERSE})",
        combined_loss(main, aux, LAMBDA_ARGOVERSE)
    );
    Ok(())
}
