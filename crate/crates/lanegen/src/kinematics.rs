//! Kinematic profile sampling and arc-length interpolation.
//!
//! A profile is (v0, a_past, a_future[mode]). Trajectories are produced by
//! evaluating the constant-acceleration arc-length law at fixed time steps
//! and mapping those arc lengths onto a guideline polyline.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::path_search::Guideline;
use crate::rng::{laplace, normal, uniform};

/// All knobs of the sample generator. Serde defaults let a config file
/// specify any subset; an empty object yields the documented defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingConfig {
    /// Lower bound of the initial-speed distribution, m/s.
    pub speed_min: f64,
    /// Upper bound of the initial-speed distribution, m/s.
    pub speed_max: f64,
    /// Laplace scale of the past acceleration, m/s².
    pub past_acc_scale: f64,
    /// Laplace scale of the per-mode future acceleration noise, m/s².
    pub fut_acc_scale: f64,
    /// Std of the Gaussian noise added to each past coordinate, meters.
    pub past_noise_std: f64,
    /// Probability that a sample carries a nonzero past acceleration.
    pub accel_probability: f64,
    /// Time step between trajectory points, seconds.
    pub dt: f64,
    /// Number of past points (the last one is the present position).
    pub n_past: usize,
    /// Number of future points per mode.
    pub n_future: usize,
    /// Abort path enumeration beyond this many paths.
    pub path_cap: usize,
    /// Ablation: constant 10 m/s, zero acceleration everywhere.
    pub fixed_length: bool,
    /// Ablation: force v0 = 10 m/s.
    pub fixed_speed: bool,
    /// Ablation: futures keep the past acceleration (no per-mode noise).
    pub fixed_acc: bool,
    /// Ablation: skip the Gaussian past perturbation.
    pub no_past_noise: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            speed_min: 0.0,
            speed_max: 20.0,
            past_acc_scale: 1.4,
            fut_acc_scale: 0.9,
            past_noise_std: 1.0,
            accel_probability: 0.5,
            dt: 0.1,
            n_past: 20,
            n_future: 30,
            path_cap: 64,
            fixed_length: false,
            fixed_speed: false,
            fixed_acc: false,
            no_past_noise: false,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.speed_min >= 0.0) {
            return fail(format!("speed_min must be >= 0, got {}", self.speed_min));
        }
        if !(self.speed_max > self.speed_min) {
            return fail(format!(
                "speed_max ({}) must exceed speed_min ({})",
                self.speed_max, self.speed_min
            ));
        }
        if !(self.past_acc_scale >= 0.0 && self.fut_acc_scale >= 0.0) {
            return fail("acceleration scales must be >= 0".into());
        }
        if !(self.past_noise_std >= 0.0) {
            return fail(format!(
                "past_noise_std must be >= 0, got {}",
                self.past_noise_std
            ));
        }
        if !(0.0..=1.0).contains(&self.accel_probability) {
            return fail(format!(
                "accel_probability must be in [0, 1], got {}",
                self.accel_probability
            ));
        }
        if !(self.dt > 0.0) {
            return fail(format!("dt must be > 0, got {}", self.dt));
        }
        if self.n_past < 1 || self.n_future < 1 {
            return fail("n_past and n_future must be >= 1".into());
        }
        if self.path_cap < 1 {
            return fail("path_cap must be >= 1".into());
        }
        Ok(())
    }

    /// Forward search distance that covers any motion this config can sample:
    /// top speed over the horizon plus the 99.9th-percentile acceleration
    /// term plus a 10 m margin.
    pub fn future_search_distance(&self) -> f64 {
        let horizon = self.n_future as f64 * self.dt;
        let v_max = if self.fixed_speed || self.fixed_length {
            self.speed_max.max(10.0)
        } else {
            self.speed_max
        };
        // |Laplace(0, b)| has quantile b·ln(1/(1-q)); q = 0.999 gives b·ln 1000.
        let a_cap = if self.fixed_length {
            0.0
        } else {
            let fut = if self.fixed_acc { 0.0 } else { self.fut_acc_scale };
            (self.past_acc_scale + fut) * 1000f64.ln()
        };
        v_max * horizon + 0.5 * a_cap * horizon * horizon + 10.0
    }
}

/// One sampled motion: present-instant speed, past acceleration, and one
/// future acceleration per mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicProfile {
    pub v0: f64,
    pub a_past: f64,
    pub a_future: Vec<f64>,
}

/// Draw a profile for `n_modes` future modes.
///
/// Draw order is part of the reproducibility contract: v0, then the
/// acceleration coin and a_past, then one future-noise draw per mode.
/// Ablation flags suppress the draws they override.
pub fn sample_profile<R: Rng>(rng: &mut R, cfg: &SamplingConfig, n_modes: usize) -> KinematicProfile {
    debug_assert!(n_modes >= 1);
    if cfg.fixed_length {
        return KinematicProfile {
            v0: 10.0,
            a_past: 0.0,
            a_future: vec![0.0; n_modes],
        };
    }
    let v0 = if cfg.fixed_speed {
        10.0
    } else {
        uniform(rng, cfg.speed_min, cfg.speed_max)
    };
    let a_past = if rng.gen::<f64>() < cfg.accel_probability {
        laplace(rng, cfg.past_acc_scale)
    } else {
        0.0
    };
    let a_future = if cfg.fixed_acc {
        vec![a_past; n_modes]
    } else {
        (0..n_modes)
            .map(|_| a_past + laplace(rng, cfg.fut_acc_scale))
            .collect()
    };
    KinematicProfile { v0, a_past, a_future }
}

/// Arc length travelled by t = dt, 2·dt, …, n·dt under constant acceleration,
/// with speed clamped at zero: a decelerating agent halts at t* = -v0/a and
/// never reverses. The a = 0 branch returns k·v0·dt exactly.
pub fn arc_length_schedule(v0: f64, a: f64, dt: f64, n: usize) -> Vec<f64> {
    debug_assert!(v0 >= 0.0, "speed must be non-negative");
    debug_assert!(dt > 0.0);
    if a == 0.0 {
        return (1..=n).map(|k| k as f64 * v0 * dt).collect();
    }
    let t_stop = if a < 0.0 { -v0 / a } else { f64::INFINITY };
    let s_stop = 0.5 * v0 * t_stop;
    (1..=n)
        .map(|k| {
            let t = k as f64 * dt;
            if t >= t_stop {
                s_stop
            } else {
                // min() absorbs sub-ulp overshoot of the parabola right
                // before the stop time, keeping the sequence non-decreasing.
                (v0 * t + 0.5 * a * t * t).min(s_stop)
            }
        })
        .collect()
}

/// Map arc lengths onto `guideline`. Positions within the polyline are linear
/// interpolations; positions past the end continue along the final segment's
/// direction so every requested arc length yields a point.
pub fn interpolate_along(guideline: &Guideline, arclens: &[f64]) -> Vec<Point2> {
    let pts = guideline.points();
    let cum = guideline.cum_arclen();
    let total = guideline.total_length();
    arclens
        .iter()
        .map(|&s| {
            debug_assert!(s >= 0.0, "arc lengths must be non-negative");
            if s >= total {
                let a = pts[pts.len() - 2];
                let b = pts[pts.len() - 1];
                let seg = b.distance(&a);
                let t = (s - total) / seg;
                Point2::new(b.x + (b.x - a.x) * t, b.y + (b.y - a.y) * t)
            } else {
                let hi = cum.partition_point(|&c| c <= s);
                let lo = hi - 1;
                let t = (s - cum[lo]) / (cum[hi] - cum[lo]);
                Point2::new(
                    pts[lo].x + (pts[hi].x - pts[lo].x) * t,
                    pts[lo].y + (pts[hi].y - pts[lo].y) * t,
                )
            }
        })
        .collect()
}

/// Perturb every coordinate with independent Normal(0, std²) noise.
/// std = 0 returns the input unchanged without consuming the rng.
pub fn add_past_noise<R: Rng>(points: &[Point2], rng: &mut R, std: f64) -> Vec<Point2> {
    debug_assert!(std >= 0.0);
    if std == 0.0 {
        return points.to_vec();
    }
    points
        .iter()
        .map(|p| Point2::new(p.x + normal(rng, std), p.y + normal(rng, std)))
        .collect()
}
