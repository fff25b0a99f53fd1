//! Dependency-free SVG rendering of a map scene.
//!
//! Color convention: lane centerlines black, past track gray, ground-truth
//! futures red, predictions blue with a dot on each terminal point. World
//! y points up, screen y points down, so the renderer flips the y axis.

use crate::geom::Point2;
use crate::lane_graph::LaneGraph;

const CANVAS_WIDTH: f64 = 800.0;
const PADDING: f64 = 20.0;

const COLOR_CENTERLINE: &str = "#000000";
const COLOR_PAST: &str = "#9e9e9e";
const COLOR_FUTURE: &str = "#d62728";
const COLOR_PREDICTION: &str = "#1f77b4";

/// Everything one SVG panel shows. Any layer may be empty.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scene<'a> {
    pub graph: Option<&'a LaneGraph>,
    pub past: Option<&'a [Point2]>,
    pub futures: &'a [Vec<Point2>],
    pub predictions: &'a [Vec<Point2>],
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn to_screen(&self, p: &Point2) -> (f64, f64) {
        (
            PADDING + (p.x - self.min_x) * self.scale,
            PADDING + (self.max_y - p.y) * self.scale,
        )
    }
}

/// Render the scene to a standalone SVG document.
///
/// `header_comment` is embedded verbatim (sanitized for XML) as a comment
/// right after the opening tag; callers use it to echo the run config.
pub fn render_svg(scene: &Scene, header_comment: Option<&str>) -> String {
    let frame = fit_frame(scene);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" \
         viewBox=\"0 0 {:.0} {:.0}\">\n",
        CANVAS_WIDTH, frame.height, CANVAS_WIDTH, frame.height
    ));
    if let Some(comment) = header_comment {
        // "--" terminates an XML comment early; break the pair.
        out.push_str(&format!("<!-- {} -->\n", comment.replace("--", "- -")));
    }
    out.push_str(&format!(
        "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
    ));
    if let Some(graph) = scene.graph {
        for lanelet in graph.lanelets() {
            push_polyline(&mut out, &frame, &lanelet.centerline, COLOR_CENTERLINE, 1.0);
        }
    }
    for future in scene.futures {
        push_polyline(&mut out, &frame, future, COLOR_FUTURE, 2.0);
    }
    for prediction in scene.predictions {
        push_polyline(&mut out, &frame, prediction, COLOR_PREDICTION, 2.0);
        if let Some(last) = prediction.last() {
            let (x, y) = frame.to_screen(last);
            out.push_str(&format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{COLOR_PREDICTION}\"/>\n"
            ));
        }
    }
    if let Some(past) = scene.past {
        push_polyline(&mut out, &frame, past, COLOR_PAST, 2.0);
    }
    out.push_str("</svg>\n");
    out
}

fn fit_frame(scene: &Scene) -> Frame {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut visit = |p: &Point2| {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    };
    if let Some(graph) = scene.graph {
        for lanelet in graph.lanelets() {
            lanelet.centerline.iter().for_each(&mut visit);
        }
    }
    if let Some(past) = scene.past {
        past.iter().for_each(&mut visit);
    }
    for t in scene.futures.iter().chain(scene.predictions.iter()) {
        t.iter().for_each(&mut visit);
    }
    if !min_x.is_finite() {
        // Empty scene: unit box.
        (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
    }
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let scale = (CANVAS_WIDTH - 2.0 * PADDING) / span_x;
    Frame {
        min_x,
        max_y,
        scale,
        height: span_y * scale + 2.0 * PADDING,
    }
}

fn push_polyline(out: &mut String, frame: &Frame, points: &[Point2], color: &str, width: f64) {
    if points.len() < 2 {
        return;
    }
    out.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\" points=\""
    ));
    for (i, p) in points.iter().enumerate() {
        let (x, y) = frame.to_screen(p);
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{x:.2},{y:.2}"));
    }
    out.push_str("\"/>\n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map_gen::chain_map;

    fn demo_scene(graph: &LaneGraph) -> String {
        let past = vec![Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        let futures = vec![vec![Point2::new(3.0, 0.0), Point2::new(4.0, 0.0)]];
        let preds = vec![vec![Point2::new(3.0, 0.5), Point2::new(4.0, 0.5)]];
        render_svg(
            &Scene {
                graph: Some(graph),
                past: Some(&past),
                futures: &futures,
                predictions: &preds,
            },
            Some("cfg echo"),
        )
    }

    #[test]
    fn layers_carry_the_conventional_colors() {
        let g = chain_map(2, 10.0).unwrap();
        let svg = demo_scene(&g);
        assert!(svg.contains(COLOR_CENTERLINE));
        assert!(svg.contains(COLOR_PAST));
        assert!(svg.contains(COLOR_FUTURE));
        assert!(svg.contains(COLOR_PREDICTION));
        assert_eq!(svg.matches("<circle").count(), 1, "one terminal dot per prediction");
        assert!(svg.contains("<!-- cfg echo -->"));
    }

    #[test]
    fn higher_world_y_is_smaller_screen_y() {
        let low = vec![Point2::new(0.0, 0.0), Point2::new(10.0, 0.0)];
        let high = vec![Point2::new(0.0, 5.0), Point2::new(10.0, 5.0)];
        let futures = vec![low, high];
        let svg = render_svg(
            &Scene { futures: &futures, ..Default::default() },
            None,
        );
        let ys: Vec<f64> = svg
            .lines()
            .filter(|l| l.contains("polyline"))
            .map(|l| {
                let pts = l.split("points=\"").nth(1).unwrap();
                let first_y = pts.split(',').nth(1).unwrap();
                first_y.split_whitespace().next().unwrap().parse::<f64>().unwrap()
            })
            .collect();
        assert!(ys[1] < ys[0], "y=5 line must render above y=0 line: {ys:?}");
    }

    #[test]
    fn comment_cannot_break_the_svg() {
        let svg = render_svg(&Scene::default(), Some("a--b"));
        assert!(!svg.contains("a--b"));
        assert!(svg.contains("a- -b"));
        assert_eq!(svg.matches("-->").count(), 1);
    }

    #[test]
    fn empty_and_degenerate_scenes_render_finite_documents() {
        let svg = render_svg(&Scene::default(), None);
        assert!(svg.starts_with("<svg"));
        assert!(!svg.contains("NaN"));
        let dot = vec![vec![Point2::new(3.0, 3.0), Point2::new(3.0, 3.0)]];
        let svg = render_svg(
            &Scene { predictions: &dot, ..Default::default() },
            None,
        );
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn output_is_deterministic() {
        let g = chain_map(3, 10.0).unwrap();
        assert_eq!(demo_scene(&g), demo_scene(&g));
    }
}
