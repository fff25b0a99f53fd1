//! In-memory lane-graph model, map-file ingestion and adjacency queries.
//!
//! The map format is a versioned JSON document:
//!
//! ```json
//! {
//!   "format": 1,
//!   "lanelets": [
//!     {"id": 0, "centerline": [[0.0, 0.0], [10.0, 0.0]], "successors": [1]},
//!     {"id": 1, "centerline": [[10.0, 0.0], [20.0, 0.0]], "successors": []}
//!   ]
//! }
//! ```
//!
//! Coordinates are meters in a planar map frame. Successor lists keep their
//! file declaration order so that downstream search is deterministic;
//! predecessor lists are derived as the exact transpose.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{polyline_length, Point2};

pub const MAP_FORMAT_VERSION: u32 = 1;

/// A section of road carrying the centerline of its lane segment.
#[derive(Clone, Debug, PartialEq)]
pub struct Lanelet {
    pub id: u64,
    pub centerline: Vec<Point2>,
}

impl Lanelet {
    /// Total centerline arc length in meters.
    pub fn arc_length(&self) -> f64 {
        polyline_length(&self.centerline)
    }

    /// First centerline vertex; the canonical start position for samples
    /// rooted at this lanelet.
    pub fn start_point(&self) -> Point2 {
        self.centerline[0]
    }
}

/// Directed graph of lanelets. Immutable after construction, so shared
/// references can be used freely across worker threads.
#[derive(Clone, Debug)]
pub struct LaneGraph {
    lanelets: Vec<Lanelet>,
    index: HashMap<u64, usize>,
    successors: Vec<Vec<u64>>,
    predecessors: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    format: u32,
    lanelets: Vec<LaneletRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaneletRecord {
    id: u64,
    centerline: Vec<[f64; 2]>,
    successors: Vec<u64>,
}

impl LaneGraph {
    /// Build a graph from `(lanelet, successor ids)` pairs, validating every
    /// structural invariant. Declaration order is preserved.
    pub fn new(entries: Vec<(Lanelet, Vec<u64>)>) -> Result<Self> {
        let mut index = HashMap::with_capacity(entries.len());
        for (pos, (lanelet, _)) in entries.iter().enumerate() {
            if index.insert(lanelet.id, pos).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate lanelet id {}",
                    lanelet.id
                )));
            }
        }
        for (lanelet, succs) in &entries {
            if lanelet.centerline.len() < 2 {
                return Err(Error::Validation(format!(
                    "lanelet {} has a centerline with fewer than 2 points",
                    lanelet.id
                )));
            }
            for w in lanelet.centerline.windows(2) {
                if w[0].distance(&w[1]) <= 0.0 {
                    return Err(Error::Validation(format!(
                        "lanelet {} has a zero-length centerline segment",
                        lanelet.id
                    )));
                }
            }
            let mut seen = Vec::with_capacity(succs.len());
            for &s in succs {
                if !index.contains_key(&s) {
                    return Err(Error::Validation(format!(
                        "lanelet {} references undefined successor {}",
                        lanelet.id, s
                    )));
                }
                if seen.contains(&s) {
                    return Err(Error::Validation(format!(
                        "lanelet {} declares successor {} twice",
                        lanelet.id, s
                    )));
                }
                seen.push(s);
            }
        }

        let mut predecessors: Vec<Vec<u64>> = vec![Vec::new(); entries.len()];
        for (lanelet, succs) in &entries {
            for &s in succs {
                predecessors[index[&s]].push(lanelet.id);
            }
        }
        let (lanelets, successors): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        Ok(Self {
            lanelets,
            index,
            successors,
            predecessors,
        })
    }

    pub fn len(&self) -> usize {
        self.lanelets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lanelets.is_empty()
    }

    /// Lanelets in file declaration order.
    pub fn lanelets(&self) -> &[Lanelet] {
        &self.lanelets
    }

    pub fn contains(&self, id: u64) -> bool {
        self.index.contains_key(&id)
    }

    pub fn lanelet(&self, id: u64) -> Result<&Lanelet> {
        self.index
            .get(&id)
            .map(|&i| &self.lanelets[i])
            .ok_or(Error::UnknownLanelet(id))
    }

    /// Successor ids in file declaration order.
    pub fn successors(&self, id: u64) -> Result<&[u64]> {
        self.index
            .get(&id)
            .map(|&i| self.successors[i].as_slice())
            .ok_or(Error::UnknownLanelet(id))
    }

    /// Predecessor ids, ordered by the file order of the edges that induce them.
    pub fn predecessors(&self, id: u64) -> Result<&[u64]> {
        self.index
            .get(&id)
            .map(|&i| self.predecessors[i].as_slice())
            .ok_or(Error::UnknownLanelet(id))
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Serialize to the canonical map-file form. Loading a canonical file and
    /// serializing it again reproduces the bytes exactly.
    pub fn to_canonical_json(&self) -> String {
        let file = MapFile {
            format: MAP_FORMAT_VERSION,
            lanelets: self
                .lanelets
                .iter()
                .zip(&self.successors)
                .map(|(l, succs)| LaneletRecord {
                    id: l.id,
                    centerline: l.centerline.iter().map(|&p| p.into()).collect(),
                    successors: succs.clone(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("map serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_canonical_json())
            .map_err(|e| Error::io(path.display().to_string(), e))
    }
}

/// Parse and validate a map document from a string. `origin` names the source
/// in error messages.
pub fn parse_lane_graph(text: &str, origin: &str) -> Result<LaneGraph> {
    let file: MapFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_string(),
        detail: e.to_string(),
    })?;
    if file.format != MAP_FORMAT_VERSION {
        return Err(Error::Parse {
            path: origin.to_string(),
            detail: format!(
                "unsupported format version {} (expected {})",
                file.format, MAP_FORMAT_VERSION
            ),
        });
    }
    let entries = file
        .lanelets
        .into_iter()
        .map(|r| {
            (
                Lanelet {
                    id: r.id,
                    centerline: r.centerline.into_iter().map(Point2::from).collect(),
                },
                r.successors,
            )
        })
        .collect();
    LaneGraph::new(entries)
}

/// Load and validate a map file.
pub fn load_lane_graph(path: impl AsRef<Path>) -> Result<LaneGraph> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_lane_graph(&text, &path.display().to_string())
}
