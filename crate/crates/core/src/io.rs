//! JSON documents describing spaces, functions and regions.
//!
//! Space document:
//!
//! ```json
//! {"points": [{"id": 0, "label": "a", "coords": [0.0]}, ...],
//!  "metric": "euclidean" | "manhattan" | "chebyshev" | {"matrix": [[...], ...]}}
//! ```
//!
//! Ids are optional and default to list order; when given they must be a
//! permutation of `0..n`. With a matrix metric, `points` may be omitted.
//!
//! Region document: `"all"`, `{"ids": [...]}`, `{"box": {"min": [...], "max":
//! [...]}}` or `{"ball": {"center": [...] | "center_id": k, "radius": r}}`.
//! Boxes and balls are closed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::FnSpec;
use crate::space::{MetricSpace, NamedMetric, PointId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    #[serde(default)]
    pub points: Vec<PointDoc>,
    pub metric: MetricDoc,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricDoc {
    Named(String),
    Matrix { matrix: Vec<Vec<f64>> },
}

impl SpaceDoc {
    pub fn build(self) -> Result<MetricSpace> {
        let mut points = self.points;
        if points.iter().any(|p| p.id.is_some()) {
            for (pos, p) in points.iter().enumerate() {
                if p.id.is_none() {
                    return Err(Error::BadPointId {
                        position: pos,
                        id: usize::MAX,
                    });
                }
            }
            points.sort_by_key(|p| p.id);
            for (pos, p) in points.iter().enumerate() {
                if p.id != Some(pos) {
                    return Err(Error::BadPointId {
                        position: pos,
                        id: p.id.unwrap_or(usize::MAX),
                    });
                }
            }
        }
        let labels: Vec<Option<String>> = points.iter().map(|p| p.label.clone()).collect();
        let coords: Option<Vec<Vec<f64>>> = points.iter().map(|p| p.coords.clone()).collect();
        let any_coords = points.iter().any(|p| p.coords.is_some());
        let space = match self.metric {
            MetricDoc::Named(name) => {
                let metric = NamedMetric::parse(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown metric {name:?}")))?;
                let coords = coords
                    .filter(|c| !c.is_empty())
                    .ok_or(Error::MissingCoordinates)?;
                MetricSpace::from_coords(coords, metric)?
            }
            MetricDoc::Matrix { matrix } => {
                let n = matrix.len();
                if !points.is_empty() && points.len() != n {
                    return Err(Error::TableSize {
                        expected: n,
                        found: points.len(),
                    });
                }
                let space = MetricSpace::from_matrix(matrix)?;
                match coords {
                    Some(c) if !c.is_empty() => space.with_coords(c)?,
                    _ if any_coords => return Err(Error::MissingCoordinates),
                    _ => space,
                }
            }
        };
        if labels.is_empty() {
            Ok(space)
        } else {
            space.with_labels(labels)
        }
    }
}

pub fn parse_space(json: &str) -> Result<MetricSpace> {
    serde_json::from_str::<SpaceDoc>(json)?.build()
}

pub fn parse_function(json: &str) -> Result<FnSpec> {
    Ok(serde_json::from_str(json)?)
}

pub fn parse_region(json: &str) -> Result<Region> {
    Ok(serde_json::from_str(json)?)
}

/// A point set given by ids or by a coordinate predicate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    All,
    Ids(Vec<PointId>),
    Box { min: Vec<f64>, max: Vec<f64> },
    Ball(Ball),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ball {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_id: Option<PointId>,
    pub radius: f64,
}

impl Region {
    /// Sorted ids of the points of `space` inside the region.
    pub fn resolve(&self, space: &MetricSpace) -> Result<Vec<PointId>> {
        let all = (0..space.len()).map(PointId);
        let out: Vec<PointId> = match self {
            Region::All => all.collect(),
            Region::Ids(ids) => {
                let mut v = ids.clone();
                v.sort_unstable();
                v.dedup();
                if let Some(&bad) = v.iter().find(|p| p.index() >= space.len()) {
                    return Err(Error::ForeignId(bad));
                }
                v
            }
            Region::Box { min, max } => {
                let dim = space.dim().ok_or(Error::NoCoordinates)?;
                if min.len() != dim || max.len() != dim {
                    return Err(Error::DimensionMismatch {
                        index: 0,
                        expected: dim,
                        found: min.len().max(max.len()),
                    });
                }
                all.filter(|&p| {
                    let c = space.coords(p).expect("dim checked");
                    c.iter()
                        .zip(min.iter().zip(max))
                        .all(|(x, (lo, hi))| lo <= x && x <= hi)
                })
                .collect()
            }
            Region::Ball(ball) => match (&ball.center, ball.center_id) {
                (None, Some(c)) => {
                    if c.index() >= space.len() {
                        return Err(Error::ForeignId(c));
                    }
                    all.filter(|&p| space.raw(c.index(), p.index()) <= ball.radius)
                        .collect()
                }
                (Some(center), None) => {
                    let dim = space.dim().ok_or(Error::NoCoordinates)?;
                    if center.len() != dim {
                        return Err(Error::DimensionMismatch {
                            index: 0,
                            expected: dim,
                            found: center.len(),
                        });
                    }
                    let metric =
                        NamedMetric::parse(space.metric_name()).unwrap_or(NamedMetric::Euclidean);
                    all.filter(|&p| {
                        metric.eval(space.coords(p).expect("dim checked"), center) <= ball.radius
                    })
                    .collect()
                }
                _ => {
                    return Err(Error::Parse(
                        "ball needs exactly one of center or center_id".into(),
                    ))
                }
            },
        };
        Ok(out)
    }
}
