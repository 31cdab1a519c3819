//! Finite metric spaces, subspace views and metric-axiom validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense point index in `[0, n)` of a [`MetricSpace`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Collects raw indices into sorted point ids.
pub fn ids<I: IntoIterator<Item = usize>>(raw: I) -> Vec<PointId> {
    let mut v: Vec<PointId> = raw.into_iter().map(PointId).collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedMetric {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl NamedMetric {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "euclidean" | "l2" => Some(Self::Euclidean),
            "manhattan" | "l1" | "cityblock" => Some(Self::Manhattan),
            "chebyshev" | "linf" | "maximum" => Some(Self::Chebyshev),
            _ => None,
        }
    }

    /// Distance between two coordinate vectors of equal length.
    ///
    /// Accumulates axis by axis in index order so that a lazily evaluated
    /// space and its materialized matrix agree bit for bit.
    pub fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Self::Euclidean => {
                let mut acc = 0.0;
                for (x, y) in a.iter().zip(b) {
                    let d = x - y;
                    acc += d * d;
                }
                acc.sqrt()
            }
            Self::Manhattan => {
                let mut acc = 0.0;
                for (x, y) in a.iter().zip(b) {
                    acc += (x - y).abs();
                }
                acc
            }
            Self::Chebyshev => {
                let mut acc: f64 = 0.0;
                for (x, y) in a.iter().zip(b) {
                    acc = acc.max((x - y).abs());
                }
                acc
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Oracle {
    Named(NamedMetric),
    /// Row-major `n * n` matrix.
    Matrix(Vec<f64>),
}

/// A finite point set with a total distance oracle.
///
/// Immutable after construction. Distances come either from coordinates and a
/// named metric (computed on demand) or from an explicit matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSpace {
    n: usize,
    labels: Vec<Option<String>>,
    coords: Option<Vec<Vec<f64>>>,
    oracle: Oracle,
    all: Vec<PointId>,
}

impl MetricSpace {
    pub fn from_coords(coords: Vec<Vec<f64>>, metric: NamedMetric) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptySpace);
        }
        let dim = coords[0].len();
        for (i, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    index: i,
                    expected: dim,
                    found: c.len(),
                });
            }
            if let Some((axis, &v)) = c.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFinite {
                    i,
                    j: axis,
                    value: v,
                });
            }
        }
        let n = coords.len();
        Ok(Self {
            n,
            labels: vec![None; n],
            coords: Some(coords),
            oracle: Oracle::Named(metric),
            all: (0..n).map(PointId).collect(),
        })
    }

    /// Builds a space from an explicit distance matrix.
    ///
    /// Asymmetry and nonzero diagonals are accepted here and reported by
    /// [`validate_metric`]; negative or non-finite entries are rejected.
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquareMatrix {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite { i, j, value: v });
                }
                if v < 0.0 {
                    return Err(Error::NegativeDistance { i, j, value: v });
                }
                flat.push(v);
            }
        }
        Ok(Self {
            n,
            labels: vec![None; n],
            coords: None,
            oracle: Oracle::Matrix(flat),
            all: (0..n).map(PointId).collect(),
        })
    }

    /// `n` evenly spaced points `k / (n - 1)` on `[0, 1]` (a single point at 0 when `n == 1`).
    pub fn uniform_grid(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let coords = (0..n)
            .map(|k| {
                if n == 1 {
                    vec![0.0]
                } else {
                    vec![k as f64 / (n - 1) as f64]
                }
            })
            .collect();
        Self::from_coords(coords, NamedMetric::Euclidean)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::TableSize {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Attaches coordinates to a matrix-backed space; distances still come from the matrix.
    pub fn with_coords(mut self, coords: Vec<Vec<f64>>) -> Result<Self> {
        if matches!(self.oracle, Oracle::Named(_)) {
            return Err(Error::Parse(
                "coordinates of a named-metric space are fixed at construction".into(),
            ));
        }
        if coords.len() != self.n {
            return Err(Error::TableSize {
                expected: self.n,
                found: coords.len(),
            });
        }
        let dim = coords[0].len();
        if let Some((i, c)) = coords.iter().enumerate().find(|(_, c)| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                index: i,
                expected: dim,
                found: c.len(),
            });
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Returns an equivalent space whose distances are stored as a matrix.
    pub fn materialize(&self) -> Self {
        let mut flat = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                flat.push(self.raw(i, j));
            }
        }
        Self {
            n: self.n,
            labels: self.labels.clone(),
            coords: self.coords.clone(),
            oracle: Oracle::Matrix(flat),
            all: self.all.clone(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: spaces hold at least one point.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn label(&self, id: PointId) -> Option<&str> {
        self.labels.get(id.0).and_then(|l| l.as_deref())
    }

    pub fn coords(&self, id: PointId) -> Option<&[f64]> {
        self.coords
            .as_ref()
            .and_then(|c| c.get(id.0))
            .map(|c| c.as_slice())
    }

    pub fn dim(&self) -> Option<usize> {
        self.coords.as_ref().map(|c| c[0].len())
    }

    pub fn metric_name(&self) -> &'static str {
        match self.oracle {
            Oracle::Named(NamedMetric::Euclidean) => "euclidean",
            Oracle::Named(NamedMetric::Manhattan) => "manhattan",
            Oracle::Named(NamedMetric::Chebyshev) => "chebyshev",
            Oracle::Matrix(_) => "matrix",
        }
    }

    pub fn distance(&self, i: PointId, j: PointId) -> Result<f64> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.raw(i.0, j.0))
    }

    /// Unchecked distance by raw index. Panics on out-of-range indices.
    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> f64 {
        match &self.oracle {
            Oracle::Named(m) => {
                let c = self
                    .coords
                    .as_ref()
                    .expect("named metric carries coordinates");
                m.eval(&c[i], &c[j])
            }
            Oracle::Matrix(flat) => flat[i * self.n + j],
        }
    }

    fn check(&self, id: PointId) -> Result<()> {
        if id.0 < self.n {
            Ok(())
        } else {
            Err(Error::ForeignId(id))
        }
    }
}

/// Anything lattices can be taken over: a whole space or a subspace of it.
pub trait Domain {
    fn space(&self) -> &MetricSpace;

    /// Sorted, nonempty member ids of the parent space.
    fn members(&self) -> &[PointId];

    fn len(&self) -> usize {
        self.members().len()
    }

    fn is_empty(&self) -> bool {
        self.members().is_empty()
    }

    fn contains(&self, id: PointId) -> bool {
        self.members().binary_search(&id).is_ok()
    }

    fn distance(&self, i: PointId, j: PointId) -> Result<f64> {
        for id in [i, j] {
            if !self.contains(id) {
                return Err(Error::ForeignId(id));
            }
        }
        Ok(self.space().raw(i.0, j.0))
    }
}

impl Domain for MetricSpace {
    fn space(&self) -> &MetricSpace {
        self
    }

    fn members(&self) -> &[PointId] {
        &self.all
    }

    fn contains(&self, id: PointId) -> bool {
        id.0 < self.n
    }
}

/// A nonempty subset of a parent space that inherits its distances.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<'a> {
    parent: &'a MetricSpace,
    members: Vec<PointId>,
}

impl<'a> Subspace<'a> {
    pub fn parent(&self) -> &'a MetricSpace {
        self.parent
    }
}

impl Domain for Subspace<'_> {
    fn space(&self) -> &MetricSpace {
        self.parent
    }

    fn members(&self) -> &[PointId] {
        &self.members
    }
}

/// Restricts a domain to `members`. Duplicates are collapsed.
pub fn restrict<'a, D, I>(domain: &'a D, members: I) -> Result<Subspace<'a>>
where
    D: Domain + ?Sized,
    I: IntoIterator<Item = PointId>,
{
    let mut members: Vec<PointId> = members.into_iter().collect();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(Error::EmptyMembers);
    }
    if let Some(&bad) = members.iter().find(|&&id| !domain.contains(id)) {
        return Err(Error::ForeignId(bad));
    }
    Ok(Subspace {
        parent: domain.space(),
        members,
    })
}

/// Largest pairwise distance among the domain's members; 0 for a singleton.
pub fn diameter<D: Domain + ?Sized>(domain: &D) -> f64 {
    let space = domain.space();
    let m = domain.members();
    let mut best: f64 = 0.0;
    for (a, &i) in m.iter().enumerate() {
        for &j in &m[a + 1..] {
            best = best.max(space.raw(i.0, j.0)).max(space.raw(j.0, i.0));
        }
    }
    best
}

/// Smallest strictly positive pairwise distance, if any pair is apart.
pub fn min_positive_distance<D: Domain + ?Sized>(domain: &D) -> Option<f64> {
    let space = domain.space();
    let m = domain.members();
    let mut best: Option<f64> = None;
    for (a, &i) in m.iter().enumerate() {
        for &j in &m[a + 1..] {
            let d = space.raw(i.0, j.0);
            if d > 0.0 && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    best
}

/// One violated metric-axiom instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `d(i, i) != 0`.
    Identity { i: usize, value: f64 },
    /// `d(i, j) != d(j, i)`.
    Symmetry {
        i: usize,
        j: usize,
        dij: f64,
        dji: f64,
    },
    /// `d(i, k) > d(i, j) + d(j, k)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        via: f64,
    },
    /// Distinct points at distance zero (pseudo-metric); a warning only.
    ZeroDistance { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Identity { i, value } => write!(f, "identity,{i},,,{value}"),
            Violation::Symmetry { i, j, dij, dji } => write!(f, "symmetry,{i},{j},,{dij} != {dji}"),
            Violation::Triangle {
                i,
                j,
                k,
                direct,
                via,
            } => write!(f, "triangle,{i},{j},{k},{direct} > {via}"),
            Violation::ZeroDistance { i, j } => write!(f, "zero_distance,{i},{j},,0"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks identity, symmetry and every triangle `(i, j, k)` with slack `tolerance`.
///
/// Violations are data: the report lists every offending instance.
pub fn validate_metric(space: &MetricSpace, tolerance: f64) -> ValidationReport {
    let n = space.len();
    let d = |i: usize, j: usize| space.raw(i, j);
    let mut report = ValidationReport::default();
    for i in 0..n {
        let v = d(i, i);
        if v.abs() > tolerance {
            report.violations.push(Violation::Identity { i, value: v });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (dij, dji) = (d(i, j), d(j, i));
            if (dij - dji).abs() > tolerance {
                report
                    .violations
                    .push(Violation::Symmetry { i, j, dij, dji });
            }
            if dij == 0.0 || dji == 0.0 {
                report.warnings.push(Violation::ZeroDistance { i, j });
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            let direct = d(i, k);
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = d(i, j) + d(j, k);
                if direct > via + tolerance {
                    report.violations.push(Violation::Triangle {
                        i,
                        j,
                        k,
                        direct,
                        via,
                    });
                }
            }
        }
    }
    report
}
