//! Real-valued functions on the points of a space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{MetricSpace, PointId};

/// A function description, evaluated against a concrete [`MetricSpace`].
///
/// Serialized as `{"type": "constant" | "coordinate" | "polynomial" | "table"
/// | "indicator" | "linear_combo", ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FnSpec {
    Constant {
        value: f64,
    },
    Coordinate {
        axis: usize,
    },
    /// `c[0] + c[1] x + c[2] x^2 + ...` in coordinate `axis`, evaluated by Horner's rule.
    Polynomial {
        axis: usize,
        coefficients: Vec<f64>,
    },
    /// One value per point, indexed by id.
    Table {
        values: Vec<f64>,
    },
    Indicator {
        ids: Vec<PointId>,
    },
    /// Weighted terms summed left to right, starting from zero.
    LinearCombo {
        terms: Vec<Term>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub weight: f64,
    #[serde(rename = "fn")]
    pub func: FnSpec,
}

impl FnSpec {
    pub fn constant(value: f64) -> Self {
        FnSpec::Constant { value }
    }

    pub fn coordinate(axis: usize) -> Self {
        FnSpec::Coordinate { axis }
    }

    pub fn table(values: Vec<f64>) -> Self {
        FnSpec::Table { values }
    }

    /// Scales `self` by `alpha`.
    pub fn scaled(self, alpha: f64) -> Self {
        FnSpec::LinearCombo {
            terms: vec![Term {
                weight: alpha,
                func: self,
            }],
        }
    }

    /// Checks that the function is total on `space`.
    pub fn check(&self, space: &MetricSpace) -> Result<()> {
        match self {
            FnSpec::Constant { .. } => Ok(()),
            FnSpec::Coordinate { axis } | FnSpec::Polynomial { axis, .. } => {
                let dim = space.dim().ok_or(Error::NoCoordinates)?;
                if *axis >= dim {
                    Err(Error::AxisOutOfRange { axis: *axis, dim })
                } else {
                    Ok(())
                }
            }
            FnSpec::Table { values } => {
                if values.len() != space.len() {
                    Err(Error::TableSize {
                        expected: space.len(),
                        found: values.len(),
                    })
                } else {
                    Ok(())
                }
            }
            FnSpec::Indicator { .. } => Ok(()),
            FnSpec::LinearCombo { terms } => {
                if terms.is_empty() {
                    return Err(Error::EmptyCombination);
                }
                terms.iter().try_for_each(|t| t.func.check(space))
            }
        }
    }

    pub fn eval(&self, space: &MetricSpace, p: PointId) -> Result<f64> {
        if p.index() >= space.len() {
            return Err(Error::ForeignId(p));
        }
        self.check(space)?;
        Ok(self.eval_unchecked(space, p))
    }

    fn eval_unchecked(&self, space: &MetricSpace, p: PointId) -> f64 {
        match self {
            FnSpec::Constant { value } => *value,
            FnSpec::Coordinate { axis } => space.coords(p).expect("checked")[*axis],
            FnSpec::Polynomial { axis, coefficients } => {
                let x = space.coords(p).expect("checked")[*axis];
                coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
            }
            FnSpec::Table { values } => values[p.index()],
            FnSpec::Indicator { ids } => {
                if ids.contains(&p) {
                    1.0
                } else {
                    0.0
                }
            }
            FnSpec::LinearCombo { terms } => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.weight * t.func.eval_unchecked(space, p);
                }
                acc
            }
        }
    }

    /// Binds the function to `space`: one value per point id.
    ///
    /// Partial or non-finite functions are rejected here, never later.
    pub fn tabulate(&self, space: &MetricSpace) -> Result<Vec<f64>> {
        self.check(space)?;
        (0..space.len())
            .map(PointId)
            .map(|p| {
                let v = self.eval_unchecked(space, p);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteValue(p))
                }
            })
            .collect()
    }
}

/// Characteristic function of `subset`.
pub fn indicator<I: IntoIterator<Item = PointId>>(subset: I) -> FnSpec {
    let mut ids: Vec<PointId> = subset.into_iter().collect();
    ids.sort_unstable();
    ids.dedup();
    FnSpec::Indicator { ids }
}

/// `alpha * f + beta * g`, pointwise.
pub fn combine(alpha: f64, f: FnSpec, beta: f64, g: FnSpec) -> FnSpec {
    FnSpec::LinearCombo {
        terms: vec![
            Term {
                weight: alpha,
                func: f,
            },
            Term {
                weight: beta,
                func: g,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::e5;
    use crate::space::ids;

    fn values(f: &FnSpec, s: &MetricSpace) -> Vec<f64> {
        f.tabulate(s).unwrap()
    }

    #[test]
    fn eval_variants() {
        let s = e5();
        assert_eq!(FnSpec::constant(3.5).eval(&s, PointId(4)).unwrap(), 3.5);
        assert_eq!(FnSpec::coordinate(0).eval(&s, PointId(2)).unwrap(), 0.5);
        assert_eq!(indicator(ids([0, 1, 2])).eval(&s, PointId(3)).unwrap(), 0.0);
        let poly = FnSpec::Polynomial {
            axis: 0,
            coefficients: vec![1.0, 0.0, 4.0],
        };
        assert_eq!(poly.eval(&s, PointId(2)).unwrap(), 2.0);
    }

    #[test]
    fn eval_errors() {
        let s = e5();
        assert_eq!(
            FnSpec::coordinate(1).eval(&s, PointId(0)),
            Err(Error::AxisOutOfRange { axis: 1, dim: 1 })
        );
        assert_eq!(
            FnSpec::table(vec![1.0, 2.0]).tabulate(&s),
            Err(Error::TableSize {
                expected: 5,
                found: 2
            })
        );
        let m = MetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(
            FnSpec::coordinate(0).tabulate(&m),
            Err(Error::NoCoordinates)
        );
        assert_eq!(
            FnSpec::LinearCombo { terms: vec![] }.tabulate(&m),
            Err(Error::EmptyCombination)
        );
        assert_eq!(
            FnSpec::constant(f64::NAN).tabulate(&m),
            Err(Error::NonFiniteValue(PointId(0)))
        );
    }

    #[test]
    fn indicator_values() {
        let s = e5();
        assert_eq!(values(&indicator(ids([])), &s), vec![0.0; 5]);
        assert_eq!(values(&indicator(ids(0..5)), &s), vec![1.0; 5]);
        assert_eq!(
            values(&indicator(ids([0, 1, 2])), &s),
            vec![1.0, 1.0, 1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn combine_identities() {
        let s = e5();
        let f = FnSpec::coordinate(0);
        let fv = values(&f, &s);
        assert_eq!(
            values(&combine(1.0, f.clone(), 0.0, FnSpec::constant(9.0)), &s),
            fv
        );
        let neg: Vec<f64> = fv.iter().map(|v| -v).collect();
        assert_eq!(values(&combine(-1.0, f.clone(), 0.0, f), &s), neg);
        let a = ids([1, 3]);
        let rest = ids([0, 2, 4]);
        assert_eq!(
            values(&combine(1.0, indicator(a), 1.0, indicator(rest)), &s),
            vec![1.0; 5]
        );
    }

    #[test]
    fn document_round_trip() {
        let doc = r#"{"type":"linear_combo","terms":[
            {"weight":2.0,"fn":{"type":"coordinate","axis":0}},
            {"weight":-1.0,"fn":{"type":"indicator","ids":[0,4]}}]}"#;
        let f: FnSpec = serde_json::from_str(doc).unwrap();
        assert_eq!(values(&f, &e5()), vec![-1.0, 0.5, 1.0, 1.5, 1.0]);
        let back: FnSpec = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
