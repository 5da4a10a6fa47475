//! Closed-form distances between compass elections and diameter checks.

use num_rational::Ratio;
use serde::Serialize;

use crate::election::{compass_election, CompassKind, Election};
use crate::error::{Error, Result};
use crate::metrics::{distance, distance_with, DistanceOptions, MetricKind};
use crate::perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaValue {
    Exact(i64),
    Bounds { lower: i64, upper: i64 },
}

impl FormulaValue {
    pub fn admits(self, value: i64) -> bool {
        match self {
            FormulaValue::Exact(v) => v == value,
            FormulaValue::Bounds { lower, upper } => lower <= value && value <= upper,
        }
    }
}

impl std::fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormulaValue::Exact(v) => write!(f, "{v}"),
            FormulaValue::Bounds { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// The value of one table cell. `printed` holds the tabulated expression
/// evaluated at the same `(m, n)` when it disagrees with `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompassFormula {
    pub value: FormulaValue,
    pub printed: Option<FormulaValue>,
}

type Q = Ratio<i64>;

fn q(x: i64) -> Q {
    Ratio::from_integer(x)
}

fn exact(x: Q) -> Result<FormulaValue> {
    if x.is_integer() {
        Ok(FormulaValue::Exact(x.to_integer()))
    } else {
        Err(Error::Divisibility(format!("formula value {x} is not an integer")))
    }
}

fn bounds(lower: Q, upper: Q) -> FormulaValue {
    FormulaValue::Bounds {
        lower: lower.ceil().to_integer(),
        upper: upper.floor().to_integer(),
    }
}

fn rank(k: CompassKind) -> usize {
    CompassKind::ALL.iter().position(|&c| c == k).expect("listed")
}

/// Closed-form distance between two compass elections with `m` candidates
/// and `n` voters. Requires even `m` and the existence of both elections.
pub fn compass_distance_formula(kind: MetricKind, pair: (CompassKind, CompassKind), m: usize, n: usize) -> Result<CompassFormula> {
    use CompassKind::*;
    if m % 2 != 0 {
        return Err(Error::Divisibility(format!("compass formulas assume even m, got {m}")));
    }
    pair.0.check(m, n)?;
    pair.1.check(m, n)?;
    let (x, y) = if rank(pair.0) <= rank(pair.1) { pair } else { (pair.1, pair.0) };
    let plain = |v: FormulaValue| CompassFormula { value: v, printed: None };
    if x == y {
        return Ok(plain(FormulaValue::Exact(0)));
    }
    let mi = m as i64;
    let (mq, nq) = (q(mi), q(n as i64));
    let mf = q(perm::factorial(m) as i64);
    let hf = {
        let h = perm::factorial(m / 2) as i64;
        q(h * h)
    };
    let m2 = mq * mq;
    let m3 = m2 * mq;
    let corrected = |value: Q, printed: Q| -> Result<CompassFormula> {
        Ok(CompassFormula {
            value: exact(value)?,
            printed: Some(FormulaValue::Exact(printed.floor().to_integer())).filter(|_| value != printed),
        })
    };
    let v = match (kind, x, y) {
        (MetricKind::IsoDiscrete, Id, Un) => plain(exact(nq * (mf - 1) / mf)?),
        (MetricKind::IsoDiscrete, Id, An) => plain(exact(nq / 2)?),
        (MetricKind::IsoDiscrete, Id, St) | (MetricKind::IsoDiscrete, An, St) => plain(exact(nq * (hf - 1) / hf)?),
        (MetricKind::IsoDiscrete, An, Un) => plain(exact(nq * (mf - 2) / mf)?),
        (MetricKind::IsoDiscrete, Un, St) => plain(exact(nq * (mf - hf) / mf)?),

        (MetricKind::IsoSwap, Id, Un) | (MetricKind::IsoSwap, Id, An) => plain(exact(nq * (m2 - mq) / 4)?),
        (MetricKind::IsoSwap, Id, St) => plain(exact(nq * (m2 - mq * 2) / 8)?),
        (MetricKind::IsoSwap, An, Un) => plain(bounds(nq * (m2 - mq * 3 + 2) / 8, nq * (m2 - mq) / 4)),
        (MetricKind::IsoSwap, Un, St) => plain(exact(nq * m2 / 8)?),
        (MetricKind::IsoSwap, An, St) => plain(bounds(nq * (m2 - mq * 2) / 8, nq * (m2 - mq) / 4)),

        (MetricKind::Pairwise, Id, Un) | (MetricKind::Pairwise, Id, An) => plain(exact(nq * (m2 - mq) / 2)?),
        (MetricKind::Pairwise, Id, St) => plain(exact(nq * (m2 - mq * 2) / 4)?),
        (MetricKind::Pairwise, An, Un) => plain(FormulaValue::Exact(0)),
        (MetricKind::Pairwise, Un, St) | (MetricKind::Pairwise, An, St) => plain(exact(nq * m2 / 4)?),

        (MetricKind::L1Positionwise, Id, Un) => plain(exact(nq * 2 * (mq - 1))?),
        (MetricKind::L1Positionwise, Id, An) => corrected(nq * mq, nq * mq / 2)?,
        (MetricKind::L1Positionwise, Id, St) | (MetricKind::L1Positionwise, An, Un) | (MetricKind::L1Positionwise, An, St) => {
            plain(exact(nq * 2 * (mq - 2))?)
        }
        (MetricKind::L1Positionwise, Un, St) => corrected(nq * mq, mq / 2)?,

        (MetricKind::EmdPositionwise, Id, Un) => plain(exact(nq * (m2 - 1) / 3)?),
        (MetricKind::EmdPositionwise, Id, An) | (MetricKind::EmdPositionwise, Un, St) => plain(exact(nq * m2 / 4)?),
        (MetricKind::EmdPositionwise, Id, St) | (MetricKind::EmdPositionwise, An, Un) => plain(exact(nq * (m2 - 4) / 6)?),
        (MetricKind::EmdPositionwise, An, St) => {
            if mi % 4 != 0 {
                return Err(Error::Divisibility(format!(
                    "the EMD-positionwise AN/ST formula holds for 4 | m, got m = {m}"
                )));
            }
            plain(exact(nq * (m2 * 13 - 16) / 48)?)
        }

        (MetricKind::Bordawise, Id, Un) | (MetricKind::Bordawise, Id, An) => plain(exact(nq * (m3 - mq) / 12)?),
        (MetricKind::Bordawise, Id, St) => corrected(nq * (m3 - mq * 4) / 48, nq * (m3 + m2 * 3 - mq * 4) / 48)?,
        (MetricKind::Bordawise, An, Un) => plain(FormulaValue::Exact(0)),
        (MetricKind::Bordawise, Un, St) => corrected(nq * m3 / 16, nq * (m3 - mq) / 16)?,
        (MetricKind::Bordawise, An, St) => corrected(nq * m3 / 16, nq * (m3 + m2 * 3 - mq * 4) / 48)?,

        (_, a, b) => unreachable!("unordered pair ({a}, {b}) not normalized"),
    };
    Ok(v)
}

/// Computes the metric on generated compass elections.
pub fn compass_distance_computed(kind: MetricKind, pair: (CompassKind, CompassKind), m: usize, n: usize) -> Result<i64> {
    let a = compass_election(pair.0, m, n)?;
    let b = compass_election(pair.1, m, n)?;
    Ok(distance(&a, &b, kind)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterViolation {
    pub i: usize,
    pub j: usize,
    pub value: i64,
    pub diameter: i64,
}

/// `d(ID, UN)` at the given size.
pub fn diameter(kind: MetricKind, m: usize, n: usize) -> Result<i64> {
    let id = compass_election(CompassKind::Id, m, n)?;
    let un = compass_election(CompassKind::Un, m, n)?;
    Ok(distance(&id, &un, kind)?.value)
}

/// Pairs of the dataset whose distance exceeds `d(ID, UN)`.
pub fn check_diameter(dataset: &[Election], kind: MetricKind) -> Result<Vec<DiameterViolation>> {
    let Some(first) = dataset.first() else {
        return Ok(Vec::new());
    };
    let diam = diameter(kind, first.m(), first.n())?;
    let opts = DistanceOptions::default();
    let mut out = Vec::new();
    for i in 0..dataset.len() {
        for j in i + 1..dataset.len() {
            let value = distance_with(&dataset[i], &dataset[j], kind, &opts)?.value;
            if value > diam {
                out.push(DiameterViolation { i, j, value, diameter: diam });
            }
        }
    }
    Ok(out)
}

/// `d(E, ID) + d(E, UN) − d(ID, UN)` under the Bordawise metric.
pub fn borda_diameter_defect(e: &Election) -> Result<i64> {
    let id = compass_election(CompassKind::Id, e.m(), e.n())?;
    let un = compass_election(CompassKind::Un, e.m(), e.n())?;
    let d = |a: &Election, b: &Election| distance(a, b, MetricKind::Bordawise).map(|o| o.value);
    Ok(d(e, &id)? + d(e, &un)? - d(&id, &un)?)
}
