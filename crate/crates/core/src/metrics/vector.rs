//! Distances between plain vectors.

use num_traits::Signed;

use crate::error::{Error, Result};

fn check_len(x: usize, y: usize) -> Result<()> {
    if x != y {
        return Err(Error::DimensionMismatch {
            what: "vector length",
            left: x,
            right: y,
        });
    }
    Ok(())
}

/// `Σ |x_i − y_i|`.
pub fn l1<T: Signed + Copy>(x: &[T], y: &[T]) -> Result<T> {
    check_len(x.len(), y.len())?;
    Ok(x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs()))
}

/// Earth mover's distance between two nonnegative vectors of equal mass,
/// computed as the ℓ1 distance of their prefix sums.
pub fn emd<T: Signed + Copy + PartialOrd + std::fmt::Debug>(x: &[T], y: &[T]) -> Result<T> {
    check_len(x.len(), y.len())?;
    if let Some(v) = x.iter().chain(y).find(|v| v.is_negative()) {
        return Err(Error::NegativeEntry(format!("{v:?}")));
    }
    let (mut px, mut py, mut total) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        px = px + a;
        py = py + b;
        total = total + (px - py).abs();
    }
    if px != py {
        return Err(Error::SumMismatch {
            left: format!("{px:?}"),
            right: format!("{py:?}"),
        });
    }
    Ok(total)
}

/// Integer convenience for `u64` count vectors.
pub(crate) fn emd_counts(x: &[u64], y: &[u64]) -> i64 {
    let (mut px, mut py, mut total) = (0i64, 0i64, 0i64);
    for (&a, &b) in x.iter().zip(y) {
        px += a as i64;
        py += b as i64;
        total += (px - py).abs();
    }
    total
}

pub(crate) fn l1_counts(x: &[u64], y: &[u64]) -> i64 {
    x.iter().zip(y).map(|(&a, &b)| (a as i64 - b as i64).abs()).sum()
}
