//! Interpolation node sets on `[-1, 1]`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Precision, Scalar};

/// Strictly increasing nodes in `[-1, 1]`; `k + 1` of them for degree `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    points: Vec<Scalar>,
}

impl NodeSet {
    /// Sorts `points` and checks that they are distinct and lie in `[-1, 1]`.
    pub fn validate(mut points: Vec<Scalar>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewNodes(points.len()));
        }
        if let Some(p) = points
            .iter()
            .find(|p| !p.is_finite() || **p < -1.0 || **p > 1.0)
        {
            return Err(Error::NodeOutOfRange(p.to_decimal(17)));
        }
        points.sort_by(Scalar::total_cmp);
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::DuplicateNodes(w[0].to_decimal(17)));
        }
        Ok(NodeSet { points })
    }

    pub fn from_f64s(points: &[f64], prec: Precision) -> Result<Self> {
        Self::validate(points.iter().map(|&p| Scalar::from_f64(p, prec)).collect())
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    /// Polynomial degree `k`.
    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    /// Number of nodes `d = k + 1`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn precision(&self) -> Precision {
        self.points[0].precision()
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.points.iter().map(Scalar::to_f64).collect()
    }
}

/// Equispaced nodes `-1 + 2j/k`, `j = 0..=k`.
pub fn regular_nodes(k: usize, prec: Precision) -> Result<NodeSet> {
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    let k_i = k as i64;
    let points = (0..=k_i)
        .map(|j| Scalar::from_ratio(2 * j - k_i, k_i, prec))
        .collect();
    Ok(NodeSet { points })
}

/// Zeros of the Chebyshev polynomial `T_{k+1}`, ascending.
///
/// The negative half comes from the cosine formula followed by one Newton
/// step against the three-term recurrence; the positive half is its exact
/// mirror image, and `0` is included exactly when `k` is even.
pub fn chebyshev_nodes(k: usize, prec: Precision) -> Result<NodeSet> {
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    let d = k + 1;
    let pi = Scalar::pi(prec);
    let two_d = Scalar::from_i64(2 * d as i64, prec);
    let negative: Vec<Scalar> = (0..d / 2)
        .map(|i| {
            let angle = &pi * Scalar::from_i64(2 * i as i64 + 1, prec) / &two_d;
            let x = -angle.cos();
            let (t, dt) = chebyshev_value_and_slope(d, &x);
            if dt.is_zero() {
                x
            } else {
                &x - &(t / dt)
            }
        })
        .collect();
    let mut points = negative.clone();
    if d % 2 == 1 {
        points.push(Scalar::zero(prec));
    }
    points.extend(negative.iter().rev().map(|x| -x));
    Ok(NodeSet { points })
}

/// `(T_n(x), T_n'(x))` by the recurrences `T_{m+1} = 2x T_m - T_{m-1}` and
/// `T'_{m+1} = 2 T_m + 2x T'_m - T'_{m-1}`.
fn chebyshev_value_and_slope(n: usize, x: &Scalar) -> (Scalar, Scalar) {
    let prec = x.precision();
    let two = Scalar::from_i64(2, prec);
    let (mut t_prev, mut t) = (Scalar::one(prec), x.clone());
    let (mut dt_prev, mut dt) = (Scalar::zero(prec), Scalar::one(prec));
    if n == 0 {
        return (t_prev, dt_prev);
    }
    for _ in 1..n {
        let t_next = &two * x * &t - &t_prev;
        let dt_next = &two * &t + &two * x * &dt - &dt_prev;
        t_prev = std::mem::replace(&mut t, t_next);
        dt_prev = std::mem::replace(&mut dt, dt_next);
    }
    (t, dt)
}

/// `T_n` in the monomial basis, from the three-term recurrence.
pub fn chebyshev_polynomial(n: usize, prec: Precision) -> Polynomial {
    let two_x = Polynomial::identity(prec).scale(&Scalar::from_i64(2, prec));
    let mut prev = Polynomial::constant(Scalar::one(prec));
    if n == 0 {
        return prev;
    }
    let mut cur = Polynomial::identity(prec);
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
