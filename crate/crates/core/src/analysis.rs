//! Norm, absorption coefficient and 1-point certificates for a fixed node set.
//!
//! Every maximum here is exact by pieces. The roots of each `λ_j` are the
//! other nodes (`λ_j` has degree `k` and vanishes at the `k` nodes other than
//! `x_j`), so the nodes together with `±1` split `[-1, 1]` into intervals on
//! which every `λ_j` has constant sign. On such an interval `Σ|λ_j|` and each
//! `-λ_j` are single polynomials whose maxima come from certified roots of
//! their derivatives.

use std::cmp::Ordering;

use crate::basis::LagrangeBasis;
use crate::error::{Error, Result};
use crate::poly::{bracketed_root, critical_points, Polynomial};
use crate::scalar::{Precision, Scalar};

/// Maximizers of the Lebesgue function within this distance of the maximum
/// are all reported as witnesses.
pub const WITNESS_TOLERANCE: f64 = 1e-12;

/// `|ξ - upper|` at or below this counts as equality in the upper bound.
pub const EQUALITY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Witness {
    pub x: Scalar,
    /// `(λ_1(x), …, λ_d(x))`.
    pub coords: Vec<Scalar>,
}

/// `‖P‖ = max_{[-1,1]} Σ|λ_j|` with every maximizer found.
#[derive(Clone, Debug)]
pub struct NormResult {
    pub value: Scalar,
    /// Ascending in `x`; never empty.
    pub witnesses: Vec<Witness>,
}

/// Absorption coefficient `ξ(T([-1,1]); S)` of the moment curve by the node
/// simplex.
#[derive(Clone, Debug)]
pub struct XiResult {
    pub value: Scalar,
    pub contained: bool,
    /// 1-based index `j` of the coordinate `λ_j` reaching the most negative
    /// value.
    pub worst_index: usize,
    pub worst_point: Scalar,
}

#[derive(Clone, Debug)]
pub struct OnePoint {
    pub x: Scalar,
    /// 1-based index of the only negative coordinate.
    pub negative_index: usize,
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct OnePointCertificate {
    pub point: Option<OnePoint>,
}

impl OnePointCertificate {
    pub fn exists(&self) -> bool {
        self.point.is_some()
    }
}

/// The two-sided bound `lower ≤ ξ ≤ upper` in terms of `‖P‖`.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub lower: Scalar,
    pub xi: Scalar,
    pub upper: Scalar,
    pub right_equality: bool,
    /// `(ξ - 1) / (‖P‖ - 1)`; absent when `‖P‖ = 1`.
    pub ratio: Option<Scalar>,
    /// `|ξ - upper|`.
    pub residual: Scalar,
    pub one_point: bool,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub norm: NormResult,
    pub xi: XiResult,
    pub one_point: OnePointCertificate,
    pub inequality: InequalityReport,
}

/// Lower and upper bound on `ξ` for a projector of norm `norm` with `d`
/// nodes: `½(1 + 1/(d-1))(norm - 1) + 1` and `(d/2)(norm - 1) + 1`.
pub fn xi_bounds(norm: &Scalar, d: usize) -> (Scalar, Scalar) {
    let prec = norm.precision();
    let one = Scalar::one(prec);
    let excess = norm - &one;
    let d_minus_1 = Scalar::from_i64(d as i64 - 1, prec);
    let lower_factor = (&one + &(&one / &d_minus_1)) / Scalar::from_i64(2, prec);
    let upper_factor = Scalar::from_ratio(d as i64, 2, prec);
    (
        &lower_factor * &excess + &one,
        &upper_factor * &excess + &one,
    )
}

fn breakpoints(basis: &LagrangeBasis) -> Vec<Scalar> {
    let prec = basis.precision();
    let mut points = Vec::with_capacity(basis.len() + 2);
    points.push(-Scalar::one(prec));
    points.extend(basis.nodes().points().iter().cloned());
    points.push(Scalar::one(prec));
    points.dedup();
    points
}

/// Whether `λ_j < 0` on the open piece whose right end is `v`.
///
/// `λ_j(x) = ∏_{i≠j} (x - x_i) / ∏_{i≠j} (x_j - x_i)`, so its sign on a piece
/// only depends on how many nodes lie above the piece.
fn negative_on_piece(nodes: &[Scalar], j: usize, v: &Scalar) -> bool {
    let above = nodes.iter().filter(|x| **x >= *v).count();
    let above_others = above - usize::from(nodes[j] >= *v);
    (above_others + nodes.len() - 1 - j) % 2 == 1
}

/// The Lebesgue function on the piece ending at `v` as one polynomial.
fn lebesgue_piece(basis: &LagrangeBasis, v: &Scalar) -> Polynomial {
    let prec = basis.precision();
    let nodes = basis.nodes().points();
    let mut coeffs = vec![Scalar::zero(prec); basis.len()];
    for (j, lambda) in basis.lambdas().iter().enumerate() {
        let negative = negative_on_piece(nodes, j, v);
        for (acc, c) in coeffs.iter_mut().zip(lambda.coeffs()) {
            if negative {
                *acc -= c;
            } else {
                *acc += c;
            }
        }
    }
    Polynomial::new(coeffs, prec)
}

/// Candidates for the maximum of `p` on the piece `[u, v]`, ascending.
///
/// Outside the node hull `p` is monotone and only the ends count. Between
/// two nodes it has exactly one critical point, located by a sign change of
/// `p'`; if that bracket is not numerically clean the certified Sturm search
/// takes over.
fn piece_candidates(
    p: &Polynomial,
    slope: &Polynomial,
    u: &Scalar,
    v: &Scalar,
    nodes: &[Scalar],
) -> Vec<Scalar> {
    if *u < nodes[0] || *v > nodes[nodes.len() - 1] {
        return vec![u.clone(), v.clone()];
    }
    let eps = p.precision().root_width();
    if let Some(c) = bracketed_root(slope, u, v, &eps) {
        return vec![u.clone(), c, v.clone()];
    }
    critical_points(p, u, v)
}

/// Each piece between consecutive nodes holds exactly one critical point of
/// the Lebesgue function. On that piece it is a polynomial `Q` with
/// `Q(x_i) = ±1`, the signs alternating away from the piece; the alternation
/// forces `k - 2` roots of `Q'` off the piece, Rolle one more on it, and
/// `deg Q' ≤ k - 1`. Outside the node hull `Q` is monotone.
pub fn projector_norm(basis: &LagrangeBasis) -> NormResult {
    let prec = basis.precision();
    let cuts = breakpoints(basis);
    let nodes = basis.nodes().points();
    let mut candidates: Vec<(Scalar, Scalar)> = Vec::new();
    for w in cuts.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        let piece = lebesgue_piece(basis, v);
        for x in piece_candidates(&piece, &piece.derivative(), u, v, nodes) {
            if candidates.last().is_some_and(|(last, _)| *last == x) {
                continue;
            }
            let value = piece.eval(&x);
            candidates.push((x, value));
        }
    }
    let value = candidates
        .iter()
        .map(|(_, v)| v.clone())
        .fold(Scalar::one(prec), Scalar::max);
    let cutoff = &value - &Scalar::from_f64(WITNESS_TOLERANCE, prec);
    let merge = prec.root_width() * Scalar::from_i64(16, prec);
    let mut witnesses: Vec<Witness> = Vec::new();
    for (x, v) in candidates {
        if v < cutoff {
            continue;
        }
        if witnesses.last().is_some_and(|w| (&x - &w.x).abs() <= merge) {
            continue;
        }
        let coords = basis.barycentric_coords(&x);
        witnesses.push(Witness { x, coords });
    }
    NormResult { value, witnesses }
}

/// Maximum of the Lebesgue function on each piece, in piece order. Each is
/// a smooth function of the nodes; `‖P‖` is the largest.
pub fn lebesgue_piece_maxima(basis: &LagrangeBasis) -> Vec<Scalar> {
    let cuts = breakpoints(basis);
    let nodes = basis.nodes().points();
    cuts.windows(2)
        .map(|w| {
            let piece = lebesgue_piece(basis, &w[1]);
            piece_candidates(&piece, &piece.derivative(), &w[0], &w[1], nodes)
                .iter()
                .map(|x| piece.eval(x))
                .fold(Scalar::one(basis.precision()), Scalar::max)
        })
        .collect()
}

/// `max(-λ_j)` on every piece where `λ_j < 0`, ordered by `j` and then by
/// piece. The order depends only on the number of nodes, and when the
/// largest depth is positive `ξ = d · depth + 1`.
pub fn negative_lobe_depths(basis: &LagrangeBasis) -> Vec<Scalar> {
    let cuts = breakpoints(basis);
    let nodes = basis.nodes().points();
    let mut depths = Vec::new();
    for (j, lambda) in basis.lambdas().iter().enumerate() {
        let negated = -lambda;
        let slope = negated.derivative();
        for w in cuts.windows(2) {
            if !negative_on_piece(nodes, j, &w[1]) {
                continue;
            }
            let depth = piece_candidates(&negated, &slope, &w[0], &w[1], nodes)
                .iter()
                .map(|x| negated.eval(x))
                .fold(Scalar::zero(basis.precision()), Scalar::max);
            depths.push(depth);
        }
    }
    depths
}

/// A negative piece of `λ_j` between nodes lies between two consecutive
/// roots of `λ_j`, where `λ_j'` (degree `k - 1`, one root per gap by Rolle)
/// has exactly one simple root.
pub fn absorption_coefficient(basis: &LagrangeBasis) -> XiResult {
    let prec = basis.precision();
    let cuts = breakpoints(basis);
    let nodes = basis.nodes().points();
    // λ_1 vanishes at the second node, so -λ_1 reaches 0 there.
    let mut best = (Scalar::zero(prec), 1, nodes[1].clone());
    for (j, lambda) in basis.lambdas().iter().enumerate() {
        let negated = -lambda;
        let slope = negated.derivative();
        for w in cuts.windows(2) {
            let (u, v) = (&w[0], &w[1]);
            if !negative_on_piece(nodes, j, v) {
                continue;
            }
            for x in piece_candidates(&negated, &slope, u, v, nodes) {
                let value = negated.eval(&x);
                if value > best.0 {
                    best = (value, j + 1, x);
                }
            }
        }
    }
    let (depth, worst_index, worst_point) = best;
    let contained = depth <= prec.tolerance();
    let value = if contained {
        Scalar::one(prec)
    } else {
        Scalar::from_i64(basis.len() as i64, prec) * depth + Scalar::one(prec)
    };
    XiResult {
        value,
        contained,
        worst_index,
        worst_point,
    }
}

/// First maximizer (smallest `x`) with exactly one coordinate below `-τ`.
pub fn one_point_from(norm: &NormResult, prec: Precision) -> OnePointCertificate {
    let tau = prec.tolerance();
    let point = norm.witnesses.iter().find_map(|w| {
        let mut negatives = w
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.sign_with(&tau) == Ordering::Less);
        let first = negatives.next()?;
        negatives.next().is_none().then(|| OnePoint {
            x: w.x.clone(),
            negative_index: first.0 + 1,
            coords: w.coords.clone(),
        })
    });
    OnePointCertificate { point }
}

pub fn find_one_point(basis: &LagrangeBasis) -> OnePointCertificate {
    one_point_from(&projector_norm(basis), basis.precision())
}

impl InequalityReport {
    pub fn from_parts(norm: &Scalar, xi: &Scalar, d: usize, one_point: bool) -> Self {
        let prec = norm.precision();
        let (lower, upper) = xi_bounds(norm, d);
        let residual = (xi - &upper).abs();
        let right_equality = residual <= Scalar::from_f64(EQUALITY_TOLERANCE, prec);
        let one = Scalar::one(prec);
        let excess = norm - &one;
        let ratio = (excess > prec.tolerance()).then(|| (xi - &one) / &excess);
        InequalityReport {
            lower,
            xi: xi.clone(),
            upper,
            right_equality,
            ratio,
            residual,
            one_point,
        }
    }
}

pub fn inequality_report(basis: &LagrangeBasis) -> InequalityReport {
    analyze(basis).inequality
}

/// All quantities for one node set.
pub fn analyze(basis: &LagrangeBasis) -> AnalysisReport {
    let norm = projector_norm(basis);
    let xi = absorption_coefficient(basis);
    let one_point = one_point_from(&norm, basis.precision());
    let inequality =
        InequalityReport::from_parts(&norm.value, &xi.value, basis.len(), one_point.exists());
    debug_assert!(
        !inequality.one_point || inequality.right_equality,
        "a 1-point forces equality in the upper bound (residual {:?})",
        inequality.residual
    );
    AnalysisReport {
        norm,
        xi,
        one_point,
        inequality,
    }
}

/// `(ξ, ‖P‖)` for the quadratic nodes `{-r, 0, r}`:
/// `max(11/8, 3/r² - 2)` and `max(5/4, 2/r² - 1)`.
pub fn quadratic_closed_form(r: &Scalar) -> Result<(Scalar, Scalar)> {
    if *r <= 0.0 || *r > 1.0 {
        return Err(Error::InvalidRadius(r.to_decimal(17)));
    }
    let prec = r.precision();
    let inv_sq = Scalar::one(prec) / (r * r);
    let xi = (Scalar::from_i64(3, prec) * &inv_sq - Scalar::from_i64(2, prec))
        .max(Scalar::from_ratio(11, 8, prec));
    let norm = (Scalar::from_i64(2, prec) * &inv_sq - Scalar::one(prec))
        .max(Scalar::from_ratio(5, 4, prec));
    Ok((xi, norm))
}

/// Grid lower bound for `‖P‖`: the largest `Σ|β_j|` over barycentric
/// coordinates of `T(x)` at `samples` equispaced `x` in `[-1, 1]`.
pub fn norm_via_barycentric(basis: &LagrangeBasis, samples: usize) -> Scalar {
    let prec = basis.precision();
    let samples = samples.max(2);
    let last = samples as i64 - 1;
    (0..samples as i64)
        .map(|i| {
            let x = Scalar::from_ratio(2 * i - last, last, prec);
            basis
                .barycentric_coords(&x)
                .iter()
                .fold(Scalar::zero(prec), |acc, b| acc + b.abs())
        })
        .fold(Scalar::zero(prec), Scalar::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::{chebyshev_nodes, regular_nodes, NodeSet};

    fn prec() -> Precision {
        Precision::default()
    }

    fn basis(points: &[f64]) -> LagrangeBasis {
        LagrangeBasis::build(&NodeSet::from_f64s(points, prec()).unwrap()).unwrap()
    }

    fn rel_close(a: &Scalar, b: f64, tol: f64) -> bool {
        ((a.to_f64() - b) / b).abs() <= tol
    }

    #[test]
    fn linear_case_is_contained() {
        let b = basis(&[-1.0, 1.0]);
        let n = projector_norm(&b);
        assert_eq!(n.value, 1.0);
        let xi = absorption_coefficient(&b);
        assert!(xi.contained);
        assert_eq!(xi.value, 1.0);
        let report = inequality_report(&b);
        assert!(report.ratio.is_none());
        assert!(report.right_equality);
    }

    #[test]
    fn quadratic_regular() {
        let b = basis(&[-1.0, 0.0, 1.0]);
        assert_eq!(projector_norm(&b).value, 1.25);
        let xi = absorption_coefficient(&b);
        assert_eq!(xi.value, 1.375);
        assert!(!xi.contained);
        let report = inequality_report(&b);
        assert_eq!(report.ratio.unwrap(), 1.5);
        assert_eq!(report.lower, 1.1875);
        assert_eq!(report.upper, 1.375);
        assert!(report.right_equality);
        assert!(report.one_point);
    }

    #[test]
    fn cubic_chebyshev() {
        let b = LagrangeBasis::build(&chebyshev_nodes(3, prec()).unwrap()).unwrap();
        let two = Scalar::from_i64(2, prec());
        let exact = (&two + two.sqrt()).sqrt();
        let norm = projector_norm(&b);
        assert!((&norm.value - &exact).abs() < Scalar::from_f64(1e-60, prec()));
        assert!(rel_close(&absorption_coefficient(&b).value, 2.496605, 1e-6));
        assert!(!find_one_point(&b).exists());
        let report = inequality_report(&b);
        assert!(rel_close(&report.lower, 1.5651727, 1e-7));
        assert!(rel_close(&report.upper, 2.695518, 1e-6));
        assert!(!report.right_equality);
    }

    #[test]
    fn cubic_regular_one_point() {
        let b = LagrangeBasis::build(&regular_nodes(3, prec()).unwrap()).unwrap();
        let cert = find_one_point(&b);
        let p = cert.point.expect("regular cubic nodes have a 1-point");
        assert!((p.x.to_f64() + 0.699055).abs() < 1e-6);
        // the node 1/3, third in ascending order
        assert_eq!(p.negative_index, 3);
        let report = inequality_report(&b);
        assert!(report.right_equality);
        assert!(rel_close(&report.upper, 2.262260, 1e-6));
    }

    #[test]
    fn quartic_regular_norm() {
        let b = LagrangeBasis::build(&regular_nodes(4, prec()).unwrap()).unwrap();
        assert!(rel_close(&projector_norm(&b).value, 2.207824, 1e-6));
    }

    #[test]
    fn witnesses_reproduce_the_norm() {
        let b = LagrangeBasis::build(&regular_nodes(5, prec()).unwrap()).unwrap();
        let n = projector_norm(&b);
        assert!(!n.witnesses.is_empty());
        for w in &n.witnesses {
            let s = w
                .coords
                .iter()
                .fold(Scalar::zero(prec()), |a, c| a + c.abs());
            assert!((&s - &n.value).abs() < Scalar::from_f64(1e-18, prec()));
        }
        // symmetric nodes: maximizers come in ± pairs
        assert_eq!(n.witnesses.len() % 2, 0);
    }

    #[test]
    fn closed_form_examples() {
        let p = prec();
        let (xi, norm) = quadratic_closed_form(&Scalar::one(p)).unwrap();
        assert_eq!(xi, 1.375);
        assert_eq!(norm, 1.25);
        let r = Scalar::from_i64(8, p).sqrt() / Scalar::from_i64(3, p);
        let (xi, norm) = quadratic_closed_form(&r).unwrap();
        assert!((xi - Scalar::from_ratio(11, 8, p)).abs() < Scalar::from_f64(1e-70, p));
        assert!((norm - Scalar::from_ratio(5, 4, p)).abs() < Scalar::from_f64(1e-70, p));
        let r = Scalar::from_ratio(4, 5, p);
        let (xi, norm) = quadratic_closed_form(&r).unwrap();
        assert!((xi.to_f64() - 2.6875).abs() < 1e-15);
        assert!((norm.to_f64() - 2.125).abs() < 1e-15);
        let b =
            LagrangeBasis::build(&NodeSet::validate(vec![-r.clone(), Scalar::zero(p), r]).unwrap())
                .unwrap();
        assert!((projector_norm(&b).value.to_f64() - 2.125).abs() < 1e-15);
        assert!((absorption_coefficient(&b).value.to_f64() - 2.6875).abs() < 1e-15);
        assert!(matches!(
            quadratic_closed_form(&Scalar::zero(p)),
            Err(Error::InvalidRadius(_))
        ));
        assert!(matches!(
            quadratic_closed_form(&Scalar::from_f64(1.5, p)),
            Err(Error::InvalidRadius(_))
        ));
    }

    #[test]
    fn grid_oracle_examples() {
        let b = basis(&[-1.0, 1.0]);
        assert_eq!(norm_via_barycentric(&b, 7), 1.0);
        let b = basis(&[-1.0, 0.0, 1.0]);
        let g = norm_via_barycentric(&b, 100_001);
        assert!((g.to_f64() - 1.25).abs() < 1e-8);
        assert!(g <= projector_norm(&b).value);
    }

    #[test]
    fn containment_matches_minimum_of_lambdas() {
        let b = basis(&[-1.0, 1.0]);
        assert!(absorption_coefficient(&b).contained);
        let b = basis(&[-0.5, 0.5]);
        let xi = absorption_coefficient(&b);
        assert!(!xi.contained);
        // λ_1 = (0.5 - x), most negative at x = 1 where it is -0.5
        assert_eq!(xi.worst_index, 1);
        assert_eq!(xi.worst_point, 1.0);
        assert_eq!(xi.value, 2.0);
    }

    #[test]
    fn piece_maxima_recover_the_objectives() {
        for b in [
            basis(&[-1.0, -0.3, 0.4, 1.0]),
            basis(&[-0.9, -0.5, 0.1, 0.6, 0.95]),
        ] {
            let pieces = lebesgue_piece_maxima(&b);
            assert_eq!(
                pieces.len(),
                b.len() + 1
                    - usize::from(b.nodes().points()[0] == -1.0)
                    - usize::from(b.nodes().points()[b.len() - 1] == 1.0)
            );
            let top = pieces
                .iter()
                .cloned()
                .fold(Scalar::zero(prec()), Scalar::max);
            assert!(top == projector_norm(&b).value);

            let depths = negative_lobe_depths(&b);
            let deepest = depths
                .iter()
                .cloned()
                .fold(Scalar::zero(prec()), Scalar::max);
            let d = Scalar::from_i64(b.len() as i64, prec());
            assert!(&d * &deepest + Scalar::one(prec()) == absorption_coefficient(&b).value);
        }
    }

    #[test]
    fn lobe_count_depends_only_on_the_node_count() {
        let a = negative_lobe_depths(&basis(&[-1.0, -0.5, 0.0, 0.5, 1.0])).len();
        let b = negative_lobe_depths(&basis(&[-1.0, -0.9, -0.1, 0.7, 1.0])).len();
        assert_eq!(a, b);
    }
}
