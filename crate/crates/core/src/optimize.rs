//! Multi-start Nelder–Mead search for node sets minimizing the projector norm
//! or the absorption coefficient.
//!
//! Both objectives are maxima of finitely many smooth functions of the
//! nodes (one per piece), so each start ends with a trust-region polish:
//! linear programs over the piece maxima, with central-difference slopes.
//!
//! Nodes are never searched directly. The free parameters are logits of the
//! gaps between consecutive nodes, pushed through a softmax whose first logit
//! is pinned at zero, so every parameter vector maps to a strictly increasing
//! node set.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::analysis::{
    absorption_coefficient, lebesgue_piece_maxima, negative_lobe_depths, projector_norm,
};
use crate::basis::LagrangeBasis;
use crate::error::{Error, Result};
use crate::nodes::{chebyshev_nodes, regular_nodes, NodeSet};
use crate::scalar::{Precision, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Projector norm `‖P‖`.
    Norm,
    /// Absorption coefficient `ξ`.
    Xi,
}

#[derive(Clone, Debug)]
pub struct OptimizerConfig {
    pub k: usize,
    pub objective: Objective,
    /// Search only node sets symmetric about 0.
    pub symmetric: bool,
    /// Keep the outer nodes at `±1`.
    pub fix_endpoints: bool,
    pub starts: usize,
    /// Nelder–Mead iterations per start, across restarts.
    pub max_iters: usize,
    /// Value spread at which a simplex counts as collapsed; also the least
    /// improvement for which a restart is worth another round.
    pub tol: f64,
    pub rng_seed: u64,
    pub precision: Precision,
    /// Replaces the equal-gap first start.
    pub warm_start: Option<NodeSet>,
}

impl OptimizerConfig {
    pub fn new(k: usize, objective: Objective) -> Self {
        OptimizerConfig {
            k,
            objective,
            symmetric: true,
            fix_endpoints: true,
            starts: 64,
            max_iters: 2000,
            tol: 1e-10,
            rng_seed: 0,
            precision: Precision::default(),
            warm_start: None,
        }
    }

    /// Number of free search parameters.
    pub fn dimension(&self) -> usize {
        let d = self.k + 1;
        let gaps = if self.symmetric { d / 2 } else { d - 1 };
        let margins = match (self.fix_endpoints, self.symmetric) {
            (true, _) => 0,
            (false, true) => 1,
            (false, false) => 2,
        };
        gaps + margins - 1
    }

    fn check(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidDegree(self.k));
        }
        if self.starts < 1 {
            return Err(Error::InvalidConfig("starts must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    /// Logits encoding `nodes` (the inverse of [`Self::nodes_from`]), or
    /// `None` when `nodes` lies outside the search space. With free endpoints
    /// a node set touching `±1` is pulled in by a margin of `1e-9`.
    pub fn params_from(&self, nodes: &NodeSet) -> Option<Vec<f64>> {
        let d = self.k + 1;
        let x = nodes.to_f64s();
        if x.len() != d {
            return None;
        }
        const MARGIN: f64 = 1e-9;
        let mut weights: Vec<f64> = if self.symmetric {
            if x.iter().zip(x.iter().rev()).any(|(a, b)| a != &-b) {
                return None;
            }
            let half = &x[d - d / 2..];
            let mut w: Vec<f64> = std::iter::once(half[0])
                .chain(half.windows(2).map(|p| p[1] - p[0]))
                .collect();
            if !self.fix_endpoints {
                w.push((1.0 - half[d / 2 - 1]).max(MARGIN));
            }
            w
        } else {
            let mut w: Vec<f64> = x.windows(2).map(|p| (p[1] - p[0]) / 2.0).collect();
            if !self.fix_endpoints {
                w.insert(0, ((x[0] + 1.0) / 2.0).max(MARGIN));
                w.push(((1.0 - x[d - 1]) / 2.0).max(MARGIN));
            }
            w
        };
        if self.fix_endpoints && (x[0] != -1.0 || x[d - 1] != 1.0) {
            return None;
        }
        if weights.iter().any(|w| w.is_nan() || *w <= 0.0) {
            return None;
        }
        let first = weights.remove(0);
        Some(weights.iter().map(|w| (w / first).ln()).collect())
    }

    /// The node set encoded by `params`; `None` when rounding merges nodes.
    pub fn nodes_from(&self, params: &[f64]) -> Option<NodeSet> {
        let d = self.k + 1;
        let weights = softmax(params);
        let points: Vec<f64> = if self.symmetric {
            // Gaps of the nonnegative half, measured from 0 (or from the
            // middle node when d is odd), then an optional outer margin.
            let gaps = &weights[..d / 2];
            let mut half = prefix_sums(gaps);
            if self.fix_endpoints {
                *half.last_mut().expect("d >= 2") = 1.0;
            }
            let mut points: Vec<f64> = half.iter().rev().map(|y| -y).collect();
            if d % 2 == 1 {
                points.push(0.0);
            }
            points.extend(&half);
            points
        } else {
            let (start, gaps) = if self.fix_endpoints {
                (-1.0, &weights[..])
            } else {
                (-1.0 + 2.0 * weights[0], &weights[1..d])
            };
            let mut points = vec![start];
            points.extend(prefix_sums(gaps).iter().map(|s| start + 2.0 * s));
            if self.fix_endpoints {
                *points.last_mut().expect("d >= 2") = 1.0;
            }
            points
        };
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        NodeSet::from_f64s(&points, self.precision).ok()
    }
}

#[derive(Clone, Debug)]
pub struct OptimizationResult {
    pub best_nodes: NodeSet,
    pub best_value: Scalar,
    pub evaluations: usize,
    /// Whether the winning start ended on tolerance rather than on
    /// `max_iters`.
    pub converged: bool,
    /// `(iteration, best value so far)` along the winning start.
    pub history: Vec<(usize, Scalar)>,
}

/// `softmax` of `(0, params...)`.
fn softmax(params: &[f64]) -> Vec<f64> {
    let logits: Vec<f64> = std::iter::once(0.0).chain(params.iter().copied()).collect();
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.iter().map(|e| e / total).collect()
}

fn prefix_sums(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// The objective on a node set; `None` when the interpolation system is
/// singular at the working precision.
pub fn objective_value(nodes: &NodeSet, objective: Objective) -> Option<Scalar> {
    let basis = LagrangeBasis::build(nodes).ok()?;
    Some(match objective {
        Objective::Norm => projector_norm(&basis).value,
        Objective::Xi => absorption_coefficient(&basis).value,
    })
}

/// The smooth functions whose maximum is the objective: the Lebesgue
/// function's maximum on each piece, or `d · depth + 1` for each negative
/// lobe.
fn piece_values(nodes: &NodeSet, objective: Objective) -> Option<Vec<Scalar>> {
    let basis = LagrangeBasis::build(nodes).ok()?;
    Some(match objective {
        Objective::Norm => lebesgue_piece_maxima(&basis),
        Objective::Xi => {
            let prec = basis.precision();
            let d = Scalar::from_i64(basis.len() as i64, prec);
            negative_lobe_depths(&basis)
                .iter()
                .map(|g| &d * g + Scalar::one(prec))
                .collect()
        }
    })
}

fn top(values: &[Scalar]) -> &Scalar {
    values
        .iter()
        .max_by(|a, b| a.total_cmp(b))
        .expect("at least one piece")
}

/// A point of the search with its objective; infeasible points rank last.
#[derive(Clone, Debug)]
struct Vertex {
    params: Vec<f64>,
    value: Option<Scalar>,
}

fn rank(a: &Option<Scalar>, b: &Option<Scalar>) -> Ordering {
    match (a, b) {
        (Some(a), Some(b)) => a.total_cmp(b),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

const INITIAL_STEP: f64 = 0.5;
const POLISH_ITERS: usize = 200;
const POLISH_RADIUS: f64 = 0.05;
const DIFF_STEP: f64 = 1e-6;
const RESTART_STEP: f64 = 0.25;

struct Search<'a> {
    config: &'a OptimizerConfig,
    evaluations: usize,
}

impl Search<'_> {
    fn evaluate(&mut self, params: Vec<f64>) -> Vertex {
        self.evaluations += 1;
        let value = self
            .config
            .nodes_from(&params)
            .and_then(|n| objective_value(&n, self.config.objective));
        Vertex { params, value }
    }

    /// Nelder–Mead from `start` with initial edge `step`, until the simplex
    /// values agree to `tol` or `budget` iterations are spent. Returns the
    /// best vertex, the iterations used and whether the tolerance was met.
    fn nelder_mead(
        &mut self,
        start: &Vertex,
        step: f64,
        budget: usize,
        history: &mut Vec<(usize, Scalar)>,
        offset: usize,
    ) -> (Vertex, usize, bool) {
        let n = start.params.len();
        let mut simplex = vec![start.clone()];
        for i in 0..n {
            let mut p = start.params.clone();
            p[i] += step;
            simplex.push(self.evaluate(p));
        }
        let tol = self.config.tol;
        let mut iters = 0;
        loop {
            simplex.sort_by(|a, b| rank(&a.value, &b.value));
            if let Some(v) = &simplex[0].value {
                if history.last().is_none_or(|(_, h)| v < h) {
                    history.push((offset + iters, v.clone()));
                }
            }
            if spread(&simplex) <= tol {
                return (simplex.swap_remove(0), iters, true);
            }
            if iters >= budget {
                return (simplex.swap_remove(0), iters, false);
            }
            iters += 1;

            let worst = simplex[n].clone();
            let centroid: Vec<f64> = (0..n)
                .map(|i| simplex[..n].iter().map(|v| v.params[i]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.params)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let reflected = self.evaluate(along(1.0));
            if rank(&reflected.value, &simplex[0].value) == Ordering::Less {
                let expanded = self.evaluate(along(2.0));
                simplex[n] = if rank(&expanded.value, &reflected.value) == Ordering::Less {
                    expanded
                } else {
                    reflected
                };
                continue;
            }
            if rank(&reflected.value, &simplex[n - 1].value) == Ordering::Less {
                simplex[n] = reflected;
                continue;
            }
            let outside = rank(&reflected.value, &worst.value) == Ordering::Less;
            let contracted = self.evaluate(along(if outside { 0.5 } else { -0.5 }));
            let bar = if outside { &reflected } else { &worst };
            if rank(&contracted.value, &bar.value) != Ordering::Greater {
                simplex[n] = contracted;
                continue;
            }
            let best = simplex[0].params.clone();
            for v in simplex.iter_mut().skip(1) {
                let p = best
                    .iter()
                    .zip(&v.params)
                    .map(|(b, x)| b + 0.5 * (x - b))
                    .collect();
                *v = self.evaluate(p);
            }
        }
    }

    fn pieces_at(&mut self, params: &[f64]) -> Option<Vec<Scalar>> {
        self.evaluations += 1;
        let nodes = self.config.nodes_from(params)?;
        piece_values(&nodes, self.config.objective)
    }

    /// Trust-region descent on `max_a g_a`: each step minimizes the largest
    /// linearized piece over a box, and is kept when the true maximum drops
    /// by at least a quarter of the predicted amount.
    fn polish(
        &mut self,
        start: Vertex,
        history: &mut Vec<(usize, Scalar)>,
        offset: usize,
    ) -> Vertex {
        let n = start.params.len();
        let mut x = start.params.clone();
        let (Some(mut g), true) = (self.pieces_at(&x), n > 0) else {
            return start;
        };
        let mut radius = POLISH_RADIUS;
        let floor = self.config.tol * 1e-3;
        'outer: for iter in 0..POLISH_ITERS {
            let current = top(&g).clone();
            let mut jac = vec![vec![0.0; n]; g.len()];
            for i in 0..n {
                let mut lo = x.clone();
                let mut hi = x.clone();
                lo[i] -= DIFF_STEP;
                hi[i] += DIFF_STEP;
                let (Some(gl), Some(gh)) = (self.pieces_at(&lo), self.pieces_at(&hi)) else {
                    break 'outer;
                };
                if gl.len() != g.len() || gh.len() != g.len() {
                    break 'outer;
                }
                for (row, (a, b)) in jac.iter_mut().zip(gl.iter().zip(&gh)) {
                    row[i] = (b - a).to_f64() / (2.0 * DIFF_STEP);
                }
            }
            let gaps: Vec<f64> = g.iter().map(|v| (v - &current).to_f64()).collect();
            loop {
                let Some((step, predicted)) = linear_step(&gaps, &jac, radius) else {
                    break 'outer;
                };
                if predicted <= floor {
                    break 'outer;
                }
                let trial: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
                let gain = match self.pieces_at(&trial) {
                    Some(gt) if gt.len() == g.len() => {
                        let gain = (&current - top(&gt)).to_f64();
                        if gain >= 0.25 * predicted {
                            x = trial;
                            g = gt;
                        }
                        gain
                    }
                    _ => f64::NEG_INFINITY,
                };
                if gain >= 0.25 * predicted {
                    if gain >= 0.75 * predicted {
                        radius = (2.0 * radius).min(1.0);
                    }
                    let value = top(&g).clone();
                    if history.last().is_none_or(|(_, h)| value < *h) {
                        history.push((offset + iter, value));
                    }
                    break;
                }
                radius /= 4.0;
                if radius < 1e-14 {
                    break 'outer;
                }
            }
        }
        let polished = self.evaluate(x);
        if rank(&polished.value, &start.value) == Ordering::Less {
            polished
        } else {
            start
        }
    }

    /// Restarted Nelder–Mead from `params` until a restart gains less than
    /// `tol`.
    fn run_start(&mut self, params: Vec<f64>) -> (Vertex, bool, Vec<(usize, Scalar)>) {
        let mut history = Vec::new();
        let mut best = self.evaluate(params);
        if best.params.is_empty() {
            if let Some(v) = &best.value {
                history.push((0, v.clone()));
            }
            return (best, true, history);
        }
        let mut used = 0;
        let mut step = INITIAL_STEP;
        loop {
            let budget = self.config.max_iters - used;
            let (next, iters, met) = self.nelder_mead(&best, step, budget, &mut history, used);
            used += iters;
            let gain = match (&best.value, &next.value) {
                (Some(b), Some(n)) => (b - n).to_f64(),
                (None, Some(_)) => f64::INFINITY,
                _ => 0.0,
            };
            if rank(&next.value, &best.value) == Ordering::Less {
                best = next;
            }
            if !met || gain < self.config.tol {
                let best = self.polish(best, &mut history, used);
                return (best, met, history);
            }
            // Fresh, not shrinking, simplices: on a max-type objective a
            // small simplex stalls on the kink it converged to.
            step = RESTART_STEP;
        }
    }
}

/// Step within `[-radius, radius]^n` minimizing `max_a gaps[a] + jac[a]·step`
/// and the predicted drop of that maximum below 0. Rows are scaled to unit
/// size so the LP tolerances stay meaningful near convergence.
fn linear_step(gaps: &[f64], jac: &[Vec<f64>], radius: f64) -> Option<(Vec<f64>, f64)> {
    let n = jac.first()?.len();
    let scale = gaps
        .iter()
        .zip(jac)
        .map(|(r, row)| {
            r.abs()
                .max(radius * row.iter().map(|v| v.abs()).sum::<f64>())
        })
        .fold(0.0, f64::max);
    if !(scale > 0.0 && scale.is_finite()) {
        return None;
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let u: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (-1.0, 1.0))).collect();
    let level = lp.add_var(1.0, (-4.0, 4.0));
    for (r, row) in gaps.iter().zip(jac) {
        // A row that far below cannot reach the top within the box.
        if r / scale < -2.0 {
            continue;
        }
        let mut terms: Vec<_> = u
            .iter()
            .zip(row)
            .map(|(&v, &c)| (v, c * radius / scale))
            .collect();
        terms.push((level, -1.0));
        lp.add_constraint(&terms[..], ComparisonOp::Le, -r / scale);
    }
    let solution = lp.solve().ok()?;
    let step = u.iter().map(|&v| solution[v] * radius).collect();
    Some((step, -solution[level] * scale))
}

fn spread(simplex: &[Vertex]) -> f64 {
    match (&simplex[0].value, &simplex[simplex.len() - 1].value) {
        (Some(lo), Some(hi)) => (hi - lo).to_f64(),
        _ => f64::INFINITY,
    }
}

/// Starting logits for start `index`: the warm start or all zeros (equal
/// gaps) for the first start, seeded uniform draws afterwards. Each start has its own stream, so
/// adding starts never changes earlier ones.
fn start_params(config: &OptimizerConfig, index: usize) -> Vec<f64> {
    let n = config.dimension();
    if index == 0 {
        return config
            .warm_start
            .as_ref()
            .and_then(|nodes| config.params_from(nodes))
            .unwrap_or_else(|| vec![0.0; n]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    rng.set_stream(index as u64);
    (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect()
}

fn lexicographic(a: &NodeSet, b: &NodeSet) -> Ordering {
    a.points()
        .iter()
        .zip(b.points())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Nodes, value, convergence and history of the leading start.
type Best = (NodeSet, Scalar, bool, Vec<(usize, Scalar)>);

/// Best node set over all starts; ties go to the lexicographically smallest
/// node vector.
pub fn minimize(config: &OptimizerConfig) -> Result<OptimizationResult> {
    config.check()?;
    let mut search = Search {
        config,
        evaluations: 0,
    };
    let mut best: Option<Best> = None;
    for index in 0..config.starts {
        let (vertex, converged, history) = search.run_start(start_params(config, index));
        let (Some(value), Some(nodes)) = (vertex.value, config.nodes_from(&vertex.params)) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((bn, bv, _, _)) => match value.total_cmp(bv) {
                Ordering::Less => true,
                Ordering::Equal => lexicographic(&nodes, bn) == Ordering::Less,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((nodes, value, converged, history));
        }
    }
    let (best_nodes, _, converged, history) = best.ok_or_else(|| {
        Error::InvalidConfig("every start produced a singular interpolation system".into())
    })?;
    let best_value = objective_value(&best_nodes, config.objective).expect("feasible optimum");
    Ok(OptimizationResult {
        best_nodes,
        best_value,
        evaluations: search.evaluations,
        converged,
        history,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Minimal norms with the absorption coefficient at each minimizer.
    Theta,
    /// Minimal absorption coefficients with the norm at each minimizer.
    XiMin,
    /// Both quantities at equispaced nodes.
    Regular,
    /// Both quantities at Chebyshev nodes.
    Chebyshev,
}

impl TableKind {
    pub fn default_kmax(self) -> usize {
        match self {
            TableKind::Chebyshev => 12,
            _ => 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub kmax: usize,
    pub starts: usize,
    pub rng_seed: u64,
    pub precision: Precision,
}

impl TableOptions {
    pub fn new(kind: TableKind) -> Self {
        TableOptions {
            kmax: kind.default_kmax(),
            starts: 64,
            rng_seed: 0,
            precision: Precision::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub k: usize,
    /// `θ_k`, `ξ_k`, or `ξ` at the fixed nodes.
    pub value: Scalar,
    /// `ξ` at the norm minimizer for [`TableKind::Theta`], `‖P‖` otherwise.
    pub companion: Scalar,
    pub abs_det: Scalar,
    pub nodes: NodeSet,
}

#[derive(Clone, Debug)]
pub struct TableArtifact {
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
}

fn fixed_row(k: usize, nodes: NodeSet) -> Result<TableRow> {
    let basis = LagrangeBasis::build(&nodes)?;
    Ok(TableRow {
        k,
        value: absorption_coefficient(&basis).value,
        companion: projector_norm(&basis).value,
        abs_det: basis.det().abs(),
        nodes,
    })
}

fn optimized_row(k: usize, kind: TableKind, options: &TableOptions) -> Result<TableRow> {
    let objective = if kind == TableKind::Theta {
        Objective::Norm
    } else {
        Objective::Xi
    };
    let config = OptimizerConfig {
        starts: options.starts,
        rng_seed: options.rng_seed,
        precision: options.precision,
        ..OptimizerConfig::new(k, objective)
    };
    let result = minimize(&config)?;
    let basis = LagrangeBasis::build(&result.best_nodes)?;
    let companion = match objective {
        Objective::Norm => absorption_coefficient(&basis).value,
        Objective::Xi => projector_norm(&basis).value,
    };
    Ok(TableRow {
        k,
        value: result.best_value,
        companion,
        abs_det: basis.det().abs(),
        nodes: result.best_nodes,
    })
}

/// Row `k` of the table.
pub fn reproduce_row(k: usize, kind: TableKind, options: &TableOptions) -> Result<TableRow> {
    match kind {
        TableKind::Regular => fixed_row(k, regular_nodes(k, options.precision)?),
        TableKind::Chebyshev => fixed_row(k, chebyshev_nodes(k, options.precision)?),
        TableKind::Theta | TableKind::XiMin => optimized_row(k, kind, options),
    }
}

pub fn reproduce_table_with(kind: TableKind, options: &TableOptions) -> Result<TableArtifact> {
    let rows = (1..=options.kmax)
        .map(|k| reproduce_row(k, kind, options))
        .collect::<Result<_>>()?;
    Ok(TableArtifact { kind, rows })
}

pub fn reproduce_table(kind: TableKind) -> Result<TableArtifact> {
    reproduce_table_with(kind, &TableOptions::new(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dim = |k, symmetric, fix_endpoints| {
            OptimizerConfig {
                symmetric,
                fix_endpoints,
                ..OptimizerConfig::new(k, Objective::Norm)
            }
            .dimension()
        };
        assert_eq!(dim(1, true, true), 0);
        assert_eq!(dim(2, true, true), 0);
        assert_eq!(dim(3, true, true), 1);
        assert_eq!(dim(10, true, true), 4);
        assert_eq!(dim(3, false, true), 2);
        assert_eq!(dim(3, false, false), 4);
        assert_eq!(dim(3, true, false), 2);
    }

    #[test]
    fn parametrization_is_ordered_and_symmetric() {
        let config = OptimizerConfig::new(6, Objective::Norm);
        let nodes = config.nodes_from(&[0.3, -2.0]).unwrap().to_f64s();
        assert_eq!(nodes.len(), 7);
        assert_eq!(nodes[0], -1.0);
        assert_eq!(nodes[6], 1.0);
        assert_eq!(nodes[3], 0.0);
        for i in 0..7 {
            assert_eq!(nodes[i], -nodes[6 - i]);
        }
        let free = OptimizerConfig {
            symmetric: false,
            fix_endpoints: false,
            ..OptimizerConfig::new(3, Objective::Norm)
        };
        let nodes = free.nodes_from(&[0.1, 0.2, -0.3, 0.4]).unwrap().to_f64s();
        assert!(nodes[0] > -1.0 && nodes[3] < 1.0);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_logits_give_regular_nodes() {
        let config = OptimizerConfig::new(4, Objective::Norm);
        let nodes = config.nodes_from(&[0.0]).unwrap().to_f64s();
        assert_eq!(nodes, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn params_round_trip() {
        for (symmetric, fix_endpoints) in
            [(true, true), (true, false), (false, true), (false, false)]
        {
            for k in [1, 2, 3, 6, 7] {
                let config = OptimizerConfig {
                    symmetric,
                    fix_endpoints,
                    ..OptimizerConfig::new(k, Objective::Norm)
                };
                let params: Vec<f64> = (0..config.dimension())
                    .map(|i| 0.3 * i as f64 - 0.4)
                    .collect();
                let nodes = config.nodes_from(&params).unwrap();
                let back = config.params_from(&nodes).unwrap();
                for (a, b) in params.iter().zip(&back) {
                    assert!((a - b).abs() < 1e-12, "{symmetric} {fix_endpoints} k={k}");
                }
            }
        }
        let free = OptimizerConfig {
            fix_endpoints: false,
            ..OptimizerConfig::new(3, Objective::Xi)
        };
        let touching = NodeSet::from_f64s(&[-1.0, -0.4, 0.4, 1.0], Precision::default()).unwrap();
        let nodes = free
            .nodes_from(&free.params_from(&touching).unwrap())
            .unwrap()
            .to_f64s();
        assert!((nodes[3] - 1.0).abs() < 1e-8 && nodes[3] < 1.0);
        let fixed = OptimizerConfig::new(3, Objective::Xi);
        let inner = NodeSet::from_f64s(&[-0.9, -0.4, 0.4, 0.9], Precision::default()).unwrap();
        assert!(fixed.params_from(&inner).is_none());
    }

    #[test]
    fn quadratic_has_no_free_parameters() {
        let result = minimize(&OptimizerConfig::new(2, Objective::Norm)).unwrap();
        assert_eq!(result.best_value, 1.25);
        assert_eq!(result.evaluations, 64);
        assert!(result.converged);
    }

    #[test]
    fn invalid_configs() {
        assert_eq!(
            minimize(&OptimizerConfig::new(0, Objective::Xi)).unwrap_err(),
            Error::InvalidDegree(0)
        );
        let c = OptimizerConfig {
            starts: 0,
            ..OptimizerConfig::new(3, Objective::Xi)
        };
        assert!(matches!(minimize(&c), Err(Error::InvalidConfig(_))));
        let c = OptimizerConfig {
            tol: 0.0,
            ..OptimizerConfig::new(3, Objective::Xi)
        };
        assert!(matches!(minimize(&c), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn cubic_norm_minimum() {
        let c = OptimizerConfig {
            starts: 4,
            ..OptimizerConfig::new(3, Objective::Norm)
        };
        let r = minimize(&c).unwrap();
        assert!(
            (r.best_value.to_f64() - 1.422919).abs() < 1e-6,
            "{:?}",
            r.best_value
        );
        assert!((r.best_nodes.to_f64s()[2] - 0.417791).abs() < 1e-4);
    }

    #[test]
    fn linear_step_levels_two_pieces() {
        // max(1 + u, 1 - u) is minimized at u = 0.
        let (step, predicted) = linear_step(&[0.0, -0.5], &[vec![1.0], vec![-1.0]], 1.0).unwrap();
        assert!((step[0] + 0.25).abs() < 1e-12, "{step:?}");
        assert!((predicted - 0.25).abs() < 1e-12);
        // Already level: nothing to gain.
        let (_, predicted) = linear_step(&[0.0, 0.0], &[vec![1.0], vec![-1.0]], 0.1).unwrap();
        assert!(predicted.abs() < 1e-12);
    }

    #[test]
    fn polish_reaches_the_piece_level() {
        // One start at k = 10 lands on the minimax vertex.
        let c = OptimizerConfig {
            starts: 1,
            ..OptimizerConfig::new(10, Objective::Xi)
        };
        let r = minimize(&c).unwrap();
        assert!(
            (r.best_value.to_f64() - 3.3518667599).abs() < 1e-9,
            "{:?}",
            r.best_value
        );
        let values = piece_values(&r.best_nodes, Objective::Xi).unwrap();
        let top = top(&values).to_f64();
        let level = values
            .iter()
            .filter(|v| (top - v.to_f64()).abs() < 1e-9)
            .count();
        assert!(level >= 5, "only {level} pieces at the top");
    }
}
