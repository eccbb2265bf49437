//! The interpolation system for a node set: the Vandermonde matrix `A`
//! whose row `i` is `(1, x_i, x_i^2, …, x_i^k)`, its determinant, and the
//! basic Lagrange polynomials `λ_j`, whose coefficient vectors are the
//! columns of `A⁻¹`.
//!
//! The `λ_j` evaluated at `x` are also the barycentric coordinates of the
//! moment-curve point `(x, …, x^k)` with respect to the node simplex, so this
//! basis is all that the simplex computations need.

use crate::error::{Error, Result};
use crate::nodes::NodeSet;
use crate::poly::Polynomial;
use crate::scalar::{Precision, Scalar};

#[derive(Clone, Debug)]
pub struct LagrangeBasis {
    nodes: NodeSet,
    matrix_a: Vec<Vec<Scalar>>,
    det: Scalar,
    lambdas: Vec<Polynomial>,
}

impl LagrangeBasis {
    /// Assembles `A` in ascending node order, factors it with full pivoting
    /// and reads the `λ_j` off the columns of the inverse.
    ///
    /// Fails with [`Error::SingularSystem`] when `|det(A)|` drops under the
    /// precision's determinant threshold.
    pub fn build(nodes: &NodeSet) -> Result<Self> {
        let prec = nodes.precision();
        let d = nodes.len();
        let matrix_a: Vec<Vec<Scalar>> = nodes
            .points()
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(d);
                let mut power = Scalar::one(prec);
                for _ in 0..d {
                    row.push(power.clone());
                    power *= x;
                }
                row
            })
            .collect();

        let lu = Lu::factor(&matrix_a, prec);
        let threshold = prec.det_threshold();
        if lu.det.abs() < threshold {
            return Err(Error::SingularSystem {
                det: lu.det.abs().to_decimal(6),
                threshold: threshold.to_decimal(6),
                bits: prec.bits(),
            });
        }
        let lambdas = (0..d)
            .map(|j| Polynomial::new(lu.solve_unit(j), prec))
            .collect();
        Ok(LagrangeBasis {
            nodes: nodes.clone(),
            matrix_a,
            det: lu.det,
            lambdas,
        })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn matrix_a(&self) -> &[Vec<Scalar>] {
        &self.matrix_a
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }

    pub fn lambdas(&self) -> &[Polynomial] {
        &self.lambdas
    }

    /// Number of nodes `d`.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn precision(&self) -> Precision {
        self.nodes.precision()
    }

    /// `(λ_1(x), …, λ_d(x))`, the barycentric coordinates of `T(x)`.
    pub fn barycentric_coords(&self, x: &Scalar) -> Vec<Scalar> {
        self.lambdas.iter().map(|l| l.eval(x)).collect()
    }

    /// `Σ_j |λ_j(x)|`, the Lebesgue function.
    pub fn lebesgue(&self, x: &Scalar) -> Scalar {
        self.lambdas
            .iter()
            .fold(Scalar::zero(self.precision()), |acc, l| {
                acc + l.eval(x).abs()
            })
    }
}

/// `∏_{i<j} (x_j - x_i)`, the determinant of `A` for ascending rows.
pub fn vandermonde_det(nodes: &NodeSet) -> Scalar {
    let pts = nodes.points();
    let mut det = Scalar::one(nodes.precision());
    for (i, xi) in pts.iter().enumerate() {
        for xj in &pts[i + 1..] {
            det *= xj - xi;
        }
    }
    det
}

/// `P A Q = L U` with full pivoting.
struct Lu {
    lu: Vec<Vec<Scalar>>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    det: Scalar,
}

impl Lu {
    fn factor(a: &[Vec<Scalar>], prec: Precision) -> Self {
        let n = a.len();
        let mut lu = a.to_vec();
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut det = Scalar::one(prec);
        for k in 0..n {
            let (mut pr, mut pc) = (k, k);
            let mut best = Scalar::zero(prec);
            for (i, row) in lu.iter().enumerate().skip(k) {
                for (j, v) in row.iter().enumerate().skip(k) {
                    let m = v.abs();
                    if m > best {
                        best = m;
                        (pr, pc) = (i, j);
                    }
                }
            }
            if pr != k {
                lu.swap(pr, k);
                row_perm.swap(pr, k);
                det = -det;
            }
            if pc != k {
                for row in lu.iter_mut() {
                    row.swap(pc, k);
                }
                col_perm.swap(pc, k);
                det = -det;
            }
            let pivot = lu[k][k].clone();
            det *= &pivot;
            if pivot.is_zero() {
                continue;
            }
            let (upper, lower) = lu.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower {
                let factor = &row[k] / &pivot;
                for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    x.sub_mul(&factor, p);
                }
                row[k] = factor;
            }
        }
        Lu {
            lu,
            row_perm,
            col_perm,
            det,
        }
    }

    /// Solves `A c = e_j`.
    fn solve_unit(&self, j: usize) -> Vec<Scalar> {
        let n = self.lu.len();
        let prec = self.det.precision();
        // L y = P e_j
        let mut y: Vec<Scalar> = self
            .row_perm
            .iter()
            .map(|&r| {
                if r == j {
                    Scalar::one(prec)
                } else {
                    Scalar::zero(prec)
                }
            })
            .collect();
        for i in 0..n {
            for k in 0..i {
                let delta = &self.lu[i][k] * &y[k];
                y[i] -= delta;
            }
        }
        // U z = y
        for i in (0..n).rev() {
            for k in i + 1..n {
                let delta = &self.lu[i][k] * &y[k];
                y[i] -= delta;
            }
            y[i] /= &self.lu[i][i];
        }
        // c = Q z
        let mut c = vec![Scalar::zero(prec); n];
        for (i, &col) in self.col_perm.iter().enumerate() {
            c[col] = y[i].clone();
        }
        c
    }
}
