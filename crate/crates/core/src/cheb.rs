//! Chebyshev–Gauss–Lobatto collocation on an interval `[a, b]`.
//!
//! Nodes are stored in ascending order, `x_n = ((a+b) - (b-a) cos(πn/N)) / 2`,
//! so `x_0 = a` and `x_N = b`. The derivative operator is the classical
//! barycentric Chebyshev differentiation matrix with the negative-sum
//! diagonal, and the second-derivative operator is its square.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::{Error, Result};

/// Chebyshev–Gauss–Lobatto nodes and discrete-orthogonality weights for one
/// spatial axis.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationGrid {
    a: f64,
    b: f64,
    degree: usize,
    nodes: Vec<f64>,
    ortho_weights: Vec<f64>,
}

/// First- and second-derivative collocation operators on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrices {
    pub first: DMatrix<f64>,
    pub second: DMatrix<f64>,
}

impl CollocationGrid {
    pub fn new(a: f64, b: f64, degree: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::DegenerateDomain { a, b });
        }
        if degree < 2 {
            return Err(Error::DegreeTooSmall(degree));
        }
        // ½(1 − cos θ) = sin²(θ/2), measured from the nearer endpoint so
        // that clustered nodes keep full relative accuracy.
        let width = b - a;
        let offset = |m: usize| width * (PI * m as f64 / (2 * degree) as f64).sin().powi(2);
        let nodes = (0..=degree)
            .map(|n| match (2 * n).cmp(&degree) {
                std::cmp::Ordering::Less => a + offset(n),
                std::cmp::Ordering::Equal => 0.5 * (a + b),
                std::cmp::Ordering::Greater => b - offset(degree - n),
            })
            .collect();
        let ortho_weights = (0..=degree)
            .map(|n| if n == 0 || n == degree { 0.5 } else { 1.0 })
            .collect();
        Ok(Self {
            a,
            b,
            degree,
            nodes,
            ortho_weights,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Polynomial degree `N`; the grid has `N + 1` nodes.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Interior nodes `x_1 .. x_{N-1}`.
    pub fn interior_nodes(&self) -> &[f64] {
        &self.nodes[1..self.degree]
    }

    /// `½` at the two endpoints and `1` elsewhere.
    pub fn ortho_weights(&self) -> &[f64] {
        &self.ortho_weights
    }

    /// Maps `x ∈ [a, b]` to the reference variable in `[-1, 1]`.
    pub fn to_reference(&self, x: f64) -> f64 {
        ((2.0 * x - (self.a + self.b)) / (self.b - self.a)).clamp(-1.0, 1.0)
    }

    /// Shifted Chebyshev polynomial `T̄_j` evaluated at node `x_n`.
    pub fn basis_at_node(&self, j: usize, n: usize) -> f64 {
        let n2 = 2 * self.degree;
        // T_j(-cos(πn/N)) = (-1)^j cos(π j n / N)
        let c = cos_table_entry(self.degree, (j * n) % n2);
        if j % 2 == 0 {
            c
        } else {
            -c
        }
    }

    pub fn diff_matrices(&self) -> DiffMatrices {
        let n = self.degree;
        let np1 = n + 1;
        let theta = |i: usize| PI * i as f64 / n as f64;
        let scale = 2.0 / (self.b - self.a);
        let mut first = DMatrix::zeros(np1, np1);
        for i in 0..np1 {
            let ci = if i == 0 || i == n { 2.0 } else { 1.0 };
            for j in 0..np1 {
                if i == j {
                    continue;
                }
                let cj = if j == 0 || j == n { 2.0 } else { 1.0 };
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                // t_i - t_j for t_k = -cos(θ_k), without cancellation
                let dt = 2.0 * (0.5 * (theta(i) + theta(j))).sin() * (0.5 * (theta(i) - theta(j))).sin();
                first[(i, j)] = scale * sign * ci / (cj * dt);
            }
        }
        for i in 0..np1 {
            let mut row: Vec<f64> = (0..np1).filter(|&j| j != i).map(|j| first[(i, j)]).collect();
            row.sort_by(|p, q| p.abs().total_cmp(&q.abs()));
            first[(i, i)] = -row.iter().sum::<f64>();
        }
        let second = &first * &first;
        DiffMatrices { first, second }
    }

    /// Expansion coefficients of the degree-`N` interpolant of `values`.
    pub fn interpolant(&self, values: &[f64]) -> Result<ChebInterpolant> {
        if values.len() != self.len() {
            return Err(Error::ShapeMismatch {
                expected: (self.len(), 1),
                got: (values.len(), 1),
            });
        }
        let coeffs = (0..=self.degree)
            .map(|j| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(n, v)| self.ortho_weights[n] * v * self.basis_at_node(j, n))
                    .sum();
                s / self.gamma(j)
            })
            .collect();
        Ok(ChebInterpolant {
            grid: self.clone(),
            coeffs,
            values: values.to_vec(),
        })
    }

    /// Evaluates the collocation interpolant of `values` at `x`.
    pub fn interp_eval(&self, values: &[f64], x: f64) -> Result<f64> {
        self.interpolant(values)?.eval(x)
    }

    /// Normalisation `γ_j` of the discrete orthogonality relation.
    pub fn gamma(&self, j: usize) -> f64 {
        let n = self.degree as f64;
        if j == 0 || j == self.degree {
            n
        } else {
            0.5 * n
        }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let slack = 4.0 * f64::EPSILON * (self.b - self.a).max(self.a.abs()).max(self.b.abs());
        if x.is_nan() || x < self.a - slack || x > self.b + slack {
            return Err(Error::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        Ok(())
    }

    fn node_index(&self, x: f64) -> Option<usize> {
        self.nodes
            .binary_search_by(|p| p.total_cmp(&x))
            .ok()
    }
}

/// `cos(π m / N)`, evaluated as `sin(π(N − 2m)/(2N))` so that symmetric
/// entries come out exactly antisymmetric and `m = N/2` gives exactly zero.
fn cos_table_entry(degree: usize, m: usize) -> f64 {
    let num = degree as f64 - 2.0 * m as f64;
    (PI * num / (2 * degree) as f64).sin()
}

/// Clenshaw summation of `Σ c_k T_k(t)`.
fn clenshaw(coeffs: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + t * b1 - b2
}

/// Degree-`N` Chebyshev interpolant of nodal data on one axis.
#[derive(Debug, Clone)]
pub struct ChebInterpolant {
    grid: CollocationGrid,
    coeffs: Vec<f64>,
    values: Vec<f64>,
}

impl ChebInterpolant {
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.grid.check_domain(x)?;
        if let Some(n) = self.grid.node_index(x) {
            return Ok(self.values[n]);
        }
        Ok(clenshaw(&self.coeffs, self.grid.to_reference(x)))
    }
}

/// Tensor-product interpolant of nodal data on an `(N+1) × (M+1)` grid.
#[derive(Debug, Clone)]
pub struct TensorInterpolant {
    gx: CollocationGrid,
    gy: CollocationGrid,
    coeffs: DMatrix<f64>,
    values: DMatrix<f64>,
}

impl TensorInterpolant {
    pub fn new(gx: &CollocationGrid, gy: &CollocationGrid, values: &DMatrix<f64>) -> Result<Self> {
        if values.shape() != (gx.len(), gy.len()) {
            return Err(Error::ShapeMismatch {
                expected: (gx.len(), gy.len()),
                got: values.shape(),
            });
        }
        let transform = |g: &CollocationGrid| {
            DMatrix::from_fn(g.len(), g.len(), |j, n| {
                g.ortho_weights[n] * g.basis_at_node(j, n) / g.gamma(j)
            })
        };
        let px = transform(gx);
        let py = transform(gy);
        let coeffs = &px * values * py.transpose();
        Ok(Self {
            gx: gx.clone(),
            gy: gy.clone(),
            coeffs,
            values: values.clone(),
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.gx.check_domain(x)?;
        self.gy.check_domain(y)?;
        if let (Some(i), Some(j)) = (self.gx.node_index(x), self.gy.node_index(y)) {
            return Ok(self.values[(i, j)]);
        }
        let ty = self.gy.to_reference(y);
        let along_x: Vec<f64> = (0..self.gx.len())
            .map(|j| {
                let row: Vec<f64> = self.coeffs.row(j).iter().copied().collect();
                clenshaw(&row, ty)
            })
            .collect();
        Ok(clenshaw(&along_x, self.gx.to_reference(x)))
    }

    /// Values on the tensor grid `xs × ys`, row `p` and column `q` holding
    /// the value at `(xs[p], ys[q])`.
    pub fn eval_grid(&self, xs: &[f64], ys: &[f64]) -> Result<DMatrix<f64>> {
        let basis = |g: &CollocationGrid, pts: &[f64]| -> Result<DMatrix<f64>> {
            for &p in pts {
                g.check_domain(p)?;
            }
            Ok(DMatrix::from_fn(pts.len(), g.len(), |p, j| {
                (j as f64 * g.to_reference(pts[p]).acos()).cos()
            }))
        };
        let tx = basis(&self.gx, xs)?;
        let ty = basis(&self.gy, ys)?;
        let mut out = tx * &self.coeffs * ty.transpose();
        for (p, &x) in xs.iter().enumerate() {
            let Some(i) = self.gx.node_index(x) else { continue };
            for (q, &y) in ys.iter().enumerate() {
                if let Some(j) = self.gy.node_index(y) {
                    out[(p, q)] = self.values[(i, j)];
                }
            }
        }
        Ok(out)
    }
}
