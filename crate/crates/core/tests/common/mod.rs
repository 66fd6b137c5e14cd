//! Reference implementations shared by the integration tests. Nothing here
//! calls into the crate's numerics.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

/// Chebyshev–Gauss–Lobatto nodes on `[a, b]`, ascending, from the cosine
/// formula.
pub fn cgl_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            let xi = -(PI * j as f64 / n as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * xi
        })
        .collect()
}

/// Differentiation matrix of the interpolating polynomial through arbitrary
/// distinct nodes, with barycentric weights from direct products.
pub fn lagrange_diff_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    let w: Vec<f64> = (0..n)
        .map(|j| {
            let p: f64 = (0..n).filter(|&k| k != j).map(|k| nodes[j] - nodes[k]).product();
            1.0 / p
        })
        .collect();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[(i, j)] = w[j] / w[i] / (nodes[i] - nodes[j]);
            }
        }
        d[(i, i)] = -(0..n).filter(|&j| j != i).map(|j| d[(i, j)]).sum::<f64>();
    }
    d
}

/// Interior rows and columns of a full-grid matrix.
pub fn interior(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows() - 1;
    m.view((1, 1), (n - 1, n - 1)).into_owned()
}

/// `u_t = ε u_xx − u u_x` on interior nodes with zero Dirichlet data.
pub struct Burgers1d {
    pub eps: f64,
    pub d1: DMatrix<f64>,
    pub d2: DMatrix<f64>,
}

impl Burgers1d {
    pub fn new(eps: f64, n: usize) -> Self {
        let d = lagrange_diff_matrix(&cgl_nodes(0.0, 1.0, n));
        let d2 = &d * &d;
        Self {
            eps,
            d1: interior(&d),
            d2: interior(&d2),
        }
    }

    pub fn rhs(&self, u: &DVector<f64>) -> DVector<f64> {
        let ux = &self.d1 * u;
        self.eps * (&self.d2 * u) - u.component_mul(&ux)
    }
}

/// Classical fourth-order Runge–Kutta step.
pub fn rk4_step(f: &impl Fn(&DVector<f64>) -> DVector<f64>, u: &DVector<f64>, h: f64) -> DVector<f64> {
    let k1 = f(u);
    let k2 = f(&(u + 0.5 * h * &k1));
    let k3 = f(&(u + 0.5 * h * &k2));
    let k4 = f(&(u + h * &k3));
    u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Finite-difference weights for derivatives `0..=max_order` at `x0` from
/// samples at `xs`; `w[m][j]` multiplies `f(xs[j])` for the `m`-th
/// derivative.
pub fn fornberg_weights(x0: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}

/// Deterministic generator for test inputs.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// `max |a − b| / max |b|`.
pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let num = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let den = b.iter().map(|y| y.abs()).fold(0.0, f64::max);
    num / den
}
