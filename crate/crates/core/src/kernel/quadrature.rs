use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    GaussLegendreOnInterval,
    TanhSinh,
    TrapezoidUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(BeamError::InvalidParameter {
                name: "interval",
                reason: format!("bounds must be finite and ordered, got [{lo}, {hi}]"),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn symmetric(half_width: f64) -> Result<Self> {
        Self::new(-half_width, half_width)
    }

    fn half_length(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    fn midpoint(&self) -> f64 {
        0.5 * (self.hi + self.lo)
    }
}

/// Quadrature scheme, node count per axis and the (per-axis) domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    pub node_count: usize,
    pub domain: Vec<Interval>,
}

impl QuadratureSpec {
    pub fn new(scheme: QuadratureScheme, node_count: usize, domain: Vec<Interval>) -> Result<Self> {
        if node_count < 2 {
            return Err(BeamError::InvalidParameter {
                name: "node_count",
                reason: format!("need at least 2 nodes, got {node_count}"),
            });
        }
        if domain.is_empty() {
            return Err(BeamError::InvalidParameter {
                name: "domain",
                reason: "at least one interval is required".into(),
            });
        }
        for iv in &domain {
            Interval::new(iv.lo, iv.hi)?;
        }
        Ok(Self {
            scheme,
            node_count,
            domain,
        })
    }

    /// Gauss-Legendre on a square `[-half_width, half_width]^2`.
    pub fn gauss_legendre_square(node_count: usize, half_width: f64) -> Result<Self> {
        let iv = Interval::symmetric(half_width)?;
        Self::new(QuadratureScheme::GaussLegendreOnInterval, node_count, vec![iv, iv])
    }

    pub fn with_node_count(&self, node_count: usize) -> Result<Self> {
        Self::new(self.scheme, node_count, self.domain.clone())
    }

    fn axis(&self, i: usize) -> Interval {
        self.domain[i.min(self.domain.len() - 1)]
    }
}

/// Nodes and weights on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(scheme: QuadratureScheme, node_count: usize) -> Self {
        match scheme {
            QuadratureScheme::GaussLegendreOnInterval => gauss_legendre(node_count),
            QuadratureScheme::TanhSinh => tanh_sinh(node_count),
            QuadratureScheme::TrapezoidUniform => trapezoid(node_count),
        }
    }

    /// Nodes and weights mapped onto `iv`.
    pub fn mapped(&self, iv: Interval) -> (Vec<f64>, Vec<f64>) {
        let (c, h) = (iv.midpoint(), iv.half_length());
        let x = self.nodes.iter().map(|t| c + h * t).collect();
        let w = self.weights.iter().map(|w| h * w).collect();
        (x, w)
    }
}

fn gauss_legendre(n: usize) -> QuadratureRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn tanh_sinh(n: usize) -> QuadratureRule {
    const T_MAX: f64 = 3.2;
    let h = 2.0 * T_MAX / (n - 1) as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let t = -T_MAX + k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        nodes.push(u.tanh());
        weights.push(h * FRAC_PI_2 * t.cosh() / (cu * cu));
    }
    QuadratureRule { nodes, weights }
}

fn trapezoid(n: usize) -> QuadratureRule {
    let h = 2.0 / (n - 1) as f64;
    let nodes = (0..n).map(|i| -1.0 + i as f64 * h).collect();
    let weights = (0..n)
        .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
        .collect();
    QuadratureRule { nodes, weights }
}

/// Tensor-product quadrature of `f(x1, x2)` over the first two axes of the
/// spec's domain (a single interval is reused for both axes).
pub fn integrate_2d<F, C>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64, f64) -> C,
    C: Into<Complex64>,
{
    let rule = QuadratureRule::new(spec.scheme, spec.node_count);
    let (x1s, w1s) = rule.mapped(spec.axis(0));
    let (x2s, w2s) = rule.mapped(spec.axis(1));
    let mut total = Complex64::new(0.0, 0.0);
    for (x1, w1) in x1s.iter().zip(&w1s) {
        let mut row = Complex64::new(0.0, 0.0);
        for (x2, w2) in x2s.iter().zip(&w2s) {
            let v: Complex64 = f(*x1, *x2).into();
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(BeamError::NonFiniteIntegrand { x1: *x1, x2: *x2 });
            }
            row += v * w2;
        }
        total += row * w1;
    }
    Ok(total)
}

/// One-dimensional quadrature over the first axis of the spec's domain.
pub fn integrate_1d<F, C>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> C,
    C: Into<Complex64>,
{
    let rule = QuadratureRule::new(spec.scheme, spec.node_count);
    let (xs, ws) = rule.mapped(spec.axis(0));
    let mut total = Complex64::new(0.0, 0.0);
    for (x, w) in xs.iter().zip(&ws) {
        let v: Complex64 = f(*x).into();
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(BeamError::NonFiniteIntegrand { x1: *x, x2: 0.0 });
        }
        total += v * w;
    }
    Ok(total)
}
