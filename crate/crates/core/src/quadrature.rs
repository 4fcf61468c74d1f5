//! Gauss-Legendre rules and a globally adaptive integrator built on them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::summation::CompensatedSum;

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_n`, found by Newton's method from the
    /// Chebyshev-like initial guesses `cos(pi (i - 1/4) / (n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-16 {
                    let (_, d) = legendre_with_derivative(n, z);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[m - 1] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = CompensatedSum::new();
        for (x, w) in self.nodes() {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Result of [`adaptive_integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive bisection. Each panel is integrated with a 20-point
/// Gauss-Legendre rule, and its error is estimated by comparing against the
/// sum of the same rule on its two halves. The panel with the largest
/// estimated error is split until the total estimate is below
/// `max(abs_tol, rel_tol * |value|)` or `max_intervals` is reached.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Integral {
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let rule = GaussLegendre::new(20);
    let refine = |a: f64, b: f64| -> Panel {
        let mid = 0.5 * (a + b);
        let whole = rule.integrate(a, b, &f);
        let halves = rule.integrate(a, mid, &f) + rule.integrate(mid, b, &f);
        Panel {
            a,
            b,
            value: halves,
            error: (whole - halves).abs(),
        }
    };
    let mut heap: BinaryHeap<Panel> = breakpoints.windows(2).map(|w| refine(w[0], w[1])).collect();
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || heap.len() >= max_intervals {
            let value = heap.iter().map(|p| p.value).sum::<CompensatedSum>().value();
            return Integral {
                value,
                error_estimate: error,
                intervals: heap.len(),
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(refine(worst.a, mid));
        heap.push(refine(mid, worst.b));
    }
}
