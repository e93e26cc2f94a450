//! Shared numerical kernels: Gauss-Legendre rules and Richardson extrapolation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug)]
pub(crate) struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n starting from the Chebyshev-like initial
    /// guess; accurate to a few ulps for the orders used here (n <= 256).
    fn build(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                    let (p2, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let scale = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + scale * x);
        }
        acc * scale
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached rule lookup; rules are immutable once built and shared freely.
pub(crate) fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss-legendre cache poisoned");
    map.entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::build(n)))
        .clone()
}

/// Richardson extrapolation for sequences g(r_k) with r_k = r_0 · 2^{-k} and
/// an even error expansion g(r) = L + c_1 r² + c_2 r⁴ + ...; returns the
/// highest-order diagonal entry.
pub(crate) fn richardson_even(samples: &[f64]) -> f64 {
    assert!(!samples.is_empty());
    let mut column: Vec<f64> = samples.to_vec();
    let n = column.len();
    for j in 1..n {
        let factor = 4f64.powi(j as i32);
        for k in (j..n).rev() {
            column[k] = (factor * column[k] - column[k - 1]) / (factor - 1.0);
        }
    }
    column[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_nodes_match_closed_forms() {
        let g2 = gauss_legendre(2);
        assert!((g2.nodes[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((g2.weights[0] - 1.0).abs() < 1e-15);
        let g3 = gauss_legendre(3);
        assert!((g3.nodes[2] - (3f64 / 5.0).sqrt()).abs() < 1e-15);
        assert!((g3.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((g3.weights[0] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_exactness() {
        // An n-point rule integrates degree 2n-1 exactly.
        for n in [4usize, 16, 32, 64] {
            let rule = gauss_legendre(n);
            let k = 2 * n - 1;
            let exact = (1.0 - (-1f64).powi(k as i32 + 1)) / (k as f64 + 1.0);
            let quad = rule.integrate(-1.0, 1.0, |x| x.powi(k as i32));
            assert!(
                (quad - exact).abs() < 1e-13,
                "n={n} k={k}: {quad} vs {exact}"
            );
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1usize, 2, 5, 31, 64, 96, 256] {
            let rule = gauss_legendre(n);
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}: {total}");
        }
    }

    #[test]
    fn smooth_integral_converges_spectrally() {
        let rule = gauss_legendre(48);
        let value = rule.integrate(0.0, 1.0, |s| (10.0 * s).cosh());
        let exact = 10f64.sinh() / 10.0;
        assert!((value - exact).abs() / exact < 1e-14);
    }

    #[test]
    fn richardson_recovers_squared_limit() {
        // g(r) = 3 + r² - 2 r⁴ at r = 0.8 · 2^{-k}.
        let samples: Vec<f64> = (0..6)
            .map(|k| {
                let r = 0.8 * 0.5f64.powi(k);
                3.0 + r * r - 2.0 * r.powi(4)
            })
            .collect();
        let limit = richardson_even(&samples);
        assert!((limit - 3.0).abs() < 1e-12, "{limit}");
    }
}
