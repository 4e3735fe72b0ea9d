//! Deterministic quadrature: Gauss–Legendre nodes and composite panels.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on
/// the Legendre recurrence. Good to ~1e-15 for the orders used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0_f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed Gauss–Legendre rule mapped onto an interval.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_a^b f(x) dx.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Composite integral over consecutive panels defined by breakpoints.
    pub fn integrate_panels<F: FnMut(f64) -> f64>(&self, breakpoints: &[f64], mut f: F) -> f64 {
        let mut acc = 0.0;
        for pair in breakpoints.windows(2) {
            if pair[1] > pair[0] {
                acc += self.integrate(pair[0], pair[1], &mut f);
            }
        }
        acc
    }
}

/// Deduplicated, sorted breakpoint list clipped to [lo, hi],
/// with lo and hi always included.
pub fn panel_breaks(lo: f64, hi: f64, interior: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut interior: Vec<f64> = interior
        .iter()
        .copied()
        .filter(|&x| x > lo && x < hi)
        .collect();
    interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for x in interior {
        if x - pts.last().unwrap() > 1e-12 {
            pts.push(x);
        }
    }
    if hi - pts.last().unwrap() > 1e-12 {
        pts.push(hi);
    } else {
        *pts.last_mut().unwrap() = hi;
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        // GL-n integrates degree 2n−1 exactly
        let rule = GaussRule::new(8);
        let exact = 2.0 / 16.0 + 2.0 / 4.0; // ∫₋₁¹ x¹⁴+x²·... pick simple: x¹⁴ and x²
        let got = rule.integrate(-1.0, 1.0, |x| x.powi(14)) + rule.integrate(-1.0, 1.0, |x| x * x);
        let expect = 2.0 / 15.0 + 2.0 / 3.0;
        assert!((got - expect).abs() < 1e-14, "{got} vs {expect}");
        let _ = exact;
    }

    #[test]
    fn gaussian_tail() {
        let rule = GaussRule::new(48);
        let breaks = panel_breaks(0.0, 12.0, &[1.0, 3.0, 6.0]);
        let got = rule.integrate_panels(&breaks, |x| (-x * x).exp());
        let expect = 0.5 * PI.sqrt();
        assert!((got - expect).abs() < 1e-13);
    }

    #[test]
    fn breakpoints_are_clipped_and_sorted() {
        let b = panel_breaks(0.0, 5.0, &[7.0, 3.0, -1.0, 1.0, 3.0]);
        assert_eq!(b, vec![0.0, 1.0, 3.0, 5.0]);
    }
}
