//! Gauss-Legendre rules and orthonormal Hermite functions.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Roots are found by Newton iteration on the three-term recurrence,
/// starting from the usual cosine estimates.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
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
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// An `order`-point Gauss-Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(a: f64, b: f64, order: usize) -> Vec<(f64, f64)> {
    let (t, w) = gauss_legendre(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    t.iter().zip(&w).map(|(&ti, &wi)| (mid + half * ti, half * wi)).collect()
}

/// Composite rule: `[a, b]` split into panels no wider than `max_width`,
/// each carrying an `order`-point Gauss-Legendre rule.
pub fn composite_gauss_legendre(a: f64, b: f64, max_width: f64, order: usize) -> Vec<(f64, f64)> {
    if b <= a {
        return Vec::new();
    }
    let panels = ((b - a) / max_width).ceil().max(1.0) as usize;
    let (t, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let mid = lo + 0.5 * h;
        for (&ti, &wi) in t.iter().zip(&w) {
            out.push((mid + 0.5 * h * ti, 0.5 * h * wi));
        }
    }
    out
}

/// Orthonormal Hermite functions `ψ_0(t) … ψ_{n-1}(t)` (unit length scale).
///
/// `ψ_0 = π^{-1/4} e^{-t²/2}`, `ψ_{k+1} = √(2/(k+1)) t ψ_k − √(k/(k+1)) ψ_{k-1}`.
pub fn hermite_functions(n: usize, t: f64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    hermite_functions_into(t, &mut out);
    out
}

pub fn hermite_functions_into(t: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    out[0] = PI.powf(-0.25) * (-0.5 * t * t).exp();
    if n > 1 {
        out[1] = std::f64::consts::SQRT_2 * t * out[0];
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * t * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
}
