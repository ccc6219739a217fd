//! Gauss-Legendre rules, used by the compact-cutoff oscillatory oracle.

use alloc::vec::Vec;
use core::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1],
/// from Newton iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Composite Gauss-Legendre integral of `f` over [a, b] with `panels`
/// equal sub-intervals and an `order`-point rule on each.
pub fn composite<T, F>(a: f64, b: f64, panels: usize, order: usize, zero: T, mut f: F) -> T
where
    T: core::ops::Add<Output = T> + core::ops::Mul<f64, Output = T>,
    F: FnMut(f64) -> T,
{
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = zero;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(&weights) {
            acc = acc + f(mid + 0.5 * h * x) * (0.5 * h * w);
        }
    }
    acc
}
