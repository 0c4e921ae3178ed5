//! Adaptive composite Gauss-Legendre quadrature.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess for the i-th root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// P_n(x) and its derivative via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn fixed_rule(f: &impl Fn(f64) -> f64, a: f64, b: f64, xs: &[f64], ws: &[f64]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in xs.iter().zip(ws) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrates f over [a, b], first splitting at the interior `breakpoints`
/// (kinks or removable singularities of the integrand), then bisecting each
/// piece until two successive refinements agree to `tol` relative to the
/// running total.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<f64> {
    let (xs, ws) = gauss_legendre(20);
    let mut edges: Vec<f64> = vec![a];
    for &p in breakpoints {
        if p > a && p < b {
            edges.push(p);
        }
    }
    edges.push(b);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let mut total = 0.0;
    for pair in edges.windows(2) {
        total += adaptive(&f, pair[0], pair[1], tol, 0, &xs, &ws)?;
    }
    Ok(total)
}

fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    xs: &[f64],
    ws: &[f64],
) -> Result<f64> {
    let whole = fixed_rule(f, a, b, xs, ws);
    let mid = 0.5 * (a + b);
    let left = fixed_rule(f, a, mid, xs, ws);
    let right = fixed_rule(f, mid, b, xs, ws);
    let refined = left + right;
    if (refined - whole).abs() <= tol * (1.0 + refined.abs()) {
        return Ok(refined);
    }
    if depth >= 30 {
        return Err(Error::Quadrature(format!(
            "no convergence on [{a}, {b}]: refinement gap {:.3e}",
            (refined - whole).abs()
        )));
    }
    Ok(adaptive(f, a, mid, tol, depth + 1, xs, ws)?
        + adaptive(f, mid, b, tol, depth + 1, xs, ws)?)
}
