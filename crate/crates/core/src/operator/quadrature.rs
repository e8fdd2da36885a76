//! Composite Gauss–Legendre quadrature of `∫₀^π u_m (-i d/dx)^k u_n dx`.
//!
//! The derivative is taken analytically, so the integrand is a product of a
//! sine and a sine or cosine. This is an independent check on the closed forms
//! in the parent module and never calls them.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::basis::BasisIndex;
use crate::summation::NeumaierSum;

const RULE_POINTS: usize = 20;
const MIN_PANELS: usize = 64;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
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
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(RULE_POINTS))
}

/// Integrates `f` over `[lo, hi]` with `panels` equal Gauss–Legendre panels.
pub fn composite<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let (nodes, weights) = rule();
    let h = (hi - lo) / panels as f64;
    let mut acc = NeumaierSum::new();
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            acc.add(w * f(mid + 0.5 * h * x));
        }
    }
    0.5 * h * acc.value()
}

/// `∫₀^π u_m (-i d/dx)^k u_n dx` as a complex number.
///
/// The real part carries even powers (e.g. `P²`), the imaginary part is the
/// i-factored value for odd powers.
pub fn quadrature_entry(m: BasisIndex, n: BasisIndex, derivative_order: u32) -> Complex64 {
    let (mf, nf) = (m.get() as f64, n.get() as f64);
    let k = derivative_order;
    let scale = nf.powi(k as i32) * 2.0 / PI;
    // d^k/dx^k sin(nx) = n^k · sin(nx + kπ/2)
    let shifted = move |x: f64| match k % 4 {
        0 => (nf * x).sin(),
        1 => (nf * x).cos(),
        2 => -(nf * x).sin(),
        _ => -(nf * x).cos(),
    };
    let panels = MIN_PANELS.max(4 * (m.get() + n.get()));
    let integral = scale * composite(|x| (mf * x).sin() * shifted(x), 0.0, PI, panels);
    // (-i)^k
    let phase = match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    phase * integral
}
