//! Reference values computed independently of `lepage-core`: adaptive
//! quadrature of the defining integrals and textbook kernel formulas. Used
//! by the test suites and by the `verify` command.

use std::f64::consts::PI;

/// Adaptive tanh-sinh quadrature of `f` on `[a, b]`; bisects while the
/// error estimate exceeds `tol` (absolute) and the depth allows.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    integrate_depth(f, a, b, tol, 0)
}

fn integrate_depth<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let out = quadrature::integrate(f, a, b, tol);
    if out.error_estimate <= tol.max(4.0 * f64::EPSILON * out.integral.abs()) || depth >= 12 {
        return out.integral;
    }
    let m = 0.5 * (a + b);
    integrate_depth(f, a, m, 0.5 * tol, depth + 1) + integrate_depth(f, m, b, 0.5 * tol, depth + 1)
}

/// `∫_a^∞ f` through `x = a + u/(1-u)`.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> f64 {
    let g = |u: f64| {
        let w = 1.0 - u;
        if w <= 0.0 {
            return 0.0;
        }
        f(a + u / w) / (w * w)
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// Limit of an alternating series from its partial sums by repeated
/// averaging of neighbours.
pub fn accelerate(partial: &[f64]) -> f64 {
    let mut row = partial.to_vec();
    while row.len() > 1 {
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    row[0]
}

/// `∫_0^∞ sin x / x^α dx` for `0 < α < 2`: the Taylor series of `sin` on
/// `[0, 1]`, then quadrature over half periods with averaging of the
/// alternating partial sums.
pub fn sine_integral(alpha: f64) -> f64 {
    let mut head = 0.0;
    let mut fact = 1.0;
    for k in 0..20 {
        if k > 0 {
            fact *= ((2 * k) * (2 * k + 1)) as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        head += sign / (fact * (2.0 * k as f64 + 2.0 - alpha));
    }
    let f = |x: f64| x.sin() * x.powf(-alpha);
    let mut partial = Vec::with_capacity(64);
    let mut s = head + integrate(&f, 1.0, PI, 1e-15);
    partial.push(s);
    for k in 1..64 {
        s += integrate(&f, k as f64 * PI, (k + 1) as f64 * PI, 1e-15);
        partial.push(s);
    }
    accelerate(&partial[24..])
}

/// `C_α = 1 / ∫_0^∞ sin x / x^α dx`.
pub fn stable_constant(alpha: f64) -> f64 {
    1.0 / sine_integral(alpha)
}

/// Surface area of `S^{d-1}` from `Γ`.
pub fn sphere_area(dim: usize) -> f64 {
    2.0 * PI.powf(dim as f64 / 2.0) / libm::tgamma(dim as f64 / 2.0)
}

/// `∫_0^b f` through `s = b v^m`, which smooths an integrable power
/// singularity `f(s) ~ s^{e}` at the origin once `m (e + 1) ≥ 2`.
pub fn integrate_power_origin<F: Fn(f64) -> f64>(f: &F, b: f64, m: f64, tol: f64) -> f64 {
    let g = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let y = f(b * v.powf(m)) * b * m * v.powf(m - 1.0);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// `∫_a^∞ f` through `x = a v^{-m}`, which removes the endpoint singularity
/// of a power tail `f(x) ~ x^{-1-β}` once `m β ≥ 1`.
pub fn integrate_power_tail<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, tol: f64) -> f64 {
    let g = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let x = a * v.powf(-m);
        let jac = a * m * v.powf(-m - 1.0);
        let y = f(x) * jac;
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// `∫_{R^d} g(|x|) dx` for a radial function `g` whose tail decays at least
/// like `|x|^{-d-β}`.
pub fn radial_integral<F: Fn(f64) -> f64>(g: &F, dim: usize, beta: f64, tol: f64) -> f64 {
    let h = |r: f64| g(r) * r.powi(dim as i32 - 1);
    let m = (2.0 / beta).ceil().max(1.0);
    sphere_area(dim) * (integrate(&h, 0.0, 1.0, tol) + integrate_power_tail(&h, 1.0, m, tol))
}

/// Normalizer `c` with `∫ (c ψ)^α = 1` for `ψ(r) = 1 ∧ r^{-δ}`, by quadrature.
pub fn weight_constant(alpha: f64, delta: f64, dim: usize) -> f64 {
    let psi_a = |r: f64| if r <= 1.0 { 1.0 } else { r.powf(-delta * alpha) };
    radial_integral(&psi_a, dim, delta * alpha - dim as f64, 1e-13).powf(-1.0 / alpha)
}

/// `(2πt)^{-d/2} exp(-|x|²/(2t))`, zero for `t ≤ 0`.
pub fn heat_kernel(t: f64, x: &[f64]) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (2.0 * PI * t).powf(-(x.len() as f64) / 2.0) * (-r2 / (2.0 * t)).exp()
}

/// `½ 1{|x|<t}` in one dimension, `(2π)^{-1} (t²-|x|²)^{-1/2} 1{|x|<t}` in two.
pub fn wave_kernel(t: f64, x: &[f64]) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if r2 >= t * t {
        return 0.0;
    }
    match x.len() {
        1 => 0.5,
        2 => 1.0 / (2.0 * PI * (t * t - r2).sqrt()),
        d => panic!("no wave kernel function in dimension {d}"),
    }
}

/// `∫_{R^d} G_s^p(y) dy` for the heat kernel, radially with `r = √s z`.
pub fn heat_spatial_lp(p: f64, dim: usize, s: f64) -> f64 {
    let d = dim as f64;
    let g = |z: f64| (2.0 * PI).powf(-d * p / 2.0) * (-p * z * z / 2.0).exp();
    s.powf(d * (1.0 - p) / 2.0) * radial_integral(&g, dim, 1.0, 1e-14)
}

/// `∫_0^t ∫_{R^d} G_s^p(y) dy ds` for the heat kernel.
pub fn heat_space_time_lp(p: f64, dim: usize, t: f64) -> f64 {
    let spatial = heat_spatial_lp(p, dim, 1.0);
    let d = dim as f64;
    let e = d * (1.0 - p) / 2.0;
    let f = |s: f64| s.powf(e);
    spatial * integrate_power_origin(&f, t, (2.0 / (e + 1.0)).ceil().max(1.0), 1e-14)
}

/// `∫_0^t ∫ G_s^p(y) dy ds` for the wave kernel, `d ∈ {1, 2}`.
pub fn wave_space_time_lp(p: f64, dim: usize, t: f64) -> f64 {
    match dim {
        1 => {
            let inner = |s: f64| integrate(&|_y: f64| 0.5f64.powf(p), -s, s, 1e-15);
            integrate(&inner, 0.0, t, 1e-14)
        }
        2 => {
            // r = s sin θ
            // φ = π/2 - θ leaves the singular factor sin^{1-p} φ at the origin
            let angular = integrate_power_origin(
                &|ph: f64| ph.cos() * ph.sin().powf(1.0 - p),
                PI / 2.0,
                (2.0 / (2.0 - p)).ceil(),
                1e-15,
            );
            let radial = |s: f64| s.powf(2.0 - p);
            2.0 * PI * (2.0 * PI).powf(-p) * angular * integrate_power_origin(&radial, t, 1.0, 1e-14)
        }
        d => panic!("no wave kernel function in dimension {d}"),
    }
}

/// `∫_0^t ∫_R G_{t-s}^p(x-y) |y|^γ dy ds` for the one-dimensional heat kernel.
pub fn heat_moment_1d(gamma: f64, p: f64, t: f64, x: f64) -> f64 {
    let inner = |s: f64| {
        // y = x + √s z; the weight |y|^γ has a kink at z = -x/√s
        let sd = s.sqrt();
        let g = |z: f64| heat_kernel(s, &[sd * z]).powf(p) * (x + sd * z).abs().powf(gamma) * sd;
        let kink = -x / sd;
        if kink > -40.0 && kink < 40.0 {
            integrate(&g, -40.0, kink, 1e-13) + integrate(&g, kink, 40.0, 1e-13)
        } else {
            integrate(&g, -40.0, 40.0, 1e-13)
        }
    };
    integrate_power_origin(&inner, t, 4.0, 1e-12)
}

/// Antiderivative of `w(y) = (c (1 ∧ |y|^{-δ}))^{q}` on `R`, zero at the origin.
fn power_weight_antiderivative(c: f64, delta: f64, q: f64, y: f64) -> f64 {
    let a = y.abs();
    let cq = c.powf(q);
    let v = if a <= 1.0 {
        cq * a
    } else {
        let e = 1.0 - delta * q;
        let tail = if e.abs() < 1e-14 { a.ln() } else { (a.powf(e) - 1.0) / e };
        cq * (1.0 + tail)
    };
    v.copysign(y)
}

/// `K_2^(p)(t, x)` for the one-dimensional wave kernel by nested quadrature,
/// with `φ = c (1 ∧ |y|^{-δ})` and `c` from [`weight_constant`].
pub fn wave1_k2(alpha: f64, delta: f64, p: f64, t: f64, x: f64) -> f64 {
    let c = weight_constant(alpha, delta, 1);
    let q = alpha - p;
    let w = |y: f64| {
        let a = y.abs();
        c.powf(q) * if a <= 1.0 { 1.0 } else { a.powf(-delta * q) }
    };
    let big_w = |y: f64| power_weight_antiderivative(c, delta, q, y);
    let amp = 0.5f64.powf(2.0 * p);
    // h1 = t2 - t1, h2 = t - t2; x2 within h2 of x, x1 within h1 of x2
    let over_h1 = |h2: f64| {
        let over_x2 = |h1: f64| {
            let g = |x2: f64| w(x2) * (big_w(x2 + h1) - big_w(x2 - h1));
            let mut pts = vec![x - h2, x + h2];
            for knot in [-1.0, 1.0] {
                if knot > x - h2 && knot < x + h2 {
                    pts.push(knot);
                }
            }
            pts.sort_by(f64::total_cmp);
            pts.windows(2).map(|s| integrate(&g, s[0], s[1], 1e-11)).sum::<f64>()
        };
        integrate(&over_x2, 0.0, t - h2, 1e-10)
    };
    amp * integrate(&over_h1, 0.0, t, 1e-9)
}

/// Kolmogorov–Smirnov distance of `samples` to the uniform law on `[0, 1]`.
pub fn ks_uniform(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &v)| (v - i as f64 / n).max((i + 1) as f64 / n - v))
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the KS statistic for `n` samples.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}
