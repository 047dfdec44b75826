//! Closed-form constants and feasibility checks for relation collection,
//! linear algebra and descent. All values are leading-order asymptotics.

/// Natural log of `L(α, c) = exp(c·(g log q)^α·(log(g log q))^{1−α})`.
pub fn ln_subexp_l(alpha: f64, c: f64, q: f64, g: f64) -> f64 {
    let s = g * q.ln();
    c * s.powf(alpha) * s.ln().powf(1.0 - alpha)
}

pub fn subexp_l(alpha: f64, c: f64, q: f64, g: f64) -> f64 {
    ln_subexp_l(alpha, c, q, g).exp()
}

/// `M = log_q(g log q)`.
pub fn big_m(q: f64, g: f64) -> f64 {
    (g * q.ln()).ln() / q.ln()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rectangle {
    pub b: f64,
    pub c: f64,
    pub nu: f64,
    pub delta: f64,
}

impl Rectangle {
    /// Residuals of `κνδ − κ(ν+δ)/(3b) = b` and `κνδ = 2b`.
    pub fn residuals(&self, kappa: f64) -> (f64, f64) {
        let knd = kappa * self.nu * self.delta;
        (knd - kappa * (self.nu + self.delta) / (3.0 * self.b) - self.b, knd - 2.0 * self.b)
    }
}

/// `b = ∛(8κ/9)`, `c = 2b`, `ν = δ = ∛(8/(3κ))`.
pub fn optimize_rectangle(kappa: f64) -> Rectangle {
    let b = (8.0 * kappa / 9.0).cbrt();
    let nu = (2.0 * b / kappa).sqrt();
    Rectangle { b, c: 2.0 * b, nu, delta: nu }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub b: f64,
    pub c: f64,
    pub lambda: f64,
}

impl Triangle {
    /// Residuals of `b = λ(3bλ − 4)/(12b)` and `λ²/4 = 2b`.
    pub fn residuals(&self) -> (f64, f64) {
        let (b, l) = (self.b, self.lambda);
        (l * (3.0 * b * l - 4.0) / (12.0 * b) - b, l * l / 4.0 - 2.0 * b)
    }
}

/// Weighted-degree search space for `κ = 2`: `b = ∛(8/9)`, `λ = ∛(64/3)`, `c = 2b`.
pub fn optimize_triangle() -> Triangle {
    let b = (8.0f64 / 9.0).cbrt();
    Triangle { b, c: 2.0 * b, lambda: (64.0f64 / 3.0).cbrt() }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DescentConstants {
    pub kappa: f64,
    pub e: f64,
    pub chi: f64,
    pub c_inf: f64,
}

/// `χ = 2√κ/(3e)` and the fixed point `c_∞ = χ/2·(χ + √(χ² + 4e))`.
pub fn descent_constants(kappa: f64, e: f64) -> DescentConstants {
    let chi = 2.0 * kappa.sqrt() / (3.0 * e);
    let c_inf = chi / 2.0 * (chi + (chi * chi + 4.0 * e).sqrt());
    DescentConstants { kappa, e, chi, c_inf }
}

/// `τ_i = 1/(3·2^{i−1})` for `i >= 1`.
pub fn tau(i: u32) -> f64 {
    1.0 / (3.0 * 2f64.powi(i as i32 - 1))
}

/// `σ = √((c + e)/κ)`.
pub fn sigma(kappa: f64, c: f64, e: f64) -> f64 {
    ((c + e) / kappa).sqrt()
}

/// `(τ_i, c_i)` for `i = 1..=levels`, from `c_0` via `c_i = χ·√(c_{i−1} + e)`.
pub fn descent_schedule(kappa: f64, e: f64, c0: f64, levels: usize) -> Vec<(f64, f64)> {
    let chi = descent_constants(kappa, e).chi;
    let mut c = c0;
    (1..=levels as u32)
        .map(|i| {
            c = chi * (c + e).sqrt();
            (tau(i), c)
        })
        .collect()
}

/// One step of the descent recurrence with an explicit `σ`:
/// `c' = ((c + e)/σ + σκ)/(3e)`.
pub fn descent_step_sigma(kappa: f64, e: f64, c: f64, sigma: f64) -> f64 {
    ((c + e) / sigma + sigma * kappa) / (3.0 * e)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessBound {
    pub u: f64,
    pub gamma: f64,
    /// `3 log_q(14g + 4) <= μ`
    pub mu_lower_ok: bool,
    /// `μ <= ν^ε`
    pub mu_upper_ok: bool,
    /// `u >= 2 log(g + 1)`
    pub u_ok: bool,
    /// Natural log of the lower bound on `ψ(ν, μ)/q^ν`; `None` when `u <= 1`.
    pub ln_bound: Option<f64>,
}

impl SmoothnessBound {
    pub fn hypotheses_hold(&self) -> bool {
        self.mu_lower_ok && self.mu_upper_ok && self.u_ok
    }

    /// The bound is only a heuristic figure when a hypothesis fails.
    pub fn advisory_only(&self) -> bool {
        !self.hypotheses_hold()
    }

    pub fn bound(&self) -> Option<f64> {
        self.ln_bound.map(f64::exp)
    }
}

/// `ψ(ν, μ)/q^ν >= exp(−u log u (1 + (log log u + γ)/log u))`, `γ = 3/(1 − ε)`.
pub fn smoothness_bound(nu: f64, mu: f64, g: f64, q: f64, eps: f64) -> SmoothnessBound {
    let u = nu / mu;
    let gamma = 3.0 / (1.0 - eps);
    let ln_bound = if u > 1.0 { Some(-u * (u.ln() + u.ln().ln() + gamma)) } else { None };
    SmoothnessBound {
        u,
        gamma,
        mu_lower_ok: 3.0 * (14.0 * g + 4.0).ln() / q.ln() <= mu,
        mu_upper_ok: mu <= nu.powf(eps),
        u_ok: u >= 2.0 * (g + 1.0).ln(),
        ln_bound,
    }
}

/// Explicit form of the `o(1)` in the smoothness proposition: `k·log log(g log q)/log(g log q)`.
pub fn prop1_correction(q: f64, g: f64, k: f64) -> f64 {
    let s = (g * q.ln()).ln();
    k * s.ln() / s
}

/// Positive root of `3b² − (2/ν*)b − κν* = 0`, the relation-collection system
/// with `ν` replaced by `ν*`.
pub fn limit_b_for(kappa: f64, nu_star: f64) -> f64 {
    let p = 2.0 / nu_star;
    (p + (p * p + 12.0 * kappa * nu_star).sqrt()) / 6.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitCase {
    pub lambda: f64,
    pub nu_star: f64,
    pub b: f64,
    pub delta: f64,
    pub e: f64,
}

/// Fixed point of the descent recurrence with `σ = max(√((c+e)/κ), 1/λ)`.
pub fn limit_c_inf(kappa: f64, e: f64, lambda: f64) -> f64 {
    let mut c = 1.0;
    for _ in 0..10_000 {
        let s = sigma(kappa, c, e).max(1.0 / lambda);
        let next = descent_step_sigma(kappa, e, c, s);
        if (next - c).abs() < 1e-14 * next.max(1.0) {
            return next;
        }
        c = next;
    }
    c
}

/// Constants when `n/(g/M)^{1/3}` tends to a finite `λ`: `ν* = k/λ` over integer
/// `k >= 1` minimizing `b`, `δ = 2b/(κν*)`, and `e` with `c_∞(e) = b`.
pub fn limit_case(kappa: f64, lambda: f64) -> LimitCase {
    let optimum = optimize_rectangle(kappa).nu;
    let k0 = (optimum * lambda).ceil().max(1.0);
    let mut best: Option<(f64, f64)> = None;
    for k in [k0 - 1.0, k0, k0 + 1.0] {
        if k < 1.0 {
            continue;
        }
        let nu_star = k / lambda;
        let b = limit_b_for(kappa, nu_star);
        if best.is_none_or(|(bb, _)| b < bb) {
            best = Some((b, nu_star));
        }
    }
    let (b, nu_star) = best.unwrap();
    let delta = 2.0 * b / (kappa * nu_star);
    // c_∞ decreases in e
    let (mut lo, mut hi) = (1e-9, 1.0);
    while limit_c_inf(kappa, hi, lambda) > b {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if limit_c_inf(kappa, mid, lambda) > b {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    LimitCase { lambda, nu_star, b, delta, e: 0.5 * (lo + hi) }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime {
    /// `n, d ≫ (g/M)^{1/3}`.
    Rectangle,
    /// `min(n, d) ≈ λ·(g/M)^{1/3}`.
    Limit { lambda: f64 },
    /// `min(n, d) ≈ (g/M)^α` with `α < 1/3`; complexity `L((1−α)/2)`.
    Subcritical { alpha: f64, exponent: f64 },
}

/// `λ` at or above this is treated as the asymptotic rectangle regime.
pub const RECTANGLE_LAMBDA: f64 = 4.0;
/// `λ` below this is treated as subcritical.
pub const SUBCRITICAL_LAMBDA: f64 = 1.0;

#[derive(Clone, Debug, PartialEq)]
pub struct PlannerParams {
    pub q: f64,
    pub g: f64,
    pub n: f64,
    pub d: f64,
    pub kappa: f64,
    pub m: f64,
}

impl PlannerParams {
    pub fn new(q: u64, g: usize, n: usize, d: usize) -> Self {
        let (q, g, n, d) = (q as f64, g as f64, n as f64, d as f64);
        PlannerParams { q, g, n, d, kappa: n * d / g, m: big_m(q, g) }
    }

    /// `(g/M)^{1/3}`
    pub fn scale(&self) -> f64 {
        (self.g / self.m).cbrt()
    }

    pub fn lambda(&self) -> f64 {
        self.n.min(self.d) / self.scale()
    }

    /// Largest `ρ` with `g >= (log q)^ρ`.
    pub fn rho(&self) -> f64 {
        self.g.ln() / self.q.ln().ln()
    }

    pub fn regime(&self) -> Regime {
        let lambda = self.lambda();
        if lambda >= RECTANGLE_LAMBDA {
            Regime::Rectangle
        } else if lambda >= SUBCRITICAL_LAMBDA {
            Regime::Limit { lambda }
        } else {
            let g_over_m = self.g / self.m;
            let alpha = if g_over_m > 1.0 { (self.n.min(self.d).ln() / g_over_m.ln()).clamp(0.0, 1.0 / 3.0) } else { 0.0 };
            Regime::Subcritical { alpha, exponent: (1.0 - alpha) / 2.0 }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    /// `κ_user − nd/g`; nonnegative when `nd/g <= κ`.
    pub kappa_margin: f64,
    /// `λ − RECTANGLE_LAMBDA` (the divergence condition is asymptotic).
    pub lambda_margin: f64,
    /// `ρ − 2` for `g >= (log q)^ρ`.
    pub rho_margin: f64,
    /// `ρ − (1−α)/(α−β)` with `(α, β) = (2/3, 1/3)`.
    pub prop1_margin: f64,
    /// `ρ − (1−β)/β` with `β = 1/3`.
    pub prop2_margin: f64,
    pub regime: Regime,
}

pub fn feasibility(p: &PlannerParams, kappa_user: f64) -> Feasibility {
    let rho = p.rho();
    let (alpha, beta) = (2.0 / 3.0, 1.0 / 3.0);
    Feasibility {
        kappa_margin: kappa_user - p.kappa,
        lambda_margin: p.lambda() - RECTANGLE_LAMBDA,
        rho_margin: rho - 2.0,
        prop1_margin: rho - (1.0 - alpha) / (alpha - beta),
        prop2_margin: rho - (1.0 - beta) / beta,
        regime: p.regime(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subexp_endpoints() {
        let (q, g) = (31.0, 3.0);
        assert!((ln_subexp_l(1.0, 2.0, q, g) - 2.0 * g * f64::ln(q)).abs() < 1e-12);
        assert!((ln_subexp_l(0.0, 2.0, q, g) - 2.0 * (g * f64::ln(q)).ln()).abs() < 1e-12);
        let m = big_m(q, g);
        let alt = (g * q.ln()).log(q);
        assert!((m - alt).abs() < 1e-12);
        assert!((m - 0.67918).abs() < 1e-4);
    }

    #[test]
    fn rectangle_constants() {
        let r = optimize_rectangle(2.0);
        assert!((r.b - (16.0f64 / 9.0).cbrt()).abs() < 1e-12);
        assert!((r.c - 2.4228).abs() < 1e-4);
        assert!((r.nu - (4.0f64 / 3.0).cbrt()).abs() < 1e-12);
        let (e6, e7) = r.residuals(2.0);
        assert!(e6.abs() < 1e-12 && e7.abs() < 1e-12);
        assert!((optimize_rectangle(9.0 / 8.0).b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_constants() {
        let t = optimize_triangle();
        assert!((t.c - 1.9230).abs() < 1e-4);
        assert!((t.lambda - 2.7734).abs() < 1e-4);
        assert!(t.c < optimize_rectangle(2.0).c);
        let (a, b) = t.residuals();
        assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
    }

    #[test]
    fn descent_fixed_point() {
        for kappa in [0.5, 1.0, 2.0, 4.0] {
            let b = optimize_rectangle(kappa).b;
            let dc = descent_constants(kappa, b);
            assert!((dc.c_inf - b).abs() < 1e-9);
            let s = descent_schedule(kappa, b, 1.0, 50);
            assert!((s[49].1 - dc.c_inf).abs() < 1e-6);
        }
        let b = optimize_rectangle(2.0).b;
        let s = descent_schedule(2.0, b, 1.0, 2);
        assert!((s[0].1 - 1.15734).abs() < 1e-4);
        assert_eq!((s[0].0, s[1].0), (1.0 / 3.0, 1.0 / 6.0));
    }

    #[test]
    fn theorem1_example() {
        let s = smoothness_bound(20.0, 2.0, 3.0, 31.0, 0.5);
        assert_eq!(s.u, 10.0);
        assert_eq!(s.gamma, 6.0);
        let expect = -10.0 * 10f64.ln() * (1.0 + (10f64.ln().ln() + 6.0) / 10f64.ln());
        assert!((s.ln_bound.unwrap() - expect).abs() < 1e-9);
        assert!((expect + 91.37).abs() < 0.01);
        let s = smoothness_bound(5.0, 5.0, 3.0, 31.0, 0.5);
        assert!(s.ln_bound.is_none() && s.advisory_only());
    }

    #[test]
    fn limit_case_trends() {
        let kappa = 2.0;
        let rect = optimize_rectangle(kappa).b;
        let far = limit_case(kappa, 1e4);
        assert!((far.b - rect).abs() < 1e-3);
        for lambda in [1e-3, 1e-4] {
            let l = limit_case(kappa, lambda);
            let asym = (kappa / 3.0).sqrt() / lambda.sqrt();
            assert!((l.b / asym - 1.0).abs() < 0.05, "b {} vs {}", l.b, asym);
            assert!((l.e / asym - 1.0).abs() < 0.05, "e {} vs {}", l.e, asym);
        }
    }
}
