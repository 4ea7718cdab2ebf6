//! Composite Gauss–Legendre quadrature with node-doubling convergence
//! control.
//!
//! A fixed 32-point rule is compounded over an increasing number of equal
//! panels until two successive refinements agree to the requested relative
//! tolerance; the last refinement delta is reported as the uncertainty.
//! Nodes and weights are computed once per working precision and cached
//! process-wide.

use crate::error::{Error, Result};
use crate::specfun::complex::BigComplex;
use crate::specfun::pow2;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Order of the Gauss–Legendre rule applied on each panel.
pub const GL_ORDER: usize = 32;

/// Default cap on total integrand evaluations in one integration call.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 20;

/// Panels used for the first composite pass.
const INITIAL_PANELS: u64 = 4;

/// Newton iteration cap while polishing Legendre roots.
const NEWTON_CAP: u32 = 200;

struct GlRule {
    /// Nodes on the reference interval `[-1, 1]`, ascending.
    nodes: Vec<Float>,
    /// Matching weights (positive, summing to 2).
    weights: Vec<Float>,
}

fn rule_cache() -> &'static Mutex<HashMap<u32, Arc<GlRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<GlRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre `P_n` and its derivative at `x` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let pw = x.prec();
    let mut p_prev = Float::with_val(pw, 1u32);
    let mut p = Float::with_val(pw, x);
    for k in 2..=n {
        // p_k = ((2k - 1) x p_{k-1} - (k - 1) p_{k-2}) / k
        let mut next = Float::with_val(pw, &p * x);
        next *= 2 * k as u32 - 1;
        next -= Float::with_val(pw, &p_prev * (k as u32 - 1));
        next /= k as u32;
        p_prev = std::mem::replace(&mut p, next);
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (Float::with_val(pw, x * &p) - &p_prev) * n as u32;
    let den = Float::with_val(pw, x * x) - 1u32;
    (p, num / den)
}

/// Nodes and weights of the `GL_ORDER`-point rule at working precision
/// `pw`, from cache or computed by Newton refinement of the classical
/// Chebyshev-based seeds.
fn gl_rule(pw: u32) -> Result<Arc<GlRule>> {
    if let Some(rule) = rule_cache().lock().expect("rule cache poisoned").get(&pw) {
        return Ok(Arc::clone(rule));
    }
    let n = GL_ORDER;
    let tol = pow2(pw, -(pw as i32) + 6);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // Positive roots only; mirror afterwards. Root i (1-based, largest
    // first) seeds at cos(pi (i - 1/4) / (n + 1/2)).
    for i in 1..=n / 2 {
        let seed = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(pw, seed);
        let mut converged = false;
        for _ in 0..NEWTON_CAP {
            let (p, dp) = legendre_with_derivative(n, &x);
            let step = p / dp;
            x -= &step;
            if step.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence {
                what: "Gauss-Legendre node computation",
                detail: format!("Newton iteration stalled for root {i} at {pw} bits"),
            });
        }
        let (_, dp) = legendre_with_derivative(n, &x);
        let one_minus_x2 = Float::with_val(pw, 1u32) - Float::with_val(pw, &x * &x);
        let w = Float::with_val(pw, 2u32) / (one_minus_x2 * dp.clone().square());
        nodes.push(x);
        weights.push(w);
    }
    // Assemble ascending: -x_0 < ... < -x_{n/2-1} < x_{n/2-1} < ... < x_0.
    let mut full_nodes = Vec::with_capacity(n);
    let mut full_weights = Vec::with_capacity(n);
    for i in 0..n / 2 {
        full_nodes.push(-nodes[i].clone());
        full_weights.push(weights[i].clone());
    }
    for i in (0..n / 2).rev() {
        full_nodes.push(nodes[i].clone());
        full_weights.push(weights[i].clone());
    }
    let rule = Arc::new(GlRule {
        nodes: full_nodes,
        weights: full_weights,
    });
    rule_cache()
        .lock()
        .expect("rule cache poisoned")
        .insert(pw, Arc::clone(&rule));
    Ok(rule)
}

/// One composite pass with `panels` equal panels over `[a, b]`.
fn composite_pass<F>(f: &F, a: &Float, b: &Float, panels: u64, rule: &GlRule) -> BigComplex
where
    F: Fn(&Float) -> BigComplex,
{
    let pw = a.prec();
    let width = Float::with_val(pw, b - a) / panels;
    let half = Float::with_val(pw, &width / 2u32);
    let mut total = BigComplex::zero(pw);
    for j in 0..panels {
        let left = Float::with_val(pw, a + Float::with_val(pw, &width * j));
        let mid = Float::with_val(pw, &left + &half);
        let mut panel_sum = BigComplex::zero(pw);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let point = Float::with_val(pw, &mid + Float::with_val(pw, &half * x));
            panel_sum = panel_sum.add(&f(&point).scale(w));
        }
        total = total.add(&panel_sum.scale(&half));
    }
    total
}

/// Integrates `f` over the real interval `[a, b]`, doubling the panel
/// count until two successive composite passes agree to a relative
/// tolerance of `2^-rel_tol_exp`.
///
/// # Returns
///
/// The last composite value together with the absolute difference of the
/// final two passes (the reported uncertainty).
///
/// # Errors
///
/// - [`Error::InvalidArgument`] unless `a < b`;
/// - [`Error::NonConvergence`] if agreement is not reached within
///   `node_budget` integrand evaluations.
pub fn integrate_complex<F>(
    f: F,
    a: &Float,
    b: &Float,
    rel_tol_exp: u32,
    node_budget: u64,
) -> Result<(BigComplex, Float)>
where
    F: Fn(&Float) -> BigComplex,
{
    if !(a < b) {
        return Err(Error::InvalidArgument(
            "integration interval must satisfy a < b".into(),
        ));
    }
    let pw = a.prec().max(b.prec());
    let a = Float::with_val(pw, a);
    let b = Float::with_val(pw, b);
    let rule = gl_rule(pw)?;
    let mut panels = INITIAL_PANELS;
    let mut spent: u64 = 0;
    let mut previous: Option<BigComplex> = None;
    loop {
        spent = spent.saturating_add(panels.saturating_mul(GL_ORDER as u64));
        if spent > node_budget {
            return Err(Error::NonConvergence {
                what: "composite quadrature",
                detail: format!(
                    "no two successive refinements agreed to 2^-{rel_tol_exp} \
                     within {node_budget} integrand evaluations"
                ),
            });
        }
        let current = composite_pass(&f, &a, &b, panels, &rule);
        if let Some(prev) = previous {
            let delta = current.sub(&prev).abs();
            let scale = current.abs() + pow2(pw, -(pw as i32));
            let threshold = scale * pow2(pw, -(rel_tol_exp as i32));
            if delta <= threshold {
                return Ok((current, delta));
            }
        }
        previous = Some(current);
        panels = panels.saturating_mul(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PW: u32 = 192;

    fn real(f: impl Fn(&Float) -> Float) -> impl Fn(&Float) -> BigComplex {
        move |x: &Float| BigComplex::from_real(x.prec(), &f(x))
    }

    #[test]
    fn integrates_polynomial_exactly() {
        let a = Float::with_val(PW, 0u32);
        let b = Float::with_val(PW, 1u32);
        let (value, delta) = integrate_complex(
            real(|x| Float::with_val(x.prec(), x * x)),
            &a,
            &b,
            90,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        let third = Float::with_val(PW, 1u32) / 3u32;
        assert!((Float::with_val(PW, value.re() - &third)).abs().to_f64() < 1e-50);
        assert!(value.im().clone().abs().to_f64() < 1e-50);
        assert!(delta.to_f64() < 1e-25);
    }

    #[test]
    fn integrates_sine_over_half_period() {
        let a = Float::with_val(PW, 0u32);
        let b = Float::with_val(PW, rug::float::Constant::Pi);
        let (value, _) = integrate_complex(
            real(|x| x.clone().sin()),
            &a,
            &b,
            90,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        assert!((value.re().to_f64() - 2.0).abs() < 1e-45);
    }

    #[test]
    fn integrates_complex_exponential() {
        // int_0^1 e^{ix} dx = sin 1 + i (1 - cos 1).
        let a = Float::with_val(PW, 0u32);
        let b = Float::with_val(PW, 1u32);
        let (value, _) = integrate_complex(
            |x: &Float| BigComplex::new(Float::new(x.prec()), Float::with_val(x.prec(), x)).exp(),
            &a,
            &b,
            90,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        assert!((value.re().to_f64() - 1.0f64.sin()).abs() < 1e-15);
        assert!((value.im().to_f64() - (1.0 - 1.0f64.cos())).abs() < 1e-15);
    }

    #[test]
    fn rejects_empty_interval() {
        let a = Float::with_val(PW, 1u32);
        let (b_lo, b_eq) = (Float::with_val(PW, 0u32), Float::with_val(PW, 1u32));
        for b in [b_lo, b_eq] {
            assert!(matches!(
                integrate_complex(real(|x| x.clone()), &a, &b, 40, 1 << 12),
                Err(Error::InvalidArgument(_))
            ));
        }
    }

    #[test]
    fn reports_nonconvergence_within_budget() {
        // A step discontinuity defeats panel doubling at tight tolerance;
        // the tiny budget makes the failure fast.
        let a = Float::with_val(PW, 0u32);
        let b = Float::with_val(PW, 1u32);
        let third = Float::with_val(PW, 1u32) / 3u32;
        let step = move |x: &Float| {
            let v = if *x < third { 0u32 } else { 1u32 };
            BigComplex::from_f64(x.prec(), f64::from(v), 0.0)
        };
        assert!(matches!(
            integrate_complex(step, &a, &b, 120, 1 << 11),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn rule_weights_sum_to_two() {
        let rule = gl_rule(PW).unwrap();
        let mut sum = Float::new(PW);
        for w in &rule.weights {
            sum += w;
        }
        assert!((sum.to_f64() - 2.0).abs() < 1e-40);
        // Nodes ascend strictly and are symmetric about zero.
        for pair in rule.nodes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        let s = Float::with_val(PW, &rule.nodes[0] + &rule.nodes[GL_ORDER - 1]);
        assert!(s.abs().to_f64() < 1e-50);
    }
}
