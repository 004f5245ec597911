//! Rigorous upper bounds for the part of a truncated spectral sum with some
//! free label parameter above the truncation level `N`.
//!
//! For a label family with middle entries `λ_2 … λ_{m-1}` (`m = n+1`) the Weyl
//! formula splits as `M0 · F(q) · G(p) · (q+p+m-1)/(m-1)`. With `x, y ≥ 1`,
//! `F(q) ≤ F1 q^{m-2}`, `G(p) ≤ G1 p^{m-2}` and `q+p+m-1 ≤ (m+1) pq`, so the
//! dimension is at most a constant times `(pq)^n` (both free) or `x^n` (one
//! free). The eigenvalue is at least `(pq/(n-i-j))²` in Cases II/V and at least
//! `x²/4` for the one-parameter families. Tails of `Σ x^{-α}` are bounded by
//! `∫_N^∞ x^{-α} dx` and `ζ(α) ≤ α/(α-1)`.

use alloc::vec::Vec;

use crate::spectrum::{LabelFamily, Param};

// Multiplicative slack covering the f64 evaluation of the bound itself.
const SLACK: f64 = 1.0 + 1e-9;

/// `Σ_{x>N} x^{-α} ≤ N^{1-α}/(α-1)`.
pub fn power_tail(alpha: f64, truncation: u32) -> f64 {
    debug_assert!(alpha > 1.0);
    libm::pow(f64::from(truncation), 1.0 - alpha) / (alpha - 1.0)
}

fn zeta_upper(alpha: f64) -> f64 {
    alpha / (alpha - 1.0)
}

fn middle_entries(fam: &LabelFamily) -> Vec<i64> {
    let zeros = (fam.n - 1 - fam.i - fam.j) as usize;
    let mut out = Vec::with_capacity(fam.n as usize - 1);
    out.extend(core::iter::repeat(1).take(fam.j as usize));
    out.extend(core::iter::repeat(0).take(zeros));
    out.extend(core::iter::repeat(-1).take(fam.i as usize));
    out
}

/// Upper bound on `Σ dim · μ^{-s}` over the labels of `fam` with a free
/// parameter above `truncation`. Requires `2s > n + 1`.
pub fn family_tail_bound(fam: &LabelFamily, s: f64, truncation: u32) -> f64 {
    if fam.free_parameters() == 0 {
        return 0.0;
    }
    let m = i64::from(fam.n) + 1;
    let mf = m as f64;
    // positions 2..=m-1 (1-based)
    let mid: Vec<(f64, f64)> = middle_entries(fam)
        .into_iter()
        .enumerate()
        .map(|(idx, lam)| (lam as f64, (idx + 2) as f64))
        .collect();

    let mut m0 = 1.0f64;
    for (x, &(la, a)) in mid.iter().enumerate() {
        for &(lb, b) in &mid[x + 1..] {
            m0 *= (la - lb + b - a) / (b - a);
        }
    }

    let f_part = |q: Param| -> f64 {
        let factor = |lb: f64, b: f64| match q {
            Param::Free { .. } => (b - lb) / (b - 1.0),
            Param::Fixed(q0) => (q0 as f64 - lb + b - 1.0) / (b - 1.0),
        };
        mid.iter().map(|&(lb, b)| factor(lb, b)).product()
    };
    let g_part = |p: Param| -> f64 {
        let factor = |la: f64, a: f64| match p {
            Param::Free { .. } => (1.0 + la + mf - a) / (mf - a),
            Param::Fixed(p0) => (la + p0 as f64 + mf - a) / (mf - a),
        };
        mid.iter().map(|&(la, a)| factor(la, a)).product()
    };

    let alpha = 2.0 * s - f64::from(fam.n);
    let tail = power_tail(alpha, truncation);
    let base = m0 * f_part(fam.q) * g_part(fam.p);

    let bound = match (fam.q, fam.p) {
        (Param::Free { .. }, Param::Free { .. }) => {
            let cross = (mf + 1.0) / (mf - 1.0);
            let d = f64::from(fam.n - fam.i - fam.j);
            base * cross * libm::pow(d, 2.0 * s) * 2.0 * tail * zeta_upper(alpha)
        }
        (Param::Fixed(y0), _) | (_, Param::Fixed(y0)) => {
            let cross = (y0 as f64 + mf) / (mf - 1.0);
            base * cross * libm::pow(4.0, s) * tail
        }
    };
    bound.abs() * SLACK
}

/// Tail bound for the reduced route: `2^{2s+1} · Σ_i C(n,i) (n+1) · N^{1-α}/(α-1)`,
/// using `dim ≤ C(n,i)(n+1)p^n` and `(p+i)^{-2s} ≤ p^{-2s}`.
pub fn reduced_tail_bound(n: u32, s: f64, truncation: u32) -> f64 {
    let alpha = 2.0 * s - f64::from(n);
    let binomial_sum = libm::ldexp(1.0, n as i32);
    libm::pow(2.0, 2.0 * s + 1.0) * binomial_sum * f64::from(n + 1) * power_tail(alpha, truncation) * SLACK
}
