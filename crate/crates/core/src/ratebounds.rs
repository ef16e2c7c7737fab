// Copyright (C) 2026, The maxdep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License in the LICENSE file at the
// root of this repository, or online at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact suprema of power differences and uniform rate bounds for the
//! convergence of normalized maxima.
//!
//! The central closed form is
//! `sup_{u ∈ [0,1]} |u^a - u^b| = (1 - a/b)(b/a)^{a/(a-b)}` for `0 < a < b`,
//! attained at `u* = (b/a)^{1/(a-b)}`. All exponentials are evaluated through
//! `log1p`/`expm1` so nearly equal exponents and huge ratios stay accurate.

use std::f64::consts::{E, LN_2};

use serde::Serialize;

use crate::error::{domain, Result};

/// `3/e`, the constant in every power-difference bound.
pub const THREE_OVER_E: f64 = 3.0 / E;

/// Relative slack under which a rate counts as an integer.
pub const INTEGER_RATE_TOL: f64 = 1e-12;

/// A rate within rounding of an integer is treated as that integer.
pub fn is_integer_rate(r: f64) -> bool {
    (r - r.round()).abs() <= INTEGER_RATE_TOL * r.abs().max(1.0)
}

/// `⌈r⌉`, snapping rates that are integers up to rounding.
pub fn ceil_rate(r: f64) -> u64 {
    if is_integer_rate(r) {
        r.round().max(1.0) as u64
    } else {
        r.ceil().max(1.0) as u64
    }
}

/// Exact `sup |u^a - u^b|` and its maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDiffSup {
    pub value: f64,
    pub maximizer: f64,
}

pub fn sup_power_diff(a: f64, b: f64) -> Result<PowerDiffSup> {
    if !(a > 0.0 && b > a && b.is_finite()) {
        return domain(format!("sup_power_diff needs 0 < a < b, got a={a}, b={b}"));
    }
    // h = b/a - 1
    let h = (b - a) / a;
    let lh = h.ln_1p();
    let value = h / (1.0 + h) * (-lh / h).exp();
    let maximizer = (-lh / (b - a)).exp();
    Ok(PowerDiffSup { value, maximizer })
}

/// A bound together with the flag telling whether its proof applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckedBound {
    pub bound: f64,
    pub valid: bool,
}

/// `3e^{-1}|b_n|/a`, a bound on `sup |u^a - u^{a+b_n}|`.
pub fn small_gap_bound(a: f64, b_n: f64) -> CheckedBound {
    let valid = b_n > -a * LN_2 && b_n < a * LN_2 / (1.0 - LN_2);
    CheckedBound { bound: THREE_OVER_E * b_n.abs() / a, valid }
}

/// `3e^{-1} b/a_n`, a bound on `sup |u^{a_n} - u^{a_n+b}|`.
pub fn large_n_bound(b: f64, a_n: f64) -> CheckedBound {
    CheckedBound { bound: THREE_OVER_E * b / a_n, valid: a_n >= b * (1.0 - LN_2) / LN_2 }
}

/// `3e^{-1}/⌈r_n⌉`, bounding `|u - u^{r_n/⌈r_n⌉}|`.
pub fn ceil_rate_bound(r_n: f64) -> f64 {
    THREE_OVER_E / r_n.ceil()
}

/// `3e^{-1}/r_n`, bounding `|F^{⌈r_n⌉} - F^{r_n}|`.
pub fn ceil_power_cdf_bound(r_n: f64) -> f64 {
    THREE_OVER_E / r_n
}

/// The composite bound `K (β* + ceiling)^κ + s` and its parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBoundReport {
    pub bound: f64,
    /// `β*(⌈r_n⌉)`
    pub margin_term: f64,
    /// `3e^{-1} 1{r_n ∉ ℕ} / r_n`
    pub ceiling_term: f64,
    /// `s(n)` or `γ(n)`
    pub distortion_term: f64,
    pub kappa: f64,
    pub k_const: f64,
    pub rate: f64,
    /// `r_n ≥ (1 - log 2)/log 2`, the window in which the ceiling step of
    /// the proof is sharp.
    pub valid: bool,
}

impl RateBoundReport {
    pub fn recompute(&self) -> f64 {
        self.k_const * (self.margin_term + self.ceiling_term).powf(self.kappa) + self.distortion_term
    }
}

fn report(beta: f64, extra: f64, k: f64, kappa: f64, r_n: f64) -> Result<RateBoundReport> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return domain(format!("kappa must lie in (0,1], got {kappa}"));
    }
    if !(k > 0.0 && k.is_finite()) {
        return domain(format!("K must be positive, got {k}"));
    }
    if !(beta >= 0.0 && extra >= 0.0 && r_n > 0.0) {
        return domain("beta*, s and r_n must be nonnegative, r_n positive");
    }
    let ceiling = if is_integer_rate(r_n) { 0.0 } else { THREE_OVER_E / r_n };
    let mut rep = RateBoundReport {
        bound: 0.0,
        margin_term: beta,
        ceiling_term: ceiling,
        distortion_term: extra,
        kappa,
        k_const: k,
        rate: r_n,
        valid: r_n >= (1.0 - LN_2) / LN_2,
    };
    rep.bound = rep.recompute();
    Ok(rep)
}

/// Bound on `sup_x |P((M_n - d_n)/c_n ≤ x) - D(H(x))|`.
pub fn composite_rate_bound(
    beta_star_n: f64,
    s_n: f64,
    k: f64,
    kappa: f64,
    r_n: f64,
) -> Result<RateBoundReport> {
    report(beta_star_n, s_n, k, kappa, r_n)
}

/// Bound on `sup_u |D_n^r(u) - D(u)|` from the law-level rate `γ(n)`.
pub fn reverse_bound(
    beta_star_n: f64,
    gamma_n: f64,
    k: f64,
    kappa: f64,
    r_n: f64,
) -> Result<RateBoundReport> {
    report(beta_star_n, gamma_n, k, kappa, r_n)
}

/// `sup_u |u^{(n+k)/(n(k+1))} - u^{1/(k+1)}| = k/(n+k) (1 + k/n)^{-n/k}`.
pub fn movingmax_s(n: u64, k: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let (nf, kf) = (n as f64, k as f64);
    kf / (nf + kf) * (-(nf / kf) * (kf / nf).ln_1p()).exp()
}

/// Exact sup distance and bound for the Cuadras–Augé diagonal against its
/// finite limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuadrasAugeSup {
    pub exact: f64,
    pub bound: f64,
}

/// `sup_u |u^{η_n} - u^{1/θ}|` with `η_n = (1 - (1-θ)^n)/θ`, and `3e^{-1}(1-θ)^n`.
pub fn cuadras_auge_sup(n: u64, theta: f64) -> Result<CuadrasAugeSup> {
    if !(theta > 0.0 && theta < 1.0) {
        return domain(format!("Cuadras-Auge needs theta in (0,1), got {theta}"));
    }
    // g = (1-θ)^n = 1 - a/b
    let g = ((n as f64) * (-theta).ln_1p()).exp();
    let exact = if g == 0.0 { 0.0 } else { g * ((1.0 / g - 1.0) * (-g).ln_1p()).exp() };
    Ok(CuadrasAugeSup { exact, bound: THREE_OVER_E * g })
}
