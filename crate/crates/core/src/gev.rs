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

//! The generalized extreme value family `H_{ξ,μ,σ}`.
//!
//! Outside the support the cdf takes its limiting values 0 and 1, so every
//! function here is total. The Gumbel branch is used when `|ξ| < 1e-12`.
//!
//! Powers of a GEV cdf stay in the family with the same shape:
//! `H_{ξ,μ,σ}^θ = H_{ξ,μ̃,σ̃}` where, for `ξ ≠ 0`,
//! `σ̃ = σ θ^ξ` and `μ̃ = μ + σ(θ^ξ − 1)/ξ`, and for `ξ = 0`,
//! `σ̃ = σ` and `μ̃ = μ + σ log θ`. This is the form checked pointwise by the
//! tests. A location-preserving form `σ̃ = σ θ^{1/|ξ|}`, `μ̃ = μ` that is
//! sometimes quoted does not satisfy `H^θ(x) = H̃(x)` and is not used.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result};

/// Shape threshold below which the Gumbel formulas are used.
pub const XI_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GevParams {
    pub xi: f64,
    pub mu: f64,
    pub sigma: f64,
}

/// An open interval, possibly unbounded on either side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

impl GevParams {
    pub fn new(xi: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(xi.is_finite() && mu.is_finite()) {
            return invalid(format!("GEV shape and location must be finite, got xi={xi}, mu={mu}"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return invalid(format!("GEV scale must be positive, got {sigma}"));
        }
        Ok(GevParams { xi, mu, sigma })
    }

    /// Standard Gumbel law `Λ(x) = exp(-e^{-x})`.
    pub fn gumbel() -> Self {
        GevParams { xi: 0.0, mu: 0.0, sigma: 1.0 }
    }

    fn is_gumbel(&self) -> bool {
        self.xi.abs() < XI_ZERO
    }

    /// `(1 + ξ z)^{-1/ξ}` (or `e^{-z}`), with `None` outside the support.
    fn tail(&self, x: f64) -> Option<f64> {
        let z = (x - self.mu) / self.sigma;
        if self.is_gumbel() {
            return Some((-z).exp());
        }
        let s = self.xi * z;
        if s <= -1.0 {
            return None;
        }
        Some((-s.ln_1p() / self.xi).exp())
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match self.tail(x) {
            Some(t) => (-t).exp(),
            None if self.xi > 0.0 => 0.0,
            None => 1.0,
        }
    }

    /// `-log H(x)`, finite where `H(x)` itself underflows.
    pub fn neg_log_cdf(&self, x: f64) -> f64 {
        match self.tail(x) {
            Some(t) => t,
            None if self.xi > 0.0 => f64::INFINITY,
            None => 0.0,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        let Some(t) = self.tail(x) else {
            return 0.0;
        };
        if t == 0.0 || t.is_infinite() {
            return 0.0;
        }
        let power = if self.is_gumbel() { t } else { t.powf(1.0 + self.xi) };
        power * (-t).exp() / self.sigma
    }

    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("GEV quantile needs q in (0,1), got {q}"));
        }
        let lt = (-q.ln()).ln();
        if self.is_gumbel() {
            Ok(self.mu - self.sigma * lt)
        } else {
            Ok(self.mu + self.sigma * (-self.xi * lt).exp_m1() / self.xi)
        }
    }

    /// The `x` with `-log H(x) = s`, for `s > 0`.
    pub fn quantile_neg_log(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s.is_finite()) {
            return domain(format!("GEV quantile needs -log q in (0,inf), got {s}"));
        }
        let lt = s.ln();
        if self.is_gumbel() {
            Ok(self.mu - self.sigma * lt)
        } else {
            Ok(self.mu + self.sigma * (-self.xi * lt).exp_m1() / self.xi)
        }
    }

    /// Parameters of `H^θ`, which is again a GEV law with the same shape.
    pub fn power(&self, theta: f64) -> Result<GevParams> {
        if !(theta > 0.0 && theta.is_finite()) {
            return domain(format!("GEV power needs theta > 0, got {theta}"));
        }
        let lt = theta.ln();
        if self.is_gumbel() {
            return Ok(GevParams { xi: self.xi, mu: self.mu + self.sigma * lt, sigma: self.sigma });
        }
        let g = (self.xi * lt).exp_m1();
        Ok(GevParams {
            xi: self.xi,
            mu: self.mu + self.sigma * g / self.xi,
            sigma: self.sigma * (self.xi * lt).exp(),
        })
    }

    pub fn support(&self) -> Interval {
        if self.is_gumbel() {
            Interval { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
        } else if self.xi > 0.0 {
            Interval { lower: self.mu - self.sigma / self.xi, upper: f64::INFINITY }
        } else {
            Interval { lower: f64::NEG_INFINITY, upper: self.mu - self.sigma / self.xi }
        }
    }
}

pub fn gev_cdf(p: &GevParams, x: f64) -> f64 {
    p.cdf(x)
}

pub fn gev_quantile(p: &GevParams, q: f64) -> Result<f64> {
    p.quantile(q)
}

pub fn gev_density(p: &GevParams, x: f64) -> f64 {
    p.density(x)
}

pub fn gev_power(p: &GevParams, theta: f64) -> Result<GevParams> {
    p.power(theta)
}

pub fn gev_support(p: &GevParams) -> Interval {
    p.support()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gev(xi: f64, mu: f64, sigma: f64) -> GevParams {
        GevParams::new(xi, mu, sigma).unwrap()
    }

    #[test]
    fn cdf_examples() {
        assert!((gev(0.0, 0.0, 1.0).cdf(0.0) - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(gev(1.0, 1.0, 1.0).cdf(0.0), 0.0);
        assert!((gev(1.0, 0.0, 1.0).cdf(1.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(gev(-1.0, 0.0, 1.0).cdf(5.0), 1.0);
    }

    #[test]
    fn density_matches_finite_differences() {
        for p in [gev(0.0, 0.0, 1.0), gev(1.0, 0.0, 1.0), gev(-0.4, 1.0, 2.0)] {
            for x in [-0.5, 0.0, 0.7, 1.0, 2.5] {
                let h = 1e-6;
                let fd = (p.cdf(x + h) - p.cdf(x - h)) / (2.0 * h);
                assert!((p.density(x) - fd).abs() < 1e-8, "{p:?} at {x}");
            }
        }
        assert!((gev(1.0, 0.0, 1.0).density(1.0) - 0.25 * (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(gev(1.0, 0.0, 1.0).density(-3.0), 0.0);
    }

    #[test]
    fn quantile_examples() {
        let g = GevParams::gumbel();
        assert!(g.quantile((-1f64).exp()).unwrap().abs() < 1e-15);
        let f = gev(1.0, 0.0, 1.0);
        assert!((f.quantile((-0.5f64).exp()).unwrap() - 1.0).abs() < 1e-14);
        let w = gev(-1.0, 0.0, 1.0);
        assert!((w.quantile(1.0 - 1e-15).unwrap() - 1.0).abs() < 1e-12);
        assert!(g.quantile(0.0).is_err() && g.quantile(1.0).is_err());
    }

    #[test]
    fn power_examples() {
        let g = GevParams::gumbel().power(std::f64::consts::E).unwrap();
        assert!((g.mu - 1.0).abs() < 1e-15 && g.sigma == 1.0);
        let f = gev(1.0, 0.0, 1.0).power(2.0).unwrap();
        assert!((f.mu - 1.0).abs() < 1e-15 && (f.sigma - 2.0).abs() < 1e-15);
        let h = gev(1.0, 0.0, 1.0).cdf(3.0);
        assert!((f.cdf(3.0) - h * h).abs() < 1e-15);
        assert!((f.cdf(3.0) - (-0.5f64).exp()).abs() < 1e-15);
        let p = gev(0.3, -1.0, 2.0);
        assert_eq!(p.power(1.0).unwrap(), p);
        assert!(p.power(0.0).is_err());
    }

    #[test]
    fn support_examples() {
        let s = gev(1.0, 0.0, 1.0).support();
        assert_eq!((s.lower, s.upper), (-1.0, f64::INFINITY));
        let s = gev(-1.0, 0.0, 1.0).support();
        assert_eq!((s.lower, s.upper), (f64::NEG_INFINITY, 1.0));
        assert!(GevParams::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn branches_agree_near_zero_shape() {
        for x in [-2.0, 0.0, 1.5, 4.0] {
            let a = gev(1e-8, 0.0, 1.0).cdf(x);
            let b = gev(-1e-8, 0.0, 1.0).cdf(x);
            let c = GevParams::gumbel().cdf(x);
            assert!((a - c).abs() < 1e-6 && (b - c).abs() < 1e-6);
        }
    }
}
