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

//! Limit distortions `D` on `[0, 1]` and the limit laws `G = D ∘ H`.
//!
//! Archimedean limits take the form `D(u) = ψ((-log u)^{1/ρ})`, with quantile
//! `exp(-(ψ^{-1}(u))^ρ)` and density
//! `d(u) = -ψ'((-log u)^{1/ρ}) (-log u)^{(1-ρ)/ρ} / (ρ u)`.
//!
//! # Generator scaling
//!
//! `ψ` and `ψ_c(t) = ψ(c t)` generate the same copula, yet their limit
//! distortions differ by a power of the argument:
//!
//! `D_{ψ_c}(u) = D_ψ(u^{c^ρ})`, equivalently `D_ψ(u) = D_{ψ_c}(u^{c^{-ρ}})`.
//!
//! For Clayton (`ρ = 1`) with exponential margins this reads
//! `ψ_c(-log Λ(x)) = ψ(-log Λ^c(x))`: the rate `1/(1 - ψ_c(1/n)) ≈ θ n / c`
//! shifts the location constant by `log(c)/λ`, and the power `c` on `Λ` is
//! exactly that affine shift. With iid constants instead, both generators lead
//! to `ψ(-log Λ^θ(x))`. [`scale_coherent_level`] returns the level `u^{c^{-ρ}}`.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::generators::{builtin_generator, ArchGenerator, Family, GeneratorKind};
use crate::gev::GevParams;
use crate::numerics::{bisect, integrate, sinhc, sinhc_prime, GaussRule};

/// Default node count for parameter mixtures.
pub const MIXTURE_NODES: usize = 64;

#[derive(Clone)]
pub enum Distortion {
    /// `u^θ`
    Power { theta: f64 },
    /// `ψ((-log u)^{1/ρ})`
    ArchimedeanLimit(ArchGenerator),
    /// `(u^{1+θ} - u^{1-θ}) / (2θ log u)`
    EfgmLimit { theta: f64 },
    /// Closed form `1 - ((u-1)/u) log(1-u)` of the uniform AMH mixture.
    AmhUniformMixture,
    /// `∫ D_θ(u) dT(θ)` by Gauss–Legendre quadrature.
    ParameterMixture(Mixture),
}

#[derive(Clone)]
pub struct Mixture {
    pub tag: String,
    pub components: Vec<(f64, Distortion)>,
}

impl fmt::Debug for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Distortion {
    pub fn power(theta: f64) -> Result<Self> {
        if theta > 0.0 && theta.is_finite() {
            Ok(Distortion::Power { theta })
        } else {
            invalid(format!("power distortion needs theta > 0, got {theta}"))
        }
    }

    pub fn identity() -> Self {
        Distortion::Power { theta: 1.0 }
    }

    pub fn archimedean(g: ArchGenerator) -> Self {
        Distortion::ArchimedeanLimit(g)
    }

    pub fn efgm(theta: f64) -> Result<Self> {
        if theta != 0.0 && (-1.0..=1.0).contains(&theta) {
            Ok(Distortion::EfgmLimit { theta })
        } else {
            invalid(format!("EFGM limit needs theta in [-1,1] without 0, got {theta}"))
        }
    }

    /// `∫_lo^hi D_θ(u) w(θ) dθ` with a Gauss–Legendre rule of `nodes` points.
    /// The weights are renormalized to sum to one.
    pub fn parameter_mixture<C, W>(
        tag: &str,
        component: C,
        lower: f64,
        upper: f64,
        weight: W,
        nodes: usize,
    ) -> Result<Self>
    where
        C: Fn(f64) -> Result<Distortion>,
        W: Fn(f64) -> f64,
    {
        if !(lower < upper) || nodes == 0 {
            return invalid("mixture needs lower < upper and at least one node");
        }
        let rule = GaussRule::new(nodes, lower, upper);
        let mut comps = Vec::with_capacity(nodes);
        let mut total = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let m = w * weight(t);
            if !(m >= 0.0) {
                return invalid(format!("mixing density is negative at {t}"));
            }
            total += m;
            comps.push((m, component(t)?));
        }
        if !(total > 0.0) {
            return invalid("mixing measure has no mass");
        }
        for c in &mut comps {
            c.0 /= total;
        }
        Ok(Distortion::ParameterMixture(Mixture { tag: tag.to_string(), components: comps }))
    }

    /// The AMH uniform mixture by quadrature instead of its closed form.
    pub fn amh_uniform_quadrature(nodes: usize) -> Result<Self> {
        Self::parameter_mixture(
            "amh-uniform-quadrature",
            |t| Ok(Distortion::ArchimedeanLimit(builtin_generator(Family::Amh, t)?)),
            0.0,
            1.0,
            |_| 1.0,
            nodes,
        )
    }

    pub fn tag(&self) -> String {
        match self {
            Distortion::Power { theta } => format!("power({theta})"),
            Distortion::ArchimedeanLimit(g) => format!("archimedean[{}]", g.tag()),
            Distortion::EfgmLimit { theta } => format!("efgm({theta})"),
            Distortion::AmhUniformMixture => "amh-uniform".into(),
            Distortion::ParameterMixture(m) => m.tag.clone(),
        }
    }

    pub fn cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        match self {
            Distortion::Power { theta } => u.powf(*theta),
            Distortion::ArchimedeanLimit(g) => g.psi((-u.ln()).powf(1.0 / g.rho())),
            Distortion::EfgmLimit { theta } => u * sinhc(theta * u.ln()),
            Distortion::AmhUniformMixture => {
                if u < 1e-4 {
                    u * (0.5 + u * (1.0 / 6.0 + u / 12.0))
                } else {
                    1.0 + (1.0 - u) / u * (-u).ln_1p()
                }
            }
            Distortion::ParameterMixture(m) => m.components.iter().map(|(w, d)| w * d.cdf(u)).sum(),
        }
    }

    /// `D(e^{-s})`, usable for `s` beyond the range where `e^{-s}` is a
    /// normal double.
    pub fn cdf_neg_log(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 1.0;
        }
        if s.is_infinite() {
            return 0.0;
        }
        match self {
            Distortion::Power { theta } => (-theta * s).exp(),
            Distortion::ArchimedeanLimit(g) => g.psi(s.powf(1.0 / g.rho())),
            Distortion::EfgmLimit { theta } => {
                let a = theta.abs();
                if s < 1.0 {
                    (-s).exp() * sinhc(a * s)
                } else {
                    (((a - 1.0) * s).exp() - (-(a + 1.0) * s).exp()) / (2.0 * a * s)
                }
            }
            Distortion::AmhUniformMixture => self.cdf((-s).exp()),
            Distortion::ParameterMixture(m) => {
                m.components.iter().map(|(w, d)| w * d.cdf_neg_log(s)).sum()
            }
        }
    }

    /// Density `d(u)`; at `u = 0` and `u = 1` the boundary limits, possibly `∞`.
    pub fn density(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return self.density_at_zero();
        }
        if u >= 1.0 {
            return self.density_at_one();
        }
        match self {
            Distortion::Power { theta } => theta * u.powf(theta - 1.0),
            Distortion::ArchimedeanLimit(g) => {
                let rho = g.rho();
                let s = -u.ln();
                let y = s.powf(1.0 / rho);
                let scale = if rho == 1.0 { 1.0 } else { s.powf((1.0 - rho) / rho) / rho };
                -g.psi_prime(y) * scale / u
            }
            Distortion::EfgmLimit { theta } => {
                let x = theta * u.ln();
                sinhc(x) + theta * sinhc_prime(x)
            }
            Distortion::AmhUniformMixture => {
                if u < 1e-4 {
                    0.5 + u * (1.0 / 3.0 + u * (0.25 + u / 5.0))
                } else {
                    (-(-u).ln_1p() - u) / (u * u)
                }
            }
            Distortion::ParameterMixture(m) => {
                m.components.iter().map(|(w, d)| w * d.density(u)).sum()
            }
        }
    }

    fn density_at_one(&self) -> f64 {
        match self {
            Distortion::Power { theta } => *theta,
            Distortion::ArchimedeanLimit(g) => {
                if g.rho() == 1.0 {
                    return g.neg_psi_prime_0();
                }
                match g.kind() {
                    // -ψ'(y) y^{1-ρ}/ρ → 1 for both families, times c^ρ under scaling
                    GeneratorKind::Gumbel { .. } | GeneratorKind::Joe { .. } => {
                        g.scale().powf(g.rho())
                    }
                    _ => self.density(1.0 - 1e-12),
                }
            }
            Distortion::EfgmLimit { .. } => 1.0,
            Distortion::AmhUniformMixture => f64::INFINITY,
            Distortion::ParameterMixture(m) => {
                m.components.iter().map(|(w, d)| w * d.density(1.0)).sum()
            }
        }
    }

    fn density_at_zero(&self) -> f64 {
        let trichotomy = |c: f64, at_one: f64| {
            if c < 1.0 {
                f64::INFINITY
            } else if c == 1.0 {
                at_one
            } else {
                0.0
            }
        };
        match self {
            Distortion::Power { theta } => trichotomy(*theta, 1.0),
            Distortion::ArchimedeanLimit(g) => {
                let c = g.scale();
                match g.kind() {
                    GeneratorKind::Independence => trichotomy(c, 1.0),
                    GeneratorKind::Amh { theta } => trichotomy(c, 1.0 - theta),
                    GeneratorKind::Frank { theta } => trichotomy(c, -(-theta).exp_m1() / theta),
                    GeneratorKind::Gumbel { theta } => trichotomy(c.powf(1.0 / theta), 1.0),
                    GeneratorKind::Clayton { .. } | GeneratorKind::Ballerini => f64::INFINITY,
                    GeneratorKind::Joe { .. } => 0.0,
                    GeneratorKind::FromF(_) => self.density(1e-300),
                }
            }
            Distortion::EfgmLimit { .. } => f64::INFINITY,
            Distortion::AmhUniformMixture => 0.5,
            Distortion::ParameterMixture(m) => {
                m.components.iter().map(|(w, d)| w * d.density(0.0)).sum()
            }
        }
    }

    /// Density of `-log U` for `U ~ D`, i.e. `d(e^{-s}) e^{-s}`, evaluated
    /// without forming `e^{-s}` where that would underflow.
    pub fn log_scale_density(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match self {
            Distortion::Power { theta } => theta * (-theta * s).exp(),
            Distortion::ArchimedeanLimit(g) => {
                let rho = g.rho();
                let y = s.powf(1.0 / rho);
                let scale = if rho == 1.0 { 1.0 } else { s.powf((1.0 - rho) / rho) / rho };
                -g.psi_prime(y) * scale
            }
            Distortion::EfgmLimit { theta } => {
                let a = theta.abs();
                if s < 1.0 {
                    let x = a * s;
                    (-s).exp() * (sinhc(x) - a * sinhc_prime(x))
                } else {
                    // e^{-s} sinh(as), e^{-s} cosh(as) in overflow-free form
                    let ep = ((a - 1.0) * s).exp();
                    let em = (-(a + 1.0) * s).exp();
                    let x = a * s;
                    let sh = 0.5 * (ep - em);
                    // e^{-s}(sinh - a cosh), exact at a = 1
                    let lead = 0.5 * ((1.0 - a) * ep - (1.0 + a) * em);
                    lead / x + a * (sh / x) / x
                }
            }
            Distortion::AmhUniformMixture => {
                let u = (-s).exp();
                if u == 0.0 {
                    0.0
                } else if u < 1e-4 {
                    self.density(u) * u
                } else {
                    // 1 - u from s, so the log singularity at u = 1 stays finite
                    (-(-(-s).exp_m1()).ln() - u) / u
                }
            }
            Distortion::ParameterMixture(m) => {
                m.components.iter().map(|(w, d)| w * d.log_scale_density(s)).sum()
            }
        }
    }

    /// `∫_0^1 d(u) du`, integrated on the `log(-log u)` scale so that mass
    /// below the smallest representable `u` is still accounted for.
    pub fn density_mass(&self) -> f64 {
        let f = |w: f64| {
            let s = w.exp();
            self.log_scale_density(s) * s
        };
        integrate(f, -60.0, 0.0, 1e-13) + integrate(f, 0.0, 400.0, 1e-13)
    }

    /// `D^{-1}(v)`; analytic where available, otherwise bisection on `-log u`.
    pub fn quantile(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if v >= 1.0 {
            return 1.0;
        }
        match self {
            Distortion::Power { theta } => v.powf(1.0 / theta),
            Distortion::ArchimedeanLimit(g) => (-g.psi_inv(v).powf(g.rho())).exp(),
            _ => (-self.quantile_neg_log(v)).exp(),
        }
    }

    /// `-log D^{-1}(v)`, finite where the quantile itself underflows.
    pub fn quantile_neg_log(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return f64::INFINITY;
        }
        if v >= 1.0 {
            return 0.0;
        }
        match self {
            Distortion::Power { theta } => -v.ln() / theta,
            Distortion::ArchimedeanLimit(g) => g.psi_inv(v).powf(g.rho()),
            _ => {
                let mut hi = 1.0;
                while self.cdf_neg_log(hi) > v && hi < 1e300 {
                    hi *= 4.0;
                }
                bisect(|s| self.cdf_neg_log(s) - v, 0.0, hi, 0.0)
            }
        }
    }
}

/// `D(H(x))`, the limit law of normalized maxima.
#[derive(Debug, Clone)]
pub struct LimitLaw {
    pub distortion: Distortion,
    pub gev: GevParams,
}

impl LimitLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        limit_law_cdf(&self.distortion, &self.gev, x)
    }

    pub fn quantile(&self, q: f64) -> Result<f64> {
        self.gev.quantile_neg_log(self.distortion.quantile_neg_log(q))
    }
}

/// `D(H(x))`, evaluated through `-log H(x)` so that distortions with mass
/// near zero stay resolved deep in the lower tail.
pub fn limit_law_cdf(d: &Distortion, h: &GevParams, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    d.cdf_neg_log(h.neg_log_cdf(x))
}

pub fn distortion_density(d: &Distortion, u: f64) -> f64 {
    d.density(u)
}

/// The level `u^{c^{-ρ}}` at which `D_{ψ_c}` equals `D_ψ(u)`.
pub fn scale_coherent_level(u: f64, c: f64, rho: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    (u.ln() * c.powf(-rho)).exp()
}

/// How far `G` is from being max-stable of its own type.
///
/// Fits `a > 0, b` so that `G^k(x) = G(a x + b)` at the 0.25 and 0.75
/// quantiles of `G^k`, then returns `max_grid |G(x)^k - G(a x + b)|`.
pub fn max_stability_defect<G: Fn(f64) -> f64>(g: G, k: u32, grid: &[f64]) -> Result<f64> {
    if k < 2 {
        return Err(Error::Contract(format!("k must be at least 2, got {k}")));
    }
    if grid.len() < 2 {
        return Err(Error::Contract("grid needs at least two points".into()));
    }
    let lo = grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let kf = k as f64;
    let probs = [0.25, 0.75, 0.25f64.powf(1.0 / kf), 0.75f64.powf(1.0 / kf)];
    let (glo, ghi) = (g(lo), g(hi));
    if !(glo < 0.25 && ghi > probs[3]) {
        return Err(Error::Contract(format!(
            "grid [{lo}, {hi}] does not cover the quartiles (G = {glo}, {ghi})"
        )));
    }
    let q = |p: f64| bisect(|x| g(x) - p, lo, hi, 1e-14 * (hi - lo));
    let (x25, x75, y25, y75) = (q(probs[0]), q(probs[1]), q(probs[2]), q(probs[3]));
    if !(y75 > y25) {
        return Err(Error::Contract("G is degenerate on the grid".into()));
    }
    let a = (x75 - x25) / (y75 - y25);
    let b = x25 - a * y25;
    Ok(grid
        .iter()
        .map(|&x| (g(x).powi(k as i32) - g(a * x + b)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::scale_generator;

    fn arch(f: Family, t: f64) -> Distortion {
        Distortion::archimedean(builtin_generator(f, t).unwrap())
    }

    #[test]
    fn construction_examples() {
        let g = arch(Family::Gumbel, 3.0);
        for i in 1..100 {
            let u = i as f64 / 100.0;
            assert!((g.cdf(u) - u).abs() < 1e-12);
        }
        let c = arch(Family::Clayton, 1.0);
        assert!((c.cdf((-1f64).exp()) - 0.5).abs() < 1e-15);
        let e = Distortion::efgm(0.5).unwrap();
        let direct = (0.5f64.powf(1.5) - 0.5f64.sqrt()) / (2.0 * 0.5 * 0.5f64.ln());
        assert!((e.cdf(0.5) - direct).abs() < 1e-15);
        assert!((e.cdf(0.5) - 0.510_069_723_3).abs() < 1e-10);
        let quad = GaussRule::new(32, 0.0, 1.0).integrate(|t| 0.5f64.powf(0.5 * (2.0 * t - 1.0) + 1.0));
        assert!((e.cdf(0.5) - quad).abs() < 1e-14);
        assert!(Distortion::efgm(0.0).is_err() && Distortion::power(-1.0).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(Distortion::identity().density(0.3), 1.0);
        assert_eq!(arch(Family::Clayton, 1.0).density(1.0), 1.0);
        assert!((arch(Family::Gumbel, 2.0).density(0.5) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn law_examples() {
        let frechet = GevParams::new(1.0, 1.0, 1.0).unwrap();
        let v = limit_law_cdf(&Distortion::power(0.5).unwrap(), &frechet, 1.0);
        assert!((v - (-0.5f64).exp()).abs() < 1e-15);
        let v = limit_law_cdf(&arch(Family::Clayton, 1.0), &GevParams::gumbel(), 0.0);
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn defect_examples() {
        let grid = crate::numerics::linspace(-4.0, 12.0, 400);
        let h = GevParams::new(0.2, 0.5, 1.5).unwrap();
        let hgrid = crate::numerics::linspace(-1.5, 40.0, 400);
        assert!(max_stability_defect(|x| h.cdf(x), 3, &hgrid).unwrap() < 1e-10);
        let gumbel = arch(Family::Gumbel, 2.0);
        let l = GevParams::gumbel();
        assert!(max_stability_defect(|x| gumbel.cdf(l.cdf(x)), 2, &grid).unwrap() < 1e-10);
        let clayton = arch(Family::Clayton, 2.0);
        let d = max_stability_defect(|x| clayton.cdf(l.cdf(x)), 2, &grid).unwrap();
        assert!(d > 0.01, "{d}");
        assert!(max_stability_defect(|_| 0.5, 2, &grid).is_err());
    }

    #[test]
    fn scale_coherence_clayton() {
        let g = builtin_generator(Family::Clayton, 2.0).unwrap();
        for c in [0.5, 2.0, 7.0] {
            let gc = Distortion::archimedean(scale_generator(&g, c).unwrap());
            let d = Distortion::archimedean(g.clone());
            for u in [0.01, 0.3, 0.9] {
                assert!((d.cdf(u) - gc.cdf(scale_coherent_level(u, c, 1.0))).abs() < 1e-14);
                assert!((gc.cdf(u) - d.cdf(u.powf(c))).abs() < 1e-14);
            }
        }
    }
}
