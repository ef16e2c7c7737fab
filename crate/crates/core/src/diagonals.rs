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

//! Copula diagonals `δ_n(u) = C_n(u, …, u)` and their power distortions
//! `D_n^r(u) = δ_n(u^{1/r_n})`.
//!
//! Every family is evaluated at the logarithm of its argument, so levels
//! `u^{1/r_n}` with huge `r_n` keep full resolution.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use crate::distortions::Distortion;
use crate::error::{invalid, Error, Result};
use crate::generators::ArchGenerator;
use crate::numerics::{golden_max, integrate, linspace, GaussRule};
use crate::samplers::McEstimate;

type CountFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// Exchangeable block sizes `n ↦ η_n` for power diagonals.
#[derive(Clone)]
pub enum EtaSchedule {
    /// `η_n = n^{1/θ}`, the extremal coefficient of the logistic model.
    Logistic { theta: f64 },
    Custom { tag: String, eta: CountFn },
}

impl EtaSchedule {
    pub fn logistic(theta: f64) -> Result<Self> {
        if theta >= 1.0 && theta.is_finite() {
            Ok(EtaSchedule::Logistic { theta })
        } else {
            invalid(format!("logistic schedule needs theta >= 1, got {theta}"))
        }
    }

    pub fn custom<F: Fn(u64) -> f64 + Send + Sync + 'static>(tag: &str, eta: F) -> Self {
        EtaSchedule::Custom { tag: tag.to_string(), eta: Arc::new(eta) }
    }

    pub fn eta(&self, n: u64) -> f64 {
        match self {
            EtaSchedule::Logistic { theta } => (n as f64).powf(1.0 / theta),
            EtaSchedule::Custom { eta, .. } => eta(n),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            EtaSchedule::Logistic { theta } => format!("logistic({theta})"),
            EtaSchedule::Custom { tag, .. } => tag.clone(),
        }
    }
}

#[derive(Clone)]
pub enum DiagonalFamily {
    Independence,
    Comonotone,
    PowerDiagonal(EtaSchedule),
    MovingMax { k: u32 },
    CuadrasAuge { theta: f64 },
    Archimedean(ArchGenerator),
    Archimax(ArchGenerator, EtaSchedule),
    EfgmMixture { theta: f64 },
}

impl fmt::Debug for DiagonalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

thread_local! {
    static RULES: RefCell<HashMap<usize, Rc<GaussRule>>> = RefCell::new(HashMap::new());
}

fn unit_rule(m: usize) -> Rc<GaussRule> {
    RULES.with(|r| r.borrow_mut().entry(m).or_insert_with(|| Rc::new(GaussRule::new(m, 0.0, 1.0))).clone())
}

/// Largest `n` for which the EFGM diagonal uses the exact Gauss rule.
const EFGM_EXACT_MAX_N: u64 = 400;

impl DiagonalFamily {
    pub fn cuadras_auge(theta: f64) -> Result<Self> {
        if theta > 0.0 && theta < 1.0 {
            Ok(DiagonalFamily::CuadrasAuge { theta })
        } else {
            invalid(format!("Cuadras-Auge needs theta in (0,1), got {theta}"))
        }
    }

    pub fn efgm(theta: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&theta) {
            Ok(DiagonalFamily::EfgmMixture { theta })
        } else {
            invalid(format!("EFGM needs theta in [-1,1], got {theta}"))
        }
    }

    pub fn tag(&self) -> String {
        match self {
            DiagonalFamily::Independence => "independence".into(),
            DiagonalFamily::Comonotone => "comonotone".into(),
            DiagonalFamily::PowerDiagonal(e) => format!("power[{}]", e.tag()),
            DiagonalFamily::MovingMax { k } => format!("movingmax({k})"),
            DiagonalFamily::CuadrasAuge { theta } => format!("cuadras-auge({theta})"),
            DiagonalFamily::Archimedean(g) => format!("archimedean[{}]", g.tag()),
            DiagonalFamily::Archimax(g, e) => format!("archimax[{};{}]", g.tag(), e.tag()),
            DiagonalFamily::EfgmMixture { theta } => format!("efgm({theta})"),
        }
    }

    /// `δ_n(u)`.
    ///
    /// # Panics
    ///
    /// If `n == 0`.
    pub fn delta(&self, n: u64, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        self.delta_log(n, u.ln())
    }

    /// `δ_n(e^{l})` for `l ≤ 0`.
    pub fn delta_log(&self, n: u64, l: f64) -> f64 {
        assert!(n >= 1, "diagonals are indexed by n >= 1");
        if l >= 0.0 {
            return 1.0;
        }
        if l == f64::NEG_INFINITY {
            return 0.0;
        }
        let nf = n as f64;
        match self {
            DiagonalFamily::Independence => (nf * l).exp(),
            DiagonalFamily::Comonotone => l.exp(),
            DiagonalFamily::PowerDiagonal(e) => (e.eta(n) * l).exp(),
            DiagonalFamily::MovingMax { k } => {
                let k = *k as f64;
                ((nf + k) / (k + 1.0) * l).exp()
            }
            DiagonalFamily::CuadrasAuge { theta } => (ca_eta(*theta, n) * l).exp(),
            DiagonalFamily::Archimedean(g) => g.psi(nf * g.psi_inv_log(l)),
            DiagonalFamily::Archimax(g, e) => g.psi(e.eta(n) * g.psi_inv_log(l)),
            DiagonalFamily::EfgmMixture { theta } => efgm_diagonal(*theta, n, l),
        }
    }

    /// The rate under which `D_n^r` has a nondegenerate limit, when known.
    pub fn canonical_rate(&self, n: u64) -> Option<f64> {
        let nf = n as f64;
        match self {
            DiagonalFamily::Independence
            | DiagonalFamily::MovingMax { .. }
            | DiagonalFamily::EfgmMixture { .. } => Some(nf),
            DiagonalFamily::Comonotone => None,
            DiagonalFamily::PowerDiagonal(e) => Some(e.eta(n)),
            DiagonalFamily::CuadrasAuge { theta } => Some(ca_eta(*theta, n)),
            DiagonalFamily::Archimedean(g) => Some(1.0 / g.psi_complement(1.0 / nf)),
            DiagonalFamily::Archimax(g, e) => Some(1.0 / g.psi_complement(1.0 / e.eta(n))),
        }
    }

    /// Limit of `D_n^r` under the canonical rate.
    pub fn limit_distortion(&self) -> Option<Distortion> {
        match self {
            DiagonalFamily::Independence
            | DiagonalFamily::PowerDiagonal(_)
            | DiagonalFamily::CuadrasAuge { .. } => Some(Distortion::identity()),
            DiagonalFamily::Comonotone => None,
            DiagonalFamily::MovingMax { k } => Some(Distortion::Power { theta: 1.0 / (*k as f64 + 1.0) }),
            DiagonalFamily::Archimedean(g) | DiagonalFamily::Archimax(g, _) => {
                Some(Distortion::ArchimedeanLimit(g.clone()))
            }
            DiagonalFamily::EfgmMixture { theta } => {
                if *theta == 0.0 {
                    Some(Distortion::identity())
                } else {
                    Some(Distortion::EfgmLimit { theta: *theta })
                }
            }
        }
    }

    /// The canonical rate stays bounded: the limit of `M_n` is `F^{1/θ}`
    /// without any normalization.
    pub fn is_finite_rate(&self) -> bool {
        matches!(self, DiagonalFamily::CuadrasAuge { .. } | DiagonalFamily::Comonotone)
    }

    pub fn is_exchangeable(&self) -> bool {
        !matches!(self, DiagonalFamily::MovingMax { .. })
    }
}

fn ca_eta(theta: f64, n: u64) -> f64 {
    -((n as f64) * (-theta).ln_1p()).exp_m1() / theta
}

/// `∫_0^1 (u + θu(u-1)(2t-1))^n dt` at `u = e^{l}`.
fn efgm_diagonal(theta: f64, n: u64, l: f64) -> f64 {
    let nf = n as f64;
    let w = -l.exp_m1();
    let f = |t: f64| (nf * l + nf * (-theta * w * (2.0 * t - 1.0)).ln_1p()).exp();
    if theta == 0.0 {
        return (nf * l).exp();
    }
    if n <= EFGM_EXACT_MAX_N {
        unit_rule((n as usize + 2).div_ceil(2)).integrate(f)
    } else {
        integrate(f, 0.0, 1.0, 1e-13)
    }
}

/// A rate `n ↦ r_n > 0`.
#[derive(Clone)]
pub struct RateFn {
    tag: String,
    f: CountFn,
}

impl fmt::Debug for RateFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RateFn({})", self.tag)
    }
}

impl RateFn {
    pub fn identity() -> Self {
        RateFn { tag: "n".into(), f: Arc::new(|n| n as f64) }
    }

    pub fn power(p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return invalid(format!("rate exponent must be positive, got {p}"));
        }
        Ok(RateFn { tag: format!("n^{p}"), f: Arc::new(move |n| (n as f64).powf(p)) })
    }

    pub fn canonical(fam: &DiagonalFamily) -> Result<Self> {
        if fam.canonical_rate(1).is_none() {
            return invalid(format!("{} has no canonical rate", fam.tag()));
        }
        let fam = fam.clone();
        Ok(RateFn { tag: format!("canonical[{}]", fam.tag()), f: Arc::new(move |n| fam.canonical_rate(n).unwrap()) })
    }

    pub fn custom<F: Fn(u64) -> f64 + Send + Sync + 'static>(tag: &str, f: F) -> Self {
        RateFn { tag: tag.to_string(), f: Arc::new(f) }
    }

    pub fn rate(&self, n: u64) -> f64 {
        (self.f)(n)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }
}

pub fn make_diagonal(fam: DiagonalFamily) -> DiagonalFamily {
    fam
}

/// `D_n^r(u) = δ_n(u^{1/r_n})`.
pub fn power_distortion(fam: &DiagonalFamily, r: &RateFn, n: u64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    fam.delta_log(n, u.ln() / r.rate(n))
}

/// `D_n^r(e^{-s})`.
pub fn power_distortion_neg_log(fam: &DiagonalFamily, r: &RateFn, n: u64, s: f64) -> f64 {
    if s <= 0.0 {
        return 1.0;
    }
    fam.delta_log(n, -s / r.rate(n))
}

/// `sup_u |D_n^r(u) - D(u)|`.
///
/// Scans a uniform grid of `grid_size` points on `[0, 1]` and a log-spaced
/// grid of `s = -log u` over `[1e-8, 1e8]`, the latter reaching levels far
/// below the smallest double, then refines the best point by golden-section
/// search between its grid neighbours.
pub fn distortion_sup_distance(
    fam: &DiagonalFamily,
    r: &RateFn,
    n: u64,
    d: &Distortion,
    grid_size: usize,
) -> Result<f64> {
    if grid_size < 100 {
        return Err(Error::Contract(format!("grid_size must be at least 100, got {grid_size}")));
    }
    let rn = r.rate(n);
    let gap_u = |u: f64| (power_distortion(fam, r, n, u) - d.cdf(u)).abs();
    let gap_s = |w: f64| {
        let s = w.exp();
        let dn = if s > 0.0 { fam.delta_log(n, -s / rn) } else { 1.0 };
        (dn - d.cdf_neg_log(s)).abs()
    };
    let ugrid = linspace(0.0, 1.0, grid_size);
    let wgrid = linspace(-8.0 * std::f64::consts::LN_10, 8.0 * std::f64::consts::LN_10, grid_size);
    let best = |grid: &[f64], f: &dyn Fn(f64) -> f64| {
        let (mut bi, mut bv) = (0, f64::NEG_INFINITY);
        for (i, &x) in grid.iter().enumerate() {
            let v = f(x);
            if v > bv {
                bi = i;
                bv = v;
            }
        }
        let lo = grid[bi.saturating_sub(1)];
        let hi = grid[(bi + 1).min(grid.len() - 1)];
        let (_, gv) = golden_max(f, lo, hi, 1e-15 * (hi - lo).abs().max(1e-300));
        bv.max(gv)
    };
    Ok(best(&ugrid, &gap_u).max(best(&wgrid, &gap_s)))
}

/// `r_{⌈n t⌉} / r_n` along `n_values`.
pub fn rate_scaling_limit(r: &RateFn, t: f64, n_values: &[u64]) -> Vec<f64> {
    n_values
        .iter()
        .map(|&n| {
            let m = ((n as f64 * t).ceil() as u64).max(1);
            r.rate(m) / r.rate(n)
        })
        .collect()
}

/// `|δ_{a+b}(v) - δ_a(v) δ_b(v)|` with `a = ⌈n t1⌉`, `b = ⌈n t2⌉` and
/// `v = u^{1/r_n}`.
///
/// The level `v` plays the role of `F(u_n)` for thresholds `u_n = c_n x + d_n`
/// with `u = D^{-1}(G(x))`-type choices left to the caller. Independence of
/// the two blocks `{1..a}` and `{a+1..a+b}` would make the discrepancy vanish.
pub fn mixing_discrepancy(
    fam: &DiagonalFamily,
    r: &RateFn,
    n: u64,
    t1: f64,
    t2: f64,
    u: f64,
) -> Result<f64> {
    if !fam.is_exchangeable() {
        return Err(Error::Contract(format!("{} is not exchangeable", fam.tag())));
    }
    if !(t1 > 0.0 && t2 > 0.0 && t1 + t2 < 1.0) {
        return Err(Error::Contract(format!("need t1, t2 > 0 with t1 + t2 < 1, got {t1}, {t2}")));
    }
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Contract(format!("level u must lie in (0,1), got {u}")));
    }
    let (a, b) = mixing_blocks(n, t1, t2);
    let l = u.ln() / r.rate(n);
    Ok((fam.delta_log(a + b, l) - fam.delta_log(a, l) * fam.delta_log(b, l)).abs())
}

/// Block lengths `(⌈n t1⌉, ⌈n t2⌉)`.
pub fn mixing_blocks(n: u64, t1: f64, t2: f64) -> (u64, u64) {
    let c = |t: f64| ((n as f64 * t).ceil() as u64).max(1);
    (c(t1), c(t2))
}

/// One Monte Carlo estimate of `δ_n(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalSample {
    pub n: u64,
    pub u: f64,
    pub estimate: McEstimate,
}

/// Largest `|p̂ - δ_n(u)| / se` over the samples.
pub fn empirical_diagonal_distance(fam: &DiagonalFamily, samples: &[DiagonalSample]) -> Result<f64> {
    let mut z: f64 = 0.0;
    for s in samples {
        if !(s.estimate.std_error > 0.0) {
            return Err(Error::Contract(format!(
                "zero standard error at n={}, u={}",
                s.n, s.u
            )));
        }
        z = z.max((s.estimate.value - fam.delta(s.n, s.u)).abs() / s.estimate.std_error);
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{builtin_generator, Family};

    #[test]
    fn diagonal_examples() {
        assert!((DiagonalFamily::MovingMax { k: 1 }.delta(3, 0.5) - 0.25).abs() < 1e-15);
        let ca = DiagonalFamily::cuadras_auge(0.5).unwrap();
        assert!((ca.delta(2, 0.81) - 0.729).abs() < 1e-14);
        let cl = DiagonalFamily::Archimedean(builtin_generator(Family::Clayton, 1.0).unwrap());
        assert!((cl.delta(2, 0.5) - 1.0 / 3.0).abs() < 1e-15);
        assert!(DiagonalFamily::cuadras_auge(1.0).is_err());
        assert!(DiagonalFamily::efgm(1.5).is_err());
    }

    #[test]
    fn distortion_examples() {
        let id = RateFn::identity();
        for n in [1u64, 3, 100] {
            for u in [0.1, 0.5, 0.99] {
                let v = power_distortion(&DiagonalFamily::Independence, &id, n, u);
                assert!((v - u).abs() < 1e-15);
            }
        }
        let mm = DiagonalFamily::MovingMax { k: 1 };
        assert!((power_distortion(&mm, &id, 3, 0.5) - 0.5f64.powf(4.0 / 6.0)).abs() < 1e-15);
        let ca = DiagonalFamily::cuadras_auge(0.5).unwrap();
        let r = RateFn::canonical(&ca).unwrap();
        for n in [1u64, 2, 10, 60] {
            for u in [0.01, 0.5, 0.9] {
                assert!((power_distortion(&ca, &r, n, u) - u).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sup_distance_examples() {
        let mm = DiagonalFamily::MovingMax { k: 1 };
        let d = Distortion::Power { theta: 0.5 };
        let s = distortion_sup_distance(&mm, &RateFn::identity(), 10, &d, 1000).unwrap();
        let exact = (1.0 / 11.0) * 1.1f64.powf(-10.0);
        assert!((s - exact).abs() < 1e-12, "{s} vs {exact}");
        let ind = distortion_sup_distance(
            &DiagonalFamily::Independence,
            &RateFn::identity(),
            50,
            &Distortion::identity(),
            100,
        )
        .unwrap();
        assert!(ind < 1e-15);
        let cl = DiagonalFamily::Archimedean(builtin_generator(Family::Clayton, 2.0).unwrap());
        let r = RateFn::canonical(&cl).unwrap();
        let lim = cl.limit_distortion().unwrap();
        let a = distortion_sup_distance(&cl, &r, 100, &lim, 1000).unwrap();
        let b = distortion_sup_distance(&cl, &r, 1000, &lim, 1000).unwrap();
        assert!(b < a);
        assert!(distortion_sup_distance(&cl, &r, 10, &lim, 99).is_err());
    }

    #[test]
    fn rate_scaling_examples() {
        assert_eq!(rate_scaling_limit(&RateFn::identity(), 0.5, &[1000]), vec![0.5]);
        let sq = RateFn::power(0.5).unwrap();
        assert!((rate_scaling_limit(&sq, 0.25, &[10_000])[0] - 0.5).abs() < 1e-15);
        let cl = DiagonalFamily::Archimedean(builtin_generator(Family::Clayton, 1.0).unwrap());
        let r = RateFn::canonical(&cl).unwrap();
        let v = rate_scaling_limit(&r, 2.0, &[1000])[0];
        assert!((v - 2001.0 / 1001.0).abs() < 1e-9);
    }

    #[test]
    fn mixing_examples() {
        let id = RateFn::identity();
        let m = mixing_discrepancy(&DiagonalFamily::Independence, &id, 100, 0.25, 0.25, 0.5).unwrap();
        assert!(m < 1e-15);
        let pd = DiagonalFamily::PowerDiagonal(EtaSchedule::logistic(2.0).unwrap());
        let r = RateFn::canonical(&pd).unwrap();
        let m = mixing_discrepancy(&pd, &r, 1_000_000, 0.25, 0.25, 0.5).unwrap();
        assert!((m - (0.5f64.powf(0.5f64.sqrt()) - 0.5)).abs() < 5e-3);
        let cl = DiagonalFamily::Archimedean(builtin_generator(Family::Clayton, 1.0).unwrap());
        let r = RateFn::canonical(&cl).unwrap();
        let m = mixing_discrepancy(&cl, &r, 10_000, 0.25, 0.25, 0.5).unwrap();
        assert!(m > 0.01);
        assert!(mixing_discrepancy(&DiagonalFamily::MovingMax { k: 1 }, &id, 10, 0.2, 0.2, 0.5).is_err());
        assert!(mixing_discrepancy(&pd, &r, 10, 0.6, 0.5, 0.5).is_err());
    }

    #[test]
    fn empirical_distance_examples() {
        let cl = DiagonalFamily::Archimedean(builtin_generator(Family::Clayton, 2.0).unwrap());
        let truth = cl.delta(5, 0.5);
        let est = McEstimate::from_count((truth * 1e4).round() as u64, 10_000);
        let s = [DiagonalSample { n: 5, u: 0.5, estimate: est }];
        assert!(empirical_diagonal_distance(&cl, &s).unwrap() < 1.0);
        assert!(empirical_diagonal_distance(&DiagonalFamily::Independence, &s).unwrap() > 4.0);
        let zero = [DiagonalSample { n: 5, u: 0.5, estimate: McEstimate::from_count(0, 10) }];
        assert!(empirical_diagonal_distance(&cl, &zero).is_err());
    }
}
