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

//! Archimedean generators.
//!
//! Every generator carries its regular variation index `ρ` (the index of
//! `t ↦ 1 - ψ(1/t)`) and the right derivative `-ψ'(0) ∈ (0, ∞]`. Besides `ψ`
//! itself the complement `1 - ψ(t)` is available in cancellation-free form,
//! since rates such as `1/(1 - ψ(1/n))` need it to full relative precision.
//!
//! | family      | `ψ(t)`                              | `ρ`   | `-ψ'(0)`      |
//! |-------------|-------------------------------------|-------|---------------|
//! | independence| `e^{-t}`                            | 1     | 1             |
//! | AMH         | `(1-θ)/(e^t-θ)`                     | 1     | `1/(1-θ)`     |
//! | Clayton     | `(1+t)^{-1/θ}`                      | 1     | `1/θ`         |
//! | Frank       | `-log(1+e^{-t}(e^{-θ}-1))/θ`        | 1     | `(e^θ-1)/θ`   |
//! | Gumbel      | `exp(-t^{1/θ})`                     | `1/θ` | `∞` (θ > 1)   |
//! | Joe         | `1-(1-e^{-t})^{1/θ}`                | `1/θ` | `∞`           |
//! | Ballerini   | `1/(t(1+1/t)^{1+t})`                | 1     | `∞`           |

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{domain, invalid, Error, Result};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Builtin generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Independence,
    Amh,
    Clayton,
    Frank,
    Gumbel,
    Joe,
    Ballerini,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "independence" | "indep" | "product" => Family::Independence,
            "amh" | "ali-mikhail-haq" => Family::Amh,
            "clayton" => Family::Clayton,
            "frank" => Family::Frank,
            "gumbel" | "gumbel-hougaard" | "logistic" => Family::Gumbel,
            "joe" => Family::Joe,
            "ballerini" => Family::Ballerini,
            other => return invalid(format!("unknown generator family '{other}'")),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Independence => "independence",
            Family::Amh => "amh",
            Family::Clayton => "clayton",
            Family::Frank => "frank",
            Family::Gumbel => "gumbel",
            Family::Joe => "joe",
            Family::Ballerini => "ballerini",
        };
        f.write_str(s)
    }
}

/// A generator `ψ = exp(-f)` built from a user function.
#[derive(Clone)]
pub struct FGenerator {
    pub name: String,
    f: RealFn,
    f_prime: RealFn,
}

#[derive(Clone)]
pub enum GeneratorKind {
    Independence,
    Amh { theta: f64 },
    Clayton { theta: f64 },
    Frank { theta: f64 },
    Gumbel { theta: f64 },
    Joe { theta: f64 },
    Ballerini,
    FromF(FGenerator),
}

/// An Archimedean generator `t ↦ ψ(c t)` with base kind and scale `c`.
#[derive(Clone)]
pub struct ArchGenerator {
    kind: GeneratorKind,
    scale: f64,
    rho: f64,
    neg_psi_prime_0: f64,
}

impl fmt::Debug for ArchGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArchGenerator({})", self.tag())
    }
}

pub fn builtin_generator(family: Family, theta: f64) -> Result<ArchGenerator> {
    let need = |ok: bool, range: &str| {
        if ok && theta.is_finite() {
            Ok(())
        } else {
            invalid(format!("{family} parameter must satisfy {range}, got {theta}"))
        }
    };
    let (kind, rho, npp0) = match family {
        Family::Independence => (GeneratorKind::Independence, 1.0, 1.0),
        Family::Amh => {
            need(theta > 0.0 && theta < 1.0, "0 < theta < 1")?;
            (GeneratorKind::Amh { theta }, 1.0, 1.0 / (1.0 - theta))
        }
        Family::Clayton => {
            need(theta > 0.0, "theta > 0")?;
            (GeneratorKind::Clayton { theta }, 1.0, 1.0 / theta)
        }
        Family::Frank => {
            need(theta > 0.0 && theta < 700.0, "0 < theta < 700")?;
            (GeneratorKind::Frank { theta }, 1.0, theta.exp_m1() / theta)
        }
        Family::Gumbel => {
            need(theta >= 1.0, "theta >= 1")?;
            let npp0 = if theta == 1.0 { 1.0 } else { f64::INFINITY };
            (GeneratorKind::Gumbel { theta }, 1.0 / theta, npp0)
        }
        Family::Joe => {
            need(theta > 1.0, "theta > 1")?;
            (GeneratorKind::Joe { theta }, 1.0 / theta, f64::INFINITY)
        }
        Family::Ballerini => (GeneratorKind::Ballerini, 1.0, f64::INFINITY),
    };
    Ok(ArchGenerator { kind, scale: 1.0, rho, neg_psi_prime_0: npp0 })
}

/// Build `ψ = exp(-f)` from an increasing `f` with `f(0) = 0`.
///
/// `f` and `f'` are checked on a 1000-point log grid over `[1e-8, 1e8]`:
/// `f` strictly increasing, `f'` positive and nonincreasing. `-ψ'(0) = f'(0+)`
/// is probed at `1e-10` and reported infinite when the probe exceeds `1e12`
/// or when `f'` still grows markedly between `1e-10` and `1e-20`. When `rho`
/// is `None` it is estimated with [`rv_index_estimate`] at `λ = 2, t = 1e8`.
pub fn generator_from_f<F, G>(
    name: &str,
    f: F,
    f_prime: G,
    rho: Option<f64>,
) -> Result<ArchGenerator>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    G: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let f0 = f(0.0);
    if f0.is_finite() {
        if f0.abs() >= 1e-12 {
            return invalid(format!("f(0) must vanish, got {f0}"));
        }
    } else if f(1e-12).abs() >= 1e-8 {
        return invalid("f(0+) must vanish");
    }
    let grid: Vec<f64> = (0..1000).map(|i| 10f64.powf(-8.0 + 16.0 * i as f64 / 999.0)).collect();
    let mut prev_f = f64::NEG_INFINITY;
    let mut prev_d = f64::INFINITY;
    for &t in &grid {
        let (ft, dt) = (f(t), f_prime(t));
        if !(ft > prev_f) {
            return invalid(format!("f is not increasing near t={t:e}"));
        }
        if !(dt > 0.0) {
            return invalid(format!("f' is not positive at t={t:e}"));
        }
        if dt > prev_d * (1.0 + 1e-12) {
            return invalid(format!("f' is not nonincreasing near t={t:e}"));
        }
        prev_f = ft;
        prev_d = dt;
    }
    let probe = f_prime(1e-10);
    let deeper = f_prime(1e-20);
    let npp0 = if probe > 1e12 || deeper > 1.5 * probe { f64::INFINITY } else { probe };
    let mut g = ArchGenerator {
        kind: GeneratorKind::FromF(FGenerator {
            name: name.to_string(),
            f: Arc::new(f),
            f_prime: Arc::new(f_prime),
        }),
        scale: 1.0,
        rho: 1.0,
        neg_psi_prime_0: npp0,
    };
    g.rho = match rho {
        Some(r) if r > 0.0 && r <= 1.0 => r,
        Some(r) => return invalid(format!("rho must lie in (0,1], got {r}")),
        None => rv_index_estimate(&g, 2.0, 1e8)?,
    };
    Ok(g)
}

/// `t ↦ ψ(c t)`, which generates the same Archimedean copula.
pub fn scale_generator(g: &ArchGenerator, c: f64) -> Result<ArchGenerator> {
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("scale must be positive, got {c}"));
    }
    Ok(ArchGenerator {
        kind: g.kind.clone(),
        scale: g.scale * c,
        rho: g.rho,
        neg_psi_prime_0: g.neg_psi_prime_0 * c,
    })
}

/// Ballerini's `f(t) = (1+t) log(1+1/t) + log t`, evaluated without cancellation.
fn ballerini_f(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t <= 1.0 {
        (1.0 + t) * t.ln_1p() - t * t.ln()
    } else {
        (1.0 + t) * (1.0 / t).ln_1p() + t.ln()
    }
}

fn ballerini_f_prime(t: f64) -> f64 {
    (1.0 / t).ln_1p()
}

/// Solve `f(t) = y` for increasing `f` by bisection in `log t`.
fn invert_increasing(f: &dyn Fn(f64) -> f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y.is_infinite() {
        return f64::INFINITY;
    }
    let (mut lo, mut hi) = (-12.0 * std::f64::consts::LN_10, 12.0 * std::f64::consts::LN_10);
    while f(lo.exp()) > y && lo > -700.0 {
        lo -= 20.0;
    }
    while f(hi.exp()) < y && hi < 700.0 {
        hi += 20.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * mid.abs().max(1.0) {
            break;
        }
        if f(mid.exp()) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

impl ArchGenerator {
    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Regular variation index of `t ↦ 1 - ψ(1/t)`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `-ψ'(0)`, possibly infinite.
    pub fn neg_psi_prime_0(&self) -> f64 {
        self.neg_psi_prime_0
    }

    pub fn family(&self) -> Option<Family> {
        Some(match self.kind {
            GeneratorKind::Independence => Family::Independence,
            GeneratorKind::Amh { .. } => Family::Amh,
            GeneratorKind::Clayton { .. } => Family::Clayton,
            GeneratorKind::Frank { .. } => Family::Frank,
            GeneratorKind::Gumbel { .. } => Family::Gumbel,
            GeneratorKind::Joe { .. } => Family::Joe,
            GeneratorKind::Ballerini => Family::Ballerini,
            GeneratorKind::FromF(_) => return None,
        })
    }

    pub fn theta(&self) -> Option<f64> {
        match self.kind {
            GeneratorKind::Amh { theta }
            | GeneratorKind::Clayton { theta }
            | GeneratorKind::Frank { theta }
            | GeneratorKind::Gumbel { theta }
            | GeneratorKind::Joe { theta } => Some(theta),
            _ => None,
        }
    }

    pub fn tag(&self) -> String {
        let base = match &self.kind {
            GeneratorKind::FromF(g) => g.name.clone(),
            _ => match self.theta() {
                Some(t) => format!("{}({t})", self.family().unwrap()),
                None => self.family().unwrap().to_string(),
            },
        };
        if self.scale == 1.0 {
            base
        } else {
            format!("{base}*{}", self.scale)
        }
    }

    pub fn psi(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        let s = self.scale * t;
        if s.is_infinite() {
            return 0.0;
        }
        match &self.kind {
            GeneratorKind::Independence => (-s).exp(),
            GeneratorKind::Amh { theta } => {
                let e = (-s).exp();
                (1.0 - theta) * e / (1.0 - theta * e)
            }
            GeneratorKind::Clayton { theta } => (-s.ln_1p() / theta).exp(),
            GeneratorKind::Frank { theta } => {
                let a = -(-theta).exp_m1();
                -(-a * (-s).exp()).ln_1p() / theta
            }
            GeneratorKind::Gumbel { theta } => (-s.powf(1.0 / theta)).exp(),
            GeneratorKind::Joe { theta } => -((-(-s).exp()).ln_1p() / theta).exp_m1(),
            GeneratorKind::Ballerini => (-ballerini_f(s)).exp(),
            GeneratorKind::FromF(g) => (-(g.f)(s)).exp(),
        }
    }

    /// `1 - ψ(t)` without cancellation for small `t`.
    pub fn psi_complement(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let s = self.scale * t;
        if s.is_infinite() {
            return 1.0;
        }
        match &self.kind {
            GeneratorKind::Independence => -(-s).exp_m1(),
            GeneratorKind::Amh { theta } => {
                let e = s.exp_m1();
                if e.is_infinite() {
                    1.0
                } else {
                    e / (e + 1.0 - theta)
                }
            }
            GeneratorKind::Clayton { theta } => -(-s.ln_1p() / theta).exp_m1(),
            GeneratorKind::Frank { theta } => {
                (theta.exp_m1() * -(-s).exp_m1()).ln_1p() / theta
            }
            GeneratorKind::Gumbel { theta } => -(-s.powf(1.0 / theta)).exp_m1(),
            GeneratorKind::Joe { theta } => (-(-s).exp_m1()).powf(1.0 / theta),
            GeneratorKind::Ballerini => -(-ballerini_f(s)).exp_m1(),
            GeneratorKind::FromF(g) => -(-(g.f)(s)).exp_m1(),
        }
    }

    /// `ψ'(t)`; at `t = 0` the right derivative `-neg_psi_prime_0`.
    pub fn psi_prime(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return -self.neg_psi_prime_0;
        }
        let c = self.scale;
        let s = c * t;
        if s.is_infinite() {
            return 0.0;
        }
        let d = match &self.kind {
            GeneratorKind::Independence => -(-s).exp(),
            GeneratorKind::Amh { theta } => {
                let e = (-s).exp();
                let q = 1.0 - theta * e;
                -(1.0 - theta) * e / (q * q)
            }
            GeneratorKind::Clayton { theta } => -((-1.0 / theta - 1.0) * s.ln_1p()).exp() / theta,
            GeneratorKind::Frank { theta } => {
                let a = -(-theta).exp_m1();
                let ae = a * (-s).exp();
                -ae / (theta * (1.0 - ae))
            }
            GeneratorKind::Gumbel { theta } => {
                let p = s.powf(1.0 / theta);
                -p / (theta * s) * (-p).exp()
            }
            GeneratorKind::Joe { theta } => {
                let w = -(-s).exp_m1();
                -w.powf(1.0 / theta - 1.0) * (-s).exp() / theta
            }
            GeneratorKind::Ballerini => -(-ballerini_f(s)).exp() * ballerini_f_prime(s),
            GeneratorKind::FromF(g) => -(-(g.f)(s)).exp() * (g.f_prime)(s),
        };
        c * d
    }

    /// `ψ^{-1}(u)` for `u ∈ [0, 1]`, with `ψ^{-1}(0) = ∞`.
    pub fn psi_inv(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return f64::INFINITY;
        }
        self.psi_inv_log(u.ln())
    }

    /// `ψ^{-1}(e^{l})` for `l ≤ 0`. Passing the logarithm keeps full accuracy
    /// for levels `u^{1/r}` with huge `r`, where `u` itself would round to 1.
    pub fn psi_inv_log(&self, l: f64) -> f64 {
        if l >= 0.0 {
            return 0.0;
        }
        if l == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        // w = 1 - u
        let w = -l.exp_m1();
        let s = match &self.kind {
            GeneratorKind::Independence => -l,
            GeneratorKind::Amh { theta } => (-theta * w).ln_1p() - l,
            GeneratorKind::Clayton { theta } => (-theta * l).exp_m1(),
            GeneratorKind::Frank { theta } => {
                if w < 0.5 {
                    -(-(theta * w).exp_m1() / theta.exp_m1()).ln_1p()
                } else {
                    let u = l.exp();
                    -((-theta * u).exp_m1() / (-theta).exp_m1()).ln()
                }
            }
            GeneratorKind::Gumbel { theta } => (-l).powf(*theta),
            GeneratorKind::Joe { theta } => {
                if w < 0.5 {
                    -(-w.powf(*theta)).ln_1p()
                } else {
                    // 1 - (1-u)^θ for small u
                    -(-(theta * (-l.exp()).ln_1p()).exp_m1()).ln()
                }
            }
            GeneratorKind::Ballerini => invert_increasing(&ballerini_f, -l),
            GeneratorKind::FromF(g) => {
                let f = g.f.clone();
                invert_increasing(&move |t| f(t), -l)
            }
        };
        s / self.scale
    }
}

/// Finite-`t` estimate of `ρ`:
/// `-log[(1 - ψ(1/(λt))) / (1 - ψ(1/t))] / log λ`.
pub fn rv_index_estimate(g: &ArchGenerator, lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda != 1.0 && lambda.is_finite()) {
        return domain(format!("lambda must be positive and different from 1, got {lambda}"));
    }
    if !(t >= 1e4) {
        return domain(format!("rv_index_estimate needs t >= 1e4, got {t}"));
    }
    let num = g.psi_complement(1.0 / (lambda * t));
    let den = g.psi_complement(1.0 / t);
    if !(num >= f64::MIN_POSITIVE && den >= f64::MIN_POSITIVE) {
        return Err(Error::Precision(format!(
            "1 - psi underflows at t={t:e}; use a larger lambda or smaller t"
        )));
    }
    Ok(-(num / den).ln() / lambda.ln())
}

/// `t^ρ (1 - ψ(1/t))` along `t_values`.
pub fn polynomial_growth_trajectory(g: &ArchGenerator, rho: f64, t_values: &[f64]) -> Vec<f64> {
    t_values.iter().map(|&t| t.powf(rho) * g.psi_complement(1.0 / t)).collect()
}
