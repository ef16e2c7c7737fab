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

//! Continuous marginal laws, their iid normalizing sequences and the known
//! iid uniform convergence rates.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use statrs::function::erf::{erfc, erfc_inv};

use crate::error::{domain, invalid, Error, Result};
use crate::gev::GevParams;
use crate::numerics::bisect;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type NormalizerFn = Arc<dyn Fn(u64) -> (f64, f64) + Send + Sync>;

/// A user supplied margin. The callables must be pure.
#[derive(Clone)]
pub struct GenericMargin {
    pub name: String,
    pub cdf: RealFn,
    pub quantile: RealFn,
    /// Optional `n ↦ (c*_n, d*_n)` together with the iid limit.
    pub normalizers: Option<(NormalizerFn, GevParams)>,
}

#[derive(Clone)]
pub enum MarginFamily {
    UnitFrechet,
    Frechet { alpha: f64 },
    Exponential { lambda: f64 },
    StandardNormal,
    Uniform01,
    Pareto { alpha: f64 },
    Generic(GenericMargin),
}

impl fmt::Debug for MarginFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// iid normalizing constants and the limit they produce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalizers {
    pub c_star: f64,
    pub d_star: f64,
    pub limit: GevParams,
}

/// Standard normal cdf.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal upper tail `1 - Φ(x)`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal quantile with one Newton polish step.
pub fn normal_quantile(q: f64) -> f64 {
    let x = -SQRT_2 * erfc_inv(2.0 * q);
    if !x.is_finite() {
        return x;
    }
    let pdf = normal_pdf(x);
    if pdf <= 0.0 {
        return x;
    }
    let err = if q < 0.5 { normal_cdf(x) - q } else { (1.0 - q) - normal_sf(x) };
    x - err / pdf
}

/// Root `b` of `2π b² e^{b²} = n²`, used as the normal location constant.
pub fn hall_b(n: u64) -> f64 {
    let ln_n = (n as f64).ln();
    let g = |b: f64| (2.0 * PI).ln() + 2.0 * b.ln() + b * b - 2.0 * ln_n;
    let hi = (2.0 * ln_n).sqrt() + 2.0;
    bisect(g, 1.0, hi, 1e-13)
}

impl MarginFamily {
    pub fn frechet(alpha: f64) -> Result<Self> {
        positive("Frechet alpha", alpha)?;
        Ok(MarginFamily::Frechet { alpha })
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        positive("Exponential lambda", lambda)?;
        Ok(MarginFamily::Exponential { lambda })
    }

    pub fn pareto(alpha: f64) -> Result<Self> {
        positive("Pareto alpha", alpha)?;
        Ok(MarginFamily::Pareto { alpha })
    }

    pub fn name(&self) -> String {
        match self {
            MarginFamily::UnitFrechet => "unit-frechet".into(),
            MarginFamily::Frechet { alpha } => format!("frechet({alpha})"),
            MarginFamily::Exponential { lambda } => format!("exponential({lambda})"),
            MarginFamily::StandardNormal => "normal".into(),
            MarginFamily::Uniform01 => "uniform".into(),
            MarginFamily::Pareto { alpha } => format!("pareto({alpha})"),
            MarginFamily::Generic(g) => g.name.clone(),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            MarginFamily::UnitFrechet => frechet_cdf(1.0, x),
            MarginFamily::Frechet { alpha } => frechet_cdf(*alpha, x),
            MarginFamily::Exponential { lambda } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-lambda * x).exp_m1()
                }
            }
            MarginFamily::StandardNormal => normal_cdf(x),
            MarginFamily::Uniform01 => x.clamp(0.0, 1.0),
            MarginFamily::Pareto { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    -(-alpha * x.ln()).exp_m1()
                }
            }
            MarginFamily::Generic(g) => (g.cdf)(x),
        }
    }

    /// `log F(x)`, accurate in the upper tail where `F` is close to one.
    pub fn log_cdf(&self, x: f64) -> f64 {
        match self {
            MarginFamily::UnitFrechet => frechet_log_cdf(1.0, x),
            MarginFamily::Frechet { alpha } => frechet_log_cdf(*alpha, x),
            MarginFamily::Exponential { lambda } => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    (-(-lambda * x).exp()).ln_1p()
                }
            }
            MarginFamily::StandardNormal => {
                if x > 0.0 {
                    (-normal_sf(x)).ln_1p()
                } else {
                    normal_cdf(x).ln()
                }
            }
            MarginFamily::Uniform01 => {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else if x >= 1.0 {
                    0.0
                } else {
                    x.ln()
                }
            }
            MarginFamily::Pareto { alpha } => {
                if x <= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    (-(-alpha * x.ln()).exp()).ln_1p()
                }
            }
            MarginFamily::Generic(g) => (g.cdf)(x).ln(),
        }
    }

    /// `F(x)^n` computed as `exp(n log F(x))`.
    pub fn cdf_pow(&self, x: f64, n: f64) -> f64 {
        (n * self.log_cdf(x)).exp()
    }

    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("margin quantile needs q in (0,1), got {q}"));
        }
        Ok(match self {
            MarginFamily::UnitFrechet => -1.0 / q.ln(),
            MarginFamily::Frechet { alpha } => (-q.ln()).powf(-1.0 / alpha),
            MarginFamily::Exponential { lambda } => -(-q).ln_1p() / lambda,
            MarginFamily::StandardNormal => normal_quantile(q),
            MarginFamily::Uniform01 => q,
            MarginFamily::Pareto { alpha } => (-(-q).ln_1p() / alpha).exp(),
            MarginFamily::Generic(g) => (g.quantile)(q),
        })
    }

    /// Quantile for a probability given through its logarithm, which keeps
    /// resolution when the probability is within rounding of one.
    pub fn quantile_from_log(&self, log_q: f64) -> f64 {
        if log_q >= 0.0 {
            return self.upper_endpoint();
        }
        if log_q == f64::NEG_INFINITY {
            return self.lower_endpoint();
        }
        // 1 - q without cancellation
        let p = -log_q.exp_m1();
        match self {
            MarginFamily::UnitFrechet => -1.0 / log_q,
            MarginFamily::Frechet { alpha } => (-log_q).powf(-1.0 / alpha),
            MarginFamily::Exponential { lambda } => -p.ln() / lambda,
            MarginFamily::StandardNormal => {
                if p < 0.5 {
                    -normal_quantile(p)
                } else {
                    normal_quantile(log_q.exp())
                }
            }
            MarginFamily::Uniform01 => log_q.exp(),
            MarginFamily::Pareto { alpha } => (-p.ln() / alpha).exp(),
            MarginFamily::Generic(g) => (g.quantile)(log_q.exp()),
        }
    }

    fn lower_endpoint(&self) -> f64 {
        match self {
            MarginFamily::UnitFrechet
            | MarginFamily::Frechet { .. }
            | MarginFamily::Exponential { .. }
            | MarginFamily::Uniform01 => 0.0,
            MarginFamily::Pareto { .. } => 1.0,
            _ => f64::NEG_INFINITY,
        }
    }

    fn upper_endpoint(&self) -> f64 {
        match self {
            MarginFamily::Uniform01 => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn iid_normalizers(&self, n: u64) -> Result<Normalizers> {
        if n < 2 {
            return domain(format!("iid normalizers need n >= 2, got {n}"));
        }
        let nf = n as f64;
        let gumbel = GevParams::gumbel();
        let frechet_limit = |alpha: f64| GevParams { xi: 1.0 / alpha, mu: 1.0, sigma: 1.0 / alpha };
        Ok(match self {
            MarginFamily::Exponential { lambda } => {
                Normalizers { c_star: 1.0 / lambda, d_star: nf.ln() / lambda, limit: gumbel }
            }
            MarginFamily::UnitFrechet => {
                Normalizers { c_star: nf, d_star: 0.0, limit: frechet_limit(1.0) }
            }
            MarginFamily::Frechet { alpha } | MarginFamily::Pareto { alpha } => Normalizers {
                c_star: nf.powf(1.0 / alpha),
                d_star: 0.0,
                limit: frechet_limit(*alpha),
            },
            MarginFamily::Uniform01 => Normalizers {
                c_star: 1.0 / nf,
                d_star: 1.0,
                limit: GevParams { xi: -1.0, mu: -1.0, sigma: 1.0 },
            },
            MarginFamily::StandardNormal => {
                let b = hall_b(n);
                Normalizers { c_star: 1.0 / b, d_star: b, limit: gumbel }
            }
            MarginFamily::Generic(g) => match &g.normalizers {
                Some((f, limit)) => {
                    let (c_star, d_star) = f(n);
                    Normalizers { c_star, d_star, limit: *limit }
                }
                None => return Err(Error::NoNormalizer(g.name.clone())),
            },
        })
    }

    /// Known bound `β*(n)` on `sup_x |F^n(c*_n x + d*_n) - H(x)|`.
    pub fn iid_uniform_rate(&self, n: u64) -> Result<f64> {
        if n < 2 {
            return domain(format!("iid rate needs n >= 2, got {n}"));
        }
        match self {
            MarginFamily::StandardNormal => Ok(3.0 / (n as f64).ln()),
            MarginFamily::UnitFrechet | MarginFamily::Frechet { .. } => Ok(0.0),
            other => Err(Error::UnknownRate(other.name())),
        }
    }
}

fn positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{what} must be positive, got {v}"))
    }
}

fn frechet_cdf(alpha: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-x.powf(-alpha)).exp()
    }
}

fn frechet_log_cdf(alpha: f64, x: f64) -> f64 {
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        -x.powf(-alpha)
    }
}

pub fn margin_cdf(m: &MarginFamily, x: f64) -> f64 {
    m.cdf(x)
}

pub fn margin_quantile(m: &MarginFamily, q: f64) -> Result<f64> {
    m.quantile(q)
}

pub fn iid_normalizers(m: &MarginFamily, n: u64) -> Result<Normalizers> {
    m.iid_normalizers(n)
}

pub fn iid_uniform_rate(m: &MarginFamily, n: u64) -> Result<f64> {
    m.iid_uniform_rate(n)
}

/// `sup` over a grid of limit quantiles of `|F^n(c*_n x + d*_n) - H(x)|`.
pub fn iid_grid_sup(m: &MarginFamily, n: u64, grid_size: usize) -> Result<f64> {
    let norm = m.iid_normalizers(n)?;
    let mut sup: f64 = 0.0;
    for q in crate::numerics::linspace(0.0005, 0.9995, grid_size) {
        let x = norm.limit.quantile(q)?;
        let fnx = m.cdf_pow(norm.c_star * x + norm.d_star, n as f64);
        sup = sup.max((fnx - norm.limit.cdf(x)).abs());
    }
    Ok(sup)
}
