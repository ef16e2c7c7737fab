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

//! Frailties `V` with `E[e^{-tV}] = ψ(t)` for the built-in generators.

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use statrs::function::beta::ln_beta;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::generators::{ArchGenerator, GeneratorKind};

#[derive(Debug, Clone)]
enum Law {
    One,
    Gamma(Gamma<f64>),
    /// positive stable with index `alpha < 1`
    Stable { alpha: f64 },
    /// logarithmic series, `ln(1-p) = -theta`
    LogSeries { theta: f64 },
    /// Sibuya with parameter `alpha`, and `Γ(1-α)`
    Sibuya { alpha: f64, gamma_1ma: f64 },
    /// geometric on `{1, 2, …}` with success probability `1 - theta`
    Geometric { ln_theta: f64 },
}

/// Frailty sampler matched to a generator, including its scale.
#[derive(Debug, Clone)]
pub struct Frailty {
    law: Law,
    scale: f64,
}

impl Frailty {
    pub fn for_generator(g: &ArchGenerator) -> Result<Self> {
        let law = match g.kind() {
            GeneratorKind::Independence => Law::One,
            GeneratorKind::Clayton { theta } => Law::Gamma(
                Gamma::new(1.0 / theta, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?,
            ),
            GeneratorKind::Gumbel { theta } if *theta == 1.0 => Law::One,
            GeneratorKind::Gumbel { theta } => Law::Stable { alpha: 1.0 / theta },
            GeneratorKind::Frank { theta } => Law::LogSeries { theta: *theta },
            GeneratorKind::Joe { theta } => {
                let alpha = 1.0 / theta;
                Law::Sibuya { alpha, gamma_1ma: gamma(1.0 - alpha) }
            }
            GeneratorKind::Amh { theta } => Law::Geometric { ln_theta: theta.ln() },
            GeneratorKind::Ballerini | GeneratorKind::FromF(_) => {
                return Err(Error::Unsupported(format!("no frailty sampler for {}", g.tag())));
            }
        };
        Ok(Frailty { law, scale: g.scale() })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v = match &self.law {
            Law::One => 1.0,
            Law::Gamma(d) => d.sample(rng),
            Law::Stable { alpha } => positive_stable(*alpha, rng),
            Law::LogSeries { theta } => log_series(*theta, rng),
            Law::Sibuya { alpha, gamma_1ma } => sibuya(*alpha, *gamma_1ma, rng),
            Law::Geometric { ln_theta } => {
                let u: f64 = rng.sample(Open01);
                1.0 + (u.ln() / ln_theta).floor()
            }
        };
        self.scale * v
    }
}

/// `S` with `E[e^{-tS}] = exp(-t^α)`, `0 < α < 1`, by Kanter's representation.
pub fn positive_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let u: f64 = PI * rng.sample::<f64, _>(Open01);
    let e: f64 = Exp1.sample(rng);
    let b = 1.0 - alpha;
    let ln_a = alpha / b * (alpha * u).sin().ln() + (b * u).sin().ln() - u.sin().ln() / b;
    (b / alpha * (ln_a - e.ln())).exp()
}

/// Logarithmic series with `p = 1 - e^{-θ}` (Kemp's LK algorithm).
fn log_series<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> f64 {
    let p = -(-theta).exp_m1();
    let v: f64 = rng.sample(Open01);
    if v > p {
        return 1.0;
    }
    let w: f64 = rng.sample(Open01);
    let q = -(-theta * w).exp_m1();
    if v < q * q {
        (1.0 + v.ln() / q.ln()).floor()
    } else if v > q {
        1.0
    } else {
        2.0
    }
}

/// Sibuya(α): `P(V = k) = α Γ(k-α) / (Γ(1-α) k!)`.
fn sibuya<R: Rng + ?Sized>(alpha: f64, gamma_1ma: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    if u <= alpha {
        return 1.0;
    }
    let ginv = ((1.0 - u) * gamma_1ma).powf(-1.0 / alpha);
    let fl = ginv.floor();
    if ginv > 9.0e15 {
        return fl;
    }
    if 1.0 - u < 1.0 / (fl * ln_beta(fl, 1.0 - alpha).exp()) {
        ginv.ceil()
    } else {
        fl
    }
}
