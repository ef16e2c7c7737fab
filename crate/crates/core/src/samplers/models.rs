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

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::diagonals::{DiagonalFamily, EtaSchedule};
use crate::error::{invalid, Result};
use crate::generators::ArchGenerator;
use crate::margins::{normal_cdf, normal_sf, MarginFamily};

use super::frailty::{positive_stable, Frailty};

/// A random sequence `Y_1, Y_2, …` with a known copula.
#[derive(Debug, Clone)]
pub enum SequenceModel {
    Iid,
    /// `Y_i = max(Z_i, …, Z_{i-k}) / (k+1)`, `Z` iid unit Fréchet.
    MovingMax { k: u32 },
    /// `U_i = ψ(E_i / V)`.
    ArchimedeanFrailty(ArchGenerator),
    /// `Y_i = V Z_i` with `(Z_i)` logistic max-stable with parameter `theta_stdf`.
    ArchimaxLogistic { generator: ArchGenerator, theta_stdf: f64 },
    /// Stationary `Y_i = φ Y_{i-1} + σ Z_i`.
    GaussianAr1 { phi: f64, sigma: f64 },
    /// Conditionally iid given `W`, with cdf `u - θ(2W-1)u(1-u)`.
    EfgmExchangeable { theta: f64 },
    /// `√ϱ Z_0 + √(1-ϱ) Z_i`.
    BermanEquicorrelated { rho: f64 },
}

impl SequenceModel {
    pub fn moving_max(k: u32) -> Self {
        SequenceModel::MovingMax { k }
    }

    pub fn archimedean(g: ArchGenerator) -> Result<Self> {
        Frailty::for_generator(&g)?;
        Ok(SequenceModel::ArchimedeanFrailty(g))
    }

    pub fn archimax_logistic(generator: ArchGenerator, theta_stdf: f64) -> Result<Self> {
        Frailty::for_generator(&generator)?;
        if !(theta_stdf >= 1.0 && theta_stdf.is_finite()) {
            return invalid(format!("logistic parameter must be >= 1, got {theta_stdf}"));
        }
        Ok(SequenceModel::ArchimaxLogistic { generator, theta_stdf })
    }

    pub fn gaussian_ar1(phi: f64, sigma: f64) -> Result<Self> {
        if !(phi > -1.0 && phi < 1.0 && sigma > 0.0 && sigma.is_finite()) {
            return invalid(format!("AR(1) needs |phi| < 1 and sigma > 0, got {phi}, {sigma}"));
        }
        Ok(SequenceModel::GaussianAr1 { phi, sigma })
    }

    pub fn efgm(theta: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&theta) {
            return invalid(format!("EFGM needs theta in [-1,1], got {theta}"));
        }
        Ok(SequenceModel::EfgmExchangeable { theta })
    }

    pub fn berman(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return invalid(format!("equicorrelation must lie in (0,1), got {rho}"));
        }
        Ok(SequenceModel::BermanEquicorrelated { rho })
    }

    pub fn tag(&self) -> String {
        match self {
            SequenceModel::Iid => "iid".into(),
            SequenceModel::MovingMax { k } => format!("movingmax({k})"),
            SequenceModel::ArchimedeanFrailty(g) => format!("archimedean[{}]", g.tag()),
            SequenceModel::ArchimaxLogistic { generator, theta_stdf } => {
                format!("archimax[{};logistic({theta_stdf})]", generator.tag())
            }
            SequenceModel::GaussianAr1 { phi, sigma } => format!("ar1({phi},{sigma})"),
            SequenceModel::EfgmExchangeable { theta } => format!("efgm({theta})"),
            SequenceModel::BermanEquicorrelated { rho } => format!("berman({rho})"),
        }
    }

    /// The diagonal family of the model's copula, where it has a closed form.
    pub fn diagonal_family(&self) -> Option<DiagonalFamily> {
        Some(match self {
            SequenceModel::Iid => DiagonalFamily::Independence,
            SequenceModel::GaussianAr1 { phi, .. } if *phi == 0.0 => DiagonalFamily::Independence,
            SequenceModel::MovingMax { k } => DiagonalFamily::MovingMax { k: *k },
            SequenceModel::ArchimedeanFrailty(g) => DiagonalFamily::Archimedean(g.clone()),
            SequenceModel::ArchimaxLogistic { generator, theta_stdf } => DiagonalFamily::Archimax(
                generator.clone(),
                EtaSchedule::logistic(*theta_stdf).ok()?,
            ),
            SequenceModel::EfgmExchangeable { theta } => DiagonalFamily::EfgmMixture { theta: *theta },
            _ => return None,
        })
    }
}

/// A draw on the model's native scale, before any margin transform.
#[derive(Clone, Copy)]
enum Latent {
    /// `log U` with `U` uniform
    LogU(f64),
    Normal { x: f64, sd: f64 },
    /// unit Fréchet
    Frechet(f64),
}

/// `log Φ(z)`, accurate in both tails.
fn log_normal_cdf(z: f64) -> f64 {
    if z > 0.0 {
        (-normal_sf(z)).ln_1p()
    } else {
        normal_cdf(z).ln()
    }
}

impl Latent {
    fn log_u(self) -> f64 {
        match self {
            Latent::LogU(l) => l,
            Latent::Normal { x, sd } => log_normal_cdf(x / sd),
            Latent::Frechet(y) => -1.0 / y,
        }
    }

    fn raw(self) -> f64 {
        match self {
            Latent::LogU(l) => l.exp(),
            Latent::Normal { x, .. } => x,
            Latent::Frechet(y) => y,
        }
    }
}

/// Output scale of a path.
#[derive(Clone, Copy)]
pub(crate) enum Scale<'a> {
    Raw,
    LogUniform,
    Margin(&'a MarginFamily),
}

impl<'a> From<Option<&'a MarginFamily>> for Scale<'a> {
    fn from(m: Option<&'a MarginFamily>) -> Self {
        m.map_or(Scale::Raw, Scale::Margin)
    }
}

impl Scale<'_> {
    #[inline]
    fn apply(self, z: Latent) -> f64 {
        match self {
            Scale::Raw => z.raw(),
            Scale::LogUniform => z.log_u(),
            Scale::Margin(m) => m.quantile_from_log(z.log_u()),
        }
    }
}

/// `log ψ(t)`, keeping precision when `ψ(t)` is close to one.
fn log_psi(g: &ArchGenerator, t: f64) -> f64 {
    let c = g.psi_complement(t);
    if c < 0.5 {
        (-c).ln_1p()
    } else {
        g.psi(t).ln()
    }
}

fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

/// A model with its frailties prepared, reusable across reps.
#[derive(Debug, Clone)]
pub(crate) struct Sampler {
    model: SequenceModel,
    frailty: Option<Frailty>,
}

impl Sampler {
    pub(crate) fn new(model: &SequenceModel) -> Result<Self> {
        let frailty = match model {
            SequenceModel::ArchimedeanFrailty(g) => Some(Frailty::for_generator(g)?),
            SequenceModel::ArchimaxLogistic { generator, .. } => Some(Frailty::for_generator(generator)?),
            _ => None,
        };
        Ok(Sampler { model: model.clone(), frailty })
    }

    /// Feed `n` consecutive values of one path to `out`, in order.
    pub(crate) fn visit<R, F>(&self, n: usize, scale: Scale<'_>, rng: &mut R, mut out: F)
    where
        R: Rng + ?Sized,
        F: FnMut(f64),
    {
        let mut emit = |z: Latent| out(scale.apply(z));
        match &self.model {
            SequenceModel::Iid => {
                for _ in 0..n {
                    emit(Latent::LogU(open01(rng).ln()));
                }
            }
            SequenceModel::MovingMax { k } => {
                let w = *k as usize + 1;
                let mut ring: Vec<f64> = (0..w - 1).map(|_| -1.0 / open01(rng).ln()).collect();
                ring.push(0.0);
                for i in 0..n {
                    ring[(i + w - 1) % w] = -1.0 / open01(rng).ln();
                    let m = ring.iter().fold(0.0f64, |a, &b| a.max(b));
                    emit(Latent::Frechet(m / w as f64));
                }
            }
            SequenceModel::ArchimedeanFrailty(g) => {
                let v = self.frailty.as_ref().expect("frailty prepared").sample(rng);
                for _ in 0..n {
                    let e: f64 = Exp1.sample(rng);
                    emit(Latent::LogU(log_psi(g, e / v)));
                }
            }
            SequenceModel::ArchimaxLogistic { generator, theta_stdf } => {
                let v = self.frailty.as_ref().expect("frailty prepared").sample(rng);
                let alpha = 1.0 / theta_stdf;
                let s = if alpha < 1.0 { positive_stable(alpha, rng) } else { 1.0 };
                for _ in 0..n {
                    let e: f64 = Exp1.sample(rng);
                    // 1/Z_i = (E_i/S)^α
                    let inv_z = (e / s).powf(alpha);
                    emit(Latent::LogU(log_psi(generator, inv_z / v)));
                }
            }
            SequenceModel::GaussianAr1 { phi, sigma } => {
                let sd = sigma / (1.0 - phi * phi).sqrt();
                let z0: f64 = StandardNormal.sample(rng);
                let mut y = sd * z0;
                for _ in 0..n {
                    let z: f64 = StandardNormal.sample(rng);
                    y = phi * y + sigma * z;
                    emit(Latent::Normal { x: y, sd });
                }
            }
            SequenceModel::EfgmExchangeable { theta } => {
                let a = theta * (2.0 * open01(rng) - 1.0);
                for _ in 0..n {
                    let v = open01(rng);
                    let u = if a.abs() < 1e-12 {
                        v
                    } else {
                        2.0 * v / ((1.0 - a) + ((1.0 - a) * (1.0 - a) + 4.0 * a * v).sqrt())
                    };
                    emit(Latent::LogU(u.ln()));
                }
            }
            SequenceModel::BermanEquicorrelated { rho } => {
                let z0: f64 = StandardNormal.sample(rng);
                let common = rho.sqrt() * z0;
                let b = (1.0 - rho).sqrt();
                for _ in 0..n {
                    let z: f64 = StandardNormal.sample(rng);
                    emit(Latent::Normal { x: common + b * z, sd: 1.0 });
                }
            }
        }
    }

    /// Law of the path maximum. Where the maximum is a monotone image of one
    /// order statistic it is drawn directly, otherwise the path is folded.
    pub(crate) fn max<R: Rng + ?Sized>(&self, n: usize, scale: Scale<'_>, rng: &mut R) -> f64 {
        let nf = n as f64;
        match &self.model {
            SequenceModel::Iid => scale.apply(Latent::LogU(open01(rng).ln() / nf)),
            SequenceModel::ArchimedeanFrailty(g) => {
                let v = self.frailty.as_ref().expect("frailty prepared").sample(rng);
                let e: f64 = Exp1.sample(rng);
                scale.apply(Latent::LogU(log_psi(g, e / nf / v)))
            }
            SequenceModel::ArchimaxLogistic { generator, theta_stdf } => {
                let v = self.frailty.as_ref().expect("frailty prepared").sample(rng);
                let alpha = 1.0 / theta_stdf;
                let s = if alpha < 1.0 { positive_stable(alpha, rng) } else { 1.0 };
                let e: f64 = Exp1.sample(rng);
                scale.apply(Latent::LogU(log_psi(generator, (e / nf / s).powf(alpha) / v)))
            }
            SequenceModel::EfgmExchangeable { theta } => {
                let a = theta * (2.0 * open01(rng) - 1.0);
                let v = (open01(rng).ln() / nf).exp();
                let u = if a.abs() < 1e-12 {
                    v
                } else {
                    2.0 * v / ((1.0 - a) + ((1.0 - a) * (1.0 - a) + 4.0 * a * v).sqrt())
                };
                scale.apply(Latent::LogU(u.ln()))
            }
            _ => self.path_max(n, scale, rng),
        }
    }

    pub(crate) fn path_max<R: Rng + ?Sized>(&self, n: usize, scale: Scale<'_>, rng: &mut R) -> f64 {
        let mut m = f64::NEG_INFINITY;
        self.visit(n, scale, rng, |x| {
            if x > m {
                m = x
            }
        });
        m
    }
}

/// One path of length `n`. `margin = None` keeps the model's native scale
/// (uniform for copula constructions, Fréchet for moving maxima, Gaussian
/// for AR(1) and equicorrelated sequences).
pub fn sample_path<R: Rng + ?Sized>(
    model: &SequenceModel,
    margin: Option<&MarginFamily>,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n == 0 {
        return invalid("path length must be at least 1");
    }
    let mut path = Vec::with_capacity(n);
    Sampler::new(model)?.visit(n, margin.into(), rng, |x| path.push(x));
    Ok(path)
}

/// One draw of `max` of a path of length `n`, in O(1) for iid, Archimedean,
/// Archimax and EFGM models. Moving maxima, AR(1) and equicorrelated
/// sequences fold the path [`sample_path`] would return for the same stream.
pub fn sample_max<R: Rng + ?Sized>(
    model: &SequenceModel,
    margin: Option<&MarginFamily>,
    n: usize,
    rng: &mut R,
) -> Result<f64> {
    if n == 0 {
        return invalid("path length must be at least 1");
    }
    Ok(Sampler::new(model)?.max(n, margin.into(), rng))
}
