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

//! Parsing of model, margin, rate, schedule and grid specifications.

use maxdep::diagonals::{DiagonalFamily, EtaSchedule, RateFn};
use maxdep::distortions::Distortion;
use maxdep::generators::{builtin_generator, ArchGenerator, Family};
use maxdep::margins::MarginFamily;
use maxdep::numerics::linspace;
use maxdep::samplers::SequenceModel;

use crate::config::Params;
use crate::CliError;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn need<T: Clone>(v: &Option<T>, name: &str, model: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Usage(format!("model `{model}` needs --{name}")))
}

fn model_name(p: &Params) -> Result<String, CliError> {
    match &p.model {
        Some(m) => Ok(m.to_ascii_lowercase()),
        None if p.generator.is_some() => Ok("archimedean".into()),
        None => usage("--model is required"),
    }
}

/// Generator named by `--generator` (or by the model itself) with `--theta`.
pub fn generator(p: &Params, name: &str) -> Result<ArchGenerator, CliError> {
    let fam: Family = name.parse().map_err(|_| CliError::Usage(format!("unknown generator `{name}`")))?;
    let theta = match fam {
        Family::Independence | Family::Ballerini => p.theta.unwrap_or(0.0),
        _ => need(&p.theta, "theta", name)?,
    };
    Ok(builtin_generator(fam, theta)?)
}

fn is_generator(name: &str) -> bool {
    name.parse::<Family>().is_ok() && name != "independence"
}

fn named_generator(p: &Params, model: &str) -> Result<ArchGenerator, CliError> {
    let g = p.generator.as_deref().ok_or_else(|| CliError::Usage(format!("model `{model}` needs --generator")))?;
    generator(p, &g.to_ascii_lowercase())
}

/// The analytic diagonal family named by `--model`.
pub fn diagonal_family(p: &Params) -> Result<DiagonalFamily, CliError> {
    let m = model_name(p)?;
    Ok(match m.as_str() {
        "iid" | "independence" => DiagonalFamily::Independence,
        "comonotone" => DiagonalFamily::Comonotone,
        "movingmax" => DiagonalFamily::MovingMax { k: need(&p.k, "k", &m)? },
        "logistic" | "power" => DiagonalFamily::PowerDiagonal(EtaSchedule::logistic(need(&p.theta, "theta", &m)?)?),
        "cuadras-auge" => DiagonalFamily::cuadras_auge(need(&p.theta, "theta", &m)?)?,
        "efgm" => DiagonalFamily::efgm(need(&p.theta, "theta", &m)?)?,
        "archimedean" => DiagonalFamily::Archimedean(named_generator(p, &m)?),
        "archimax" => DiagonalFamily::Archimax(
            named_generator(p, &m)?,
            EtaSchedule::logistic(need(&p.stdf_theta, "stdf-theta", &m)?)?,
        ),
        g if is_generator(g) => DiagonalFamily::Archimedean(generator(p, g)?),
        _ => return usage(format!("unknown family `{m}`")),
    })
}

/// The sampler named by `--model`.
pub fn sequence_model(p: &Params) -> Result<SequenceModel, CliError> {
    let m = model_name(p)?;
    Ok(match m.as_str() {
        "iid" | "independence" => SequenceModel::Iid,
        "movingmax" => SequenceModel::moving_max(need(&p.k, "k", &m)?),
        "ar1" => SequenceModel::gaussian_ar1(need(&p.phi, "phi", &m)?, p.sigma.unwrap_or(1.0))?,
        "efgm" => SequenceModel::efgm(need(&p.theta, "theta", &m)?)?,
        "berman" => SequenceModel::berman(need(&p.rho_corr, "rho-corr", &m)?)?,
        "archimedean" => SequenceModel::archimedean(named_generator(p, &m)?)?,
        "archimax" => SequenceModel::archimax_logistic(named_generator(p, &m)?, need(&p.stdf_theta, "stdf-theta", &m)?)?,
        g if is_generator(g) => SequenceModel::archimedean(generator(p, g)?)?,
        _ => return usage(format!("no sampler for model `{m}`")),
    })
}

/// The limit distortion named by `--model`.
pub fn distortion(p: &Params) -> Result<Distortion, CliError> {
    let m = model_name(p)?;
    Ok(match m.as_str() {
        "independence" | "identity" => Distortion::identity(),
        "power" => Distortion::power(need(&p.theta, "theta", &m)?)?,
        "efgm" => Distortion::efgm(need(&p.theta, "theta", &m)?)?,
        "amh-uniform" => Distortion::AmhUniformMixture,
        "archimedean" => Distortion::archimedean(named_generator(p, &m)?),
        g if is_generator(g) => Distortion::archimedean(generator(p, g)?),
        _ => return usage(format!("unknown distortion `{m}`")),
    })
}

/// `None` for the raw scale.
pub fn margin(p: &Params, default: &str) -> Result<Option<MarginFamily>, CliError> {
    let spec = p.margin.as_deref().unwrap_or(default).to_ascii_lowercase();
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => {
            let v: f64 = a.parse().map_err(|_| CliError::Usage(format!("bad margin parameter in `{spec}`")))?;
            (n.to_string(), Some(v))
        }
        None => (spec.clone(), None),
    };
    Ok(Some(match (name.as_str(), arg) {
        ("none" | "raw", None) => return Ok(None),
        ("frechet", None) => MarginFamily::UnitFrechet,
        ("frechet", Some(a)) => MarginFamily::frechet(a)?,
        ("exponential", a) => MarginFamily::exponential(a.unwrap_or(1.0))?,
        ("normal", None) => MarginFamily::StandardNormal,
        ("uniform", None) => MarginFamily::Uniform01,
        ("pareto", Some(a)) => MarginFamily::pareto(a)?,
        _ => return usage(format!("unknown margin `{spec}`")),
    }))
}

/// `n`, `canonical` or `power:p`; canonical falls back to `n` for
/// families without one.
pub fn rate(p: &Params, fam: Option<&DiagonalFamily>) -> Result<RateFn, CliError> {
    let spec = p.rate.as_deref().unwrap_or("canonical");
    match spec {
        "n" | "identity" => Ok(RateFn::identity()),
        "canonical" => match fam {
            Some(f) => Ok(RateFn::canonical(f).unwrap_or_else(|_| RateFn::identity())),
            None => Ok(RateFn::identity()),
        },
        s => match s.strip_prefix("power:").map(str::parse::<f64>) {
            Some(Ok(q)) => Ok(RateFn::power(q)?),
            _ => usage(format!("unknown rate `{s}`")),
        },
    }
}

fn parse_count(s: &str) -> Result<u64, CliError> {
    let t = s.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    if let Some((b, e)) = t.split_once('^') {
        let (b, e): (u64, u32) = (
            b.parse().map_err(|_| CliError::Usage(format!("bad count `{t}`")))?,
            e.parse().map_err(|_| CliError::Usage(format!("bad count `{t}`")))?,
        );
        return b.checked_pow(e).ok_or_else(|| CliError::Usage(format!("count `{t}` overflows")));
    }
    match t.parse::<f64>() {
        Ok(v) if v >= 1.0 && v.fract() == 0.0 && v < 1.8e19 => Ok(v as u64),
        _ => usage(format!("bad count `{t}`")),
    }
}

/// `a,b,c` or the geometric range `B^a..B^b`.
pub fn schedule(spec: &str) -> Result<Vec<u64>, CliError> {
    let out = if let Some((lo, hi)) = spec.split_once("..") {
        let split = |s: &str| -> Result<(u64, u32), CliError> {
            let (b, e) = s.trim().split_once('^').ok_or_else(|| CliError::Usage(format!("range end `{s}` is not B^e")))?;
            Ok((
                b.parse().map_err(|_| CliError::Usage(format!("bad base in `{s}`")))?,
                e.parse().map_err(|_| CliError::Usage(format!("bad exponent in `{s}`")))?,
            ))
        };
        let ((b1, e1), (b2, e2)) = (split(lo)?, split(hi)?);
        if b1 != b2 || b1 < 2 || e1 > e2 {
            return usage(format!("bad geometric range `{spec}`"));
        }
        (e1..=e2)
            .map(|e| b1.checked_pow(e).ok_or_else(|| CliError::Usage(format!("`{spec}` overflows"))))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        spec.split(',').map(parse_count).collect::<Result<Vec<_>, _>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return usage(format!("schedule `{spec}` must list positive sizes"));
    }
    Ok(out)
}

/// `x1,x2,…` or `a:b:count`.
pub fn grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Usage(format!("bad grid `{spec}`"));
    if parts.len() == 3 {
        let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let m: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if m == 0 || !(a.is_finite() && b.is_finite()) {
            return Err(bad());
        }
        return Ok(if m == 1 { vec![a] } else { linspace(a, b, m) });
    }
    spec.split(',').map(|s| s.trim().parse::<f64>().map_err(|_| bad())).collect()
}
