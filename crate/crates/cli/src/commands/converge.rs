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

use maxdep::diagonals::{distortion_sup_distance, DiagonalFamily, RateFn};
use maxdep::distortions::{limit_law_cdf, Distortion};
use maxdep::gev::GevParams;
use maxdep::margins::{hall_b, normal_cdf, normal_quantile, MarginFamily};
use maxdep::numerics::linspace;
use maxdep::ratebounds::{ceil_rate, composite_rate_bound, movingmax_s};
use maxdep::samplers::{ecdf_at, ks_distance, normalized_maxima, Execution, SequenceModel, MIN_REPS};

use super::holder_constants;
use crate::config::Params;
use crate::specs;
use crate::table::{Cell, Table};
use crate::CliError;

/// The predicted limit of `(M_n - d_n)/c_n` and the constants leading to it.
#[allow(clippy::large_enum_variant)]
enum Prediction {
    /// `D ∘ H` with iid normalizers taken at `⌈r_n⌉`.
    Distorted { fam: DiagonalFamily, rate: RateFn, d: Distortion, margin: MarginFamily },
    /// `N(0, ϱ)` for equicorrelated Gaussian maxima centred at `√(1-ϱ) b_n`.
    Berman { rho: f64 },
}

struct Step {
    c_n: f64,
    d_n: f64,
    rate: f64,
    limit: GevParams,
}

impl Prediction {
    fn step(&self, n: u64) -> Result<Step, CliError> {
        match self {
            Prediction::Distorted { rate, margin, .. } => {
                let rn = rate.rate(n);
                let nz = margin.iid_normalizers(ceil_rate(rn))?;
                Ok(Step { c_n: nz.c_star, d_n: nz.d_star, rate: rn, limit: nz.limit })
            }
            Prediction::Berman { rho } => Ok(Step {
                c_n: 1.0,
                d_n: (1.0 - rho).sqrt() * hall_b(n.max(2)),
                rate: n as f64,
                limit: GevParams::gumbel(),
            }),
        }
    }

    fn cdf(&self, limit: &GevParams, x: f64) -> f64 {
        match self {
            Prediction::Distorted { d, .. } => limit_law_cdf(d, limit, x),
            Prediction::Berman { rho } => normal_cdf(x / rho.sqrt()),
        }
    }

    fn quantile(&self, limit: &GevParams, q: f64) -> Result<f64, CliError> {
        match self {
            Prediction::Distorted { d, .. } => Ok(limit.quantile_neg_log(d.quantile_neg_log(q))?),
            Prediction::Berman { rho } => Ok(rho.sqrt() * normal_quantile(q)),
        }
    }

    /// Composite bound `K (β* + ceiling)^κ + s(n)`, when every piece is known.
    fn bound(&self, p: &Params, n: u64, rn: f64) -> Result<Option<f64>, CliError> {
        let Prediction::Distorted { fam, rate, d, margin } = self else { return Ok(None) };
        let Ok(beta) = margin.iid_uniform_rate(ceil_rate(rn)) else { return Ok(None) };
        let (k, kappa) = match (p.k_const, p.kappa, holder_constants(d)) {
            (Some(k), Some(a), _) => (k, a),
            (k, a, Some((k0, a0))) => (k.unwrap_or(k0), a.unwrap_or(a0)),
            _ => return Ok(None),
        };
        let s = match fam {
            DiagonalFamily::Independence => 0.0,
            DiagonalFamily::MovingMax { k } if rn == n as f64 => movingmax_s(n, *k),
            _ => distortion_sup_distance(fam, rate, n, d, 2000)?,
        };
        Ok(Some(composite_rate_bound(beta, s, k, kappa, rn)?.bound))
    }
}

fn predict(p: &Params, model: &SequenceModel) -> Result<(Prediction, Option<MarginFamily>), CliError> {
    if let SequenceModel::BermanEquicorrelated { rho } = model {
        return match specs::margin(p, "none")? {
            None | Some(MarginFamily::StandardNormal) => Ok((Prediction::Berman { rho: *rho }, None)),
            Some(_) => Err(CliError::Usage("berman maxima are studied on the raw Gaussian scale".into())),
        };
    }
    let margin = specs::margin(p, "frechet")?
        .ok_or_else(|| CliError::Usage(format!("model `{}` needs a margin", model.tag())))?;
    // Gaussian AR(1) has extremal index one: same limit as iid
    let fam = match model {
        SequenceModel::GaussianAr1 { .. } => DiagonalFamily::Independence,
        m => m.diagonal_family().ok_or_else(|| CliError::Usage(format!("no limit for `{}`", m.tag())))?,
    };
    let rate = match model {
        SequenceModel::GaussianAr1 { .. } => specs::rate(p, None)?,
        _ => specs::rate(p, Some(&fam))?,
    };
    let d = fam
        .limit_distortion()
        .ok_or_else(|| CliError::Numeric(format!("{} has no limit distortion", fam.tag())))?;
    Ok((Prediction::Distorted { fam, rate, d, margin: margin.clone() }, Some(margin)))
}

/// Monte Carlo distance between normalized maxima and their predicted limit.
pub fn cmd_converge(p: &Params, exec: Execution) -> Result<Table, CliError> {
    let model = specs::sequence_model(p)?;
    let (pred, margin) = predict(p, &model)?;
    let ns = specs::schedule(p.n.as_deref().unwrap_or("2^6..2^10"))?;
    let reps = p.reps.unwrap_or(10_000);
    if reps < MIN_REPS {
        return Err(CliError::Usage(format!("--reps must be at least {MIN_REPS}")));
    }
    let seed = p.seed.unwrap_or(crate::DEFAULT_SEED);
    let mut t = Table::new(&[
        "n", "rate", "c_n", "d_n", "reps", "sup_distance", "x_at_sup", "max_se", "ks_distance", "bound",
    ]);
    for &n in &ns {
        let st = pred.step(n)?;
        let xs = match &p.x_grid {
            Some(g) => specs::grid(g)?,
            None => linspace(0.01, 0.99, 41)
                .into_iter()
                .map(|q| pred.quantile(&st.limit, q))
                .collect::<Result<Vec<_>, _>>()?,
        };
        let z = normalized_maxima(&model, margin.as_ref(), n as usize, reps, st.c_n, st.d_n, seed, exec)?;
        let ecdf = ecdf_at(&z, &xs);
        let (mut sup, mut at, mut se) = (0.0f64, xs[0], 0.0f64);
        for (x, e) in xs.iter().zip(&ecdf) {
            let gap = (e.value - pred.cdf(&st.limit, *x)).abs();
            if gap > sup {
                sup = gap;
                at = *x;
            }
            se = se.max(e.std_error);
        }
        let ks = ks_distance(&z, |x| pred.cdf(&st.limit, x));
        t.push(vec![
            Cell::Int(n),
            st.rate.into(),
            st.c_n.into(),
            st.d_n.into(),
            Cell::Int(reps),
            sup.into(),
            at.into(),
            se.into(),
            ks.into(),
            pred.bound(p, n, st.rate)?.into(),
        ]);
    }
    Ok(t)
}
