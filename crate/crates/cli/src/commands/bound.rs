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

use maxdep::diagonals::{distortion_sup_distance, DiagonalFamily};
use maxdep::ratebounds::{ceil_rate, composite_rate_bound, cuadras_auge_sup, movingmax_s};

use super::holder_constants;
use crate::config::Params;
use crate::specs;
use crate::table::{Cell, Table};
use crate::CliError;

const COLUMNS: [&str; 10] = [
    "n",
    "rate",
    "margin_term",
    "ceiling_term",
    "distortion_term",
    "distortion_bound",
    "kappa",
    "k_const",
    "bound",
    "valid",
];

/// Composite uniform bound on the distance to the limit law along an n schedule.
///
/// `distortion_term` is the exact `sup_u |D_n^r(u) - D(u)|`; `distortion_bound`
/// is an analytic bound on it where one is known.
pub fn cmd_bound(p: &Params) -> Result<Table, CliError> {
    let fam = specs::diagonal_family(p)?;
    let r = specs::rate(p, Some(&fam))?;
    let ns = specs::schedule(p.n.as_deref().unwrap_or("10^2..10^6"))?;
    let mut t = Table::new(&COLUMNS);
    if let DiagonalFamily::CuadrasAuge { theta } = fam {
        // finite-rate regime: no normalization, the diagonal itself converges
        for &n in &ns {
            let s = cuadras_auge_sup(n, theta)?;
            t.push(vec![
                Cell::Int(n),
                r.rate(n).into(),
                0.0.into(),
                0.0.into(),
                s.exact.into(),
                s.bound.into(),
                1.0.into(),
                1.0.into(),
                s.bound.into(),
                true.into(),
            ]);
        }
        return Ok(t);
    }
    let margin = specs::margin(p, "normal")?
        .ok_or_else(|| CliError::Usage("bound needs a margin".into()))?;
    let d = fam
        .limit_distortion()
        .ok_or_else(|| CliError::Numeric(format!("{} has no limit distortion", fam.tag())))?;
    let (k_const, kappa) = match (p.k_const, p.kappa, holder_constants(&d)) {
        (Some(k), Some(a), _) => (k, a),
        (k, a, Some((k0, a0))) => (k.unwrap_or(k0), a.unwrap_or(a0)),
        _ => {
            return Err(CliError::Usage(format!(
                "{} has an unbounded density; pass --k-const and --kappa",
                d.tag()
            )))
        }
    };
    for &n in &ns {
        let rn = r.rate(n);
        let m = ceil_rate(rn);
        let beta = margin.iid_uniform_rate(m)?;
        let (s, s_bound) = match &fam {
            DiagonalFamily::Independence => (0.0, Some(0.0)),
            DiagonalFamily::MovingMax { k } if rn == n as f64 => {
                let s = movingmax_s(n, *k);
                (s, Some(s))
            }
            _ => (distortion_sup_distance(&fam, &r, n, &d, 2000)?, None),
        };
        let rep = composite_rate_bound(beta, s, k_const, kappa, rn)?;
        t.push(vec![
            Cell::Int(n),
            rn.into(),
            rep.margin_term.into(),
            rep.ceiling_term.into(),
            rep.distortion_term.into(),
            s_bound.into(),
            rep.kappa.into(),
            rep.k_const.into(),
            rep.bound.into(),
            rep.valid.into(),
        ]);
    }
    Ok(t)
}
