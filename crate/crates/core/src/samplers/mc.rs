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

use crate::error::{domain, Result};
use crate::margins::MarginFamily;

use super::exec::{count_reps, map_reps, Execution};
use super::models::{Sampler, Scale, SequenceModel};
use super::rng::RngStream;
use super::McEstimate;

/// Smallest rep count accepted by the estimators.
pub const MIN_REPS: u64 = 1000;

fn check_reps(reps: u64) -> Result<()> {
    if reps < MIN_REPS {
        return domain(format!("need at least {MIN_REPS} reps, got {reps}"));
    }
    Ok(())
}

/// `P(max(U_1, …, U_n) ≤ u)` on uniform margins; rep `i` uses stream `(seed, i)`.
pub fn empirical_diagonal(
    model: &SequenceModel,
    n: usize,
    u: f64,
    reps: u64,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    check_reps(reps)?;
    if n == 0 || !(0.0..=1.0).contains(&u) {
        return domain(format!("need n >= 1 and u in [0,1], got n={n}, u={u}"));
    }
    let s = Sampler::new(model)?;
    let lu = u.ln();
    let hits = count_reps(reps, exec, |i| {
        s.max(n, Scale::LogUniform, &mut RngStream::new(seed, i).rng()) <= lu
    });
    Ok(McEstimate::from_count(hits, reps))
}

/// `M_n` for each rep, in rep order.
pub fn sample_maxima(
    model: &SequenceModel,
    margin: Option<&MarginFamily>,
    n: usize,
    reps: u64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("path length must be at least 1");
    }
    let s = Sampler::new(model)?;
    let scale: Scale<'_> = margin.into();
    Ok(map_reps(reps, exec, |i| s.max(n, scale, &mut RngStream::new(seed, i).rng())))
}

/// `(M_n - d_n)/c_n` for each rep, sorted ascending.
#[allow(clippy::too_many_arguments)]
pub fn normalized_maxima(
    model: &SequenceModel,
    margin: Option<&MarginFamily>,
    n: usize,
    reps: u64,
    c_n: f64,
    d_n: f64,
    seed: u64,
    exec: Execution,
) -> Result<Vec<f64>> {
    if !(c_n > 0.0) {
        return domain(format!("c_n must be positive, got {c_n}"));
    }
    let mut v = sample_maxima(model, margin, n, reps, seed, exec)?;
    for x in &mut v {
        *x = (*x - d_n) / c_n;
    }
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Empirical cdf of `(M_n - d_n)/c_n` on `x_grid`.
#[allow(clippy::too_many_arguments)]
pub fn normalized_max_ecdf(
    model: &SequenceModel,
    margin: Option<&MarginFamily>,
    n: usize,
    reps: u64,
    c_n: f64,
    d_n: f64,
    x_grid: &[f64],
    seed: u64,
    exec: Execution,
) -> Result<Vec<McEstimate>> {
    check_reps(reps)?;
    let z = normalized_maxima(model, margin, n, reps, c_n, d_n, seed, exec)?;
    Ok(ecdf_at(&z, x_grid))
}

/// Empirical cdf of an ascending sample at each grid point.
pub fn ecdf_at(sorted: &[f64], x_grid: &[f64]) -> Vec<McEstimate> {
    x_grid
        .iter()
        .map(|&x| McEstimate::from_count(sorted.partition_point(|&v| v <= x) as u64, sorted.len() as u64))
        .collect()
}

/// Kolmogorov–Smirnov distance `sup_x |F̂(x) - F(x)|` of an ascending sample.
pub fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let m = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / m).max((i + 1) as f64 / m - f)
    })
}

/// Asymptotic one-sample KS critical value `c(α)/√m`.
pub fn ks_critical(m: usize, alpha: f64) -> f64 {
    (-0.5 * (alpha / 2.0).ln()).sqrt() / (m as f64).sqrt()
}
