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

use maxdep::distortions::Distortion;
use maxdep::generators::{builtin_generator, Family};

use crate::config::Params;
use crate::specs;
use crate::table::{Cell, Table};
use crate::CliError;

/// The generators of the density-shape figure, one per built-in family.
pub fn figure1_distortions() -> Vec<Distortion> {
    [
        (Family::Amh, 0.5),
        (Family::Clayton, 1.0),
        (Family::Clayton, 4.0),
        (Family::Frank, 2.0),
        (Family::Gumbel, 2.0),
        (Family::Joe, 2.0),
        (Family::Independence, 0.0),
        (Family::Ballerini, 0.0),
    ]
    .into_iter()
    .map(|(f, t)| Distortion::archimedean(builtin_generator(f, t).expect("valid preset")))
    .collect()
}

/// `D`, its density and its quantile on a u grid.
pub fn cmd_distortion(p: &Params) -> Result<Table, CliError> {
    let ds = match p.preset.as_deref() {
        Some("figure1") => figure1_distortions(),
        Some(other) => return Err(CliError::Usage(format!("unknown preset `{other}`"))),
        None => vec![specs::distortion(p)?],
    };
    let us = specs::grid(p.u_grid.as_deref().unwrap_or("0:1:101"))?;
    if us.iter().any(|u| !(0.0..=1.0).contains(u)) {
        return Err(CliError::Usage("u grid must lie in [0,1]".into()));
    }
    let mut t = Table::new(&["distortion", "u", "cdf", "density", "quantile"]);
    for d in &ds {
        for &u in &us {
            t.push(vec![
                Cell::Text(d.tag()),
                u.into(),
                d.cdf(u).into(),
                d.density(u).into(),
                d.quantile(u).into(),
            ]);
        }
    }
    Ok(t)
}
