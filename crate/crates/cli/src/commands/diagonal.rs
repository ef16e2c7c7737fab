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

use maxdep::diagonals::power_distortion;

use crate::config::Params;
use crate::specs;
use crate::table::{Cell, Table};
use crate::CliError;

/// `δ_n(u)` and `D_n^r(u)` over an n schedule and u grid.
pub fn cmd_diagonal(p: &Params) -> Result<Table, CliError> {
    let fam = specs::diagonal_family(p)?;
    let r = specs::rate(p, Some(&fam))?;
    let ns = specs::schedule(p.n.as_deref().unwrap_or("1,2,5,10,100"))?;
    let us = specs::grid(p.u_grid.as_deref().unwrap_or("0:1:11"))?;
    if us.iter().any(|u| !(0.0..=1.0).contains(u)) {
        return Err(CliError::Usage("u grid must lie in [0,1]".into()));
    }
    let mut t = Table::new(&["n", "u", "delta", "distortion"]);
    for &n in &ns {
        for &u in &us {
            t.push(vec![Cell::Int(n), u.into(), fam.delta(n, u).into(), power_distortion(&fam, &r, n, u).into()]);
        }
    }
    Ok(t)
}
