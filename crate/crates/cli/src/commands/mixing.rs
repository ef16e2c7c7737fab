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

use maxdep::diagonals::{mixing_blocks, mixing_discrepancy};

use crate::config::Params;
use crate::specs;
use crate::table::{Cell, Table};
use crate::CliError;

/// Block-dependence discrepancy `|δ_{a+b} - δ_a δ_b|` along an n schedule.
pub fn cmd_mixing(p: &Params) -> Result<Table, CliError> {
    let fam = specs::diagonal_family(p)?;
    let r = specs::rate(p, Some(&fam))?;
    let ns = specs::schedule(p.n.as_deref().unwrap_or("10^2..10^6"))?;
    let us = specs::grid(p.u_grid.as_deref().unwrap_or("0.5"))?;
    let (t1, t2) = (p.t1.unwrap_or(0.25), p.t2.unwrap_or(0.25));
    let mut t = Table::new(&["n", "u", "block_a", "block_b", "discrepancy"]);
    for &n in &ns {
        let (a, b) = mixing_blocks(n, t1, t2);
        for &u in &us {
            t.push(vec![Cell::Int(n), u.into(), Cell::Int(a), Cell::Int(b), mixing_discrepancy(&fam, &r, n, t1, t2, u)?.into()]);
        }
    }
    Ok(t)
}
