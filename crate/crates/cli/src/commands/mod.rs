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

mod bound;
mod converge;
mod diagonal;
mod distortion;
mod mixing;

pub use bound::cmd_bound;
pub use converge::cmd_converge;
pub use diagonal::cmd_diagonal;
pub use distortion::{cmd_distortion, figure1_distortions};
pub use mixing::cmd_mixing;

use maxdep::distortions::Distortion;
use maxdep::numerics::linspace;

/// `(K, κ)` with `|D(u) - D(v)| ≤ K |u - v|^κ`, where one is known.
pub(crate) fn holder_constants(d: &Distortion) -> Option<(f64, f64)> {
    match d {
        Distortion::Power { theta } if *theta < 1.0 => Some((1.0, *theta)),
        Distortion::Power { theta } => Some((*theta, 1.0)),
        _ => {
            let sup = linspace(0.0, 1.0, 2001).into_iter().map(|u| d.density(u)).fold(0.0, f64::max);
            sup.is_finite().then_some((sup, 1.0))
        }
    }
}
