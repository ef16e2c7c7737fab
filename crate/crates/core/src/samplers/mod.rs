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

//! Seedable Monte Carlo samplers for dependence models with known diagonals.

mod estimate;
mod exec;
mod frailty;
mod mc;
mod models;
mod rng;

pub use estimate::McEstimate;
pub use exec::{count_reps, map_reps, Execution, BLOCK};
pub use frailty::{positive_stable, Frailty};
pub use mc::{
    ecdf_at, empirical_diagonal, ks_critical, ks_distance, normalized_max_ecdf, normalized_maxima,
    sample_maxima, MIN_REPS,
};
pub use models::{sample_max, sample_path, SequenceModel};
pub use rng::{derive_seed, RngStream};
