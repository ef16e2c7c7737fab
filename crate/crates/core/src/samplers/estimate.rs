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

/// A probability estimated from `reps` Bernoulli trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub reps: u64,
}

impl McEstimate {
    /// Estimate with the binomial standard error `√(p(1-p)/reps)`.
    pub fn from_count(hits: u64, reps: u64) -> Self {
        let p = hits as f64 / reps as f64;
        McEstimate { value: p, std_error: (p * (1.0 - p) / reps as f64).sqrt(), reps }
    }
}
