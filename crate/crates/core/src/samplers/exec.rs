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

//! Rep-parallel execution. Reps are cut into fixed blocks and every rep owns
//! its stream, so the output never depends on the worker count.

/// Reps per work unit.
pub const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon when the `parallel` feature is on, sequential otherwise.
    #[default]
    Parallel,
}

fn run_block<T, F: Fn(u64) -> T>(b: u64, reps: u64, f: &F) -> Vec<T> {
    (b * BLOCK..((b + 1) * BLOCK).min(reps)).map(f).collect()
}

/// `[f(0), f(1), …, f(reps-1)]` in rep order.
pub fn map_reps<T, F>(reps: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let blocks = reps.div_ceil(BLOCK);
    let parts: Vec<Vec<T>> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..blocks).into_par_iter().map(|b| run_block(b, reps, &f)).collect()
        }
        _ => (0..blocks).map(|b| run_block(b, reps, &f)).collect(),
    };
    parts.into_iter().flatten().collect()
}

/// Number of reps with `f(rep)` true.
pub fn count_reps<F>(reps: u64, exec: Execution, f: F) -> u64
where
    F: Fn(u64) -> bool + Sync,
{
    let blocks = reps.div_ceil(BLOCK);
    let block = |b: u64| (b * BLOCK..((b + 1) * BLOCK).min(reps)).filter(|&i| f(i)).count() as u64;
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..blocks).into_par_iter().map(block).sum()
        }
        _ => (0..blocks).map(block).sum(),
    }
}
