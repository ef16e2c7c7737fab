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

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maxdep::generators::{builtin_generator, Family};
use maxdep::margins::MarginFamily;
use maxdep::samplers::{empirical_diagonal, sample_maxima, Execution, SequenceModel};

fn bench_execution(c: &mut Criterion) {
    let clayton = SequenceModel::archimedean(builtin_generator(Family::Clayton, 2.0).unwrap()).unwrap();
    let mut group = c.benchmark_group("maxima");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::new("movingmax_n1024", format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| {
                sample_maxima(&SequenceModel::moving_max(1), Some(&MarginFamily::UnitFrechet), 1024, 16_384, 1, e)
                    .unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("clayton_diagonal_n20", format!("{exec:?}")), &exec, |b, &e| {
            b.iter(|| empirical_diagonal(&clayton, 20, 0.9, 65_536, 2, e).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_execution);
criterion_main!(benches);
