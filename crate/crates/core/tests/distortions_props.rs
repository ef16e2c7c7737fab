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

use maxdep::distortions::{limit_law_cdf, scale_coherent_level, Distortion};
use maxdep::generators::{builtin_generator, scale_generator, ArchGenerator, Family};
use maxdep::gev::{gev_cdf, gev_power, GevParams};
use maxdep::numerics::linspace;
use proptest::prelude::*;

fn g(f: Family, t: f64) -> ArchGenerator {
    builtin_generator(f, t).unwrap()
}

fn generators() -> Vec<ArchGenerator> {
    vec![
        g(Family::Independence, 0.0),
        g(Family::Amh, 0.5),
        g(Family::Clayton, 1.0),
        g(Family::Clayton, 4.0),
        g(Family::Frank, 2.0),
        g(Family::Gumbel, 2.0),
        g(Family::Joe, 2.0),
        g(Family::Ballerini, 0.0),
    ]
}

fn distortions() -> Vec<Distortion> {
    let mut v: Vec<Distortion> = generators().into_iter().map(Distortion::archimedean).collect();
    v.push(Distortion::archimedean(scale_generator(&g(Family::Frank, 2.0), 0.4).unwrap()));
    v.push(Distortion::archimedean(scale_generator(&g(Family::Clayton, 2.0), 3.0).unwrap()));
    v.push(Distortion::power(0.5).unwrap());
    v.push(Distortion::power(3.0).unwrap());
    v.push(Distortion::identity());
    v.push(Distortion::efgm(0.5).unwrap());
    v.push(Distortion::efgm(-1.0).unwrap());
    v.push(Distortion::AmhUniformMixture);
    v.push(Distortion::parameter_mixture("power", Distortion::power, 0.5, 2.0, |_| 1.0, 32).unwrap());
    v
}

#[test]
fn distortions_are_distribution_functions() {
    let grid = linspace(0.0, 1.0, 1000);
    for d in distortions() {
        assert_eq!(d.cdf(0.0), 0.0, "{}", d.tag());
        assert_eq!(d.cdf(1.0), 1.0, "{}", d.tag());
        let v: Vec<f64> = grid.iter().map(|&u| d.cdf(u)).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "{}", d.tag());
        assert!((d.density_mass() - 1.0).abs() < 1e-6, "{}: {}", d.tag(), d.density_mass());
        for &u in &linspace(0.01, 0.99, 99) {
            assert!((d.quantile(d.cdf(u)) - u).abs() < 1e-9, "{} u={u}", d.tag());
        }
    }
}

#[test]
fn limit_law_resolves_underflowing_levels() {
    let d = Distortion::archimedean(g(Family::Clayton, 2.0));
    let h = GevParams::gumbel();
    // Λ(-6.7) = exp(-e^{6.7}) underflows, D keeps (1 + e^{6.7})^{-1/2}
    let want = (1.0 + 6.7f64.exp()).powf(-0.5);
    assert!((limit_law_cdf(&d, &h, -6.7) - want).abs() < 1e-14);
    for d in distortions() {
        for v in linspace(0.01, 0.99, 25) {
            let s = d.quantile_neg_log(v);
            let u = d.quantile(v);
            if u > 1e-300 {
                assert!((s + u.ln()).abs() < 1e-9 * (1.0 + s), "{} v={v}", d.tag());
            }
            assert!((d.cdf_neg_log(s) - v).abs() < 1e-9, "{} v={v}", d.tag());
        }
    }
}

#[test]
fn efgm_is_symmetric_in_theta() {
    for theta in [0.1, 0.5, 0.77, 1.0] {
        let (a, b) = (Distortion::efgm(theta).unwrap(), Distortion::efgm(-theta).unwrap());
        for &u in &linspace(0.0, 1.0, 1001) {
            assert_eq!(a.cdf(u).to_bits(), b.cdf(u).to_bits());
        }
    }
}

#[test]
fn efgm_tends_to_identity() {
    let sups: Vec<f64> = [0.1, 0.01, 0.001]
        .iter()
        .map(|&t| {
            let d = Distortion::efgm(t).unwrap();
            linspace(0.0, 1.0, 1001).iter().map(|&u| (d.cdf(u) - u).abs()).fold(0.0, f64::max)
        })
        .collect();
    assert!(sups[0] > sups[1] && sups[1] > sups[2] && sups[2] < 1e-3, "{sups:?}");
}

proptest! {
    #[test]
    fn scaled_limits_are_coherent(idx in 0usize..8, c in 0.1f64..10.0, u in 0.0f64..1.0) {
        let base = &generators()[idx];
        let d = Distortion::archimedean(base.clone());
        let dc = Distortion::archimedean(scale_generator(base, c).unwrap());
        let lhs = d.cdf(u);
        let rhs = dc.cdf(scale_coherent_level(u, c, base.rho()));
        prop_assert!((lhs - rhs).abs() < 1e-12, "{} c={c} u={u}: {lhs} vs {rhs}", base.tag());
    }

    #[test]
    fn power_limit_law_is_gev(xi in -1.0f64..1.0, mu in -3.0f64..3.0, sigma in 0.2f64..3.0, theta in 0.1f64..10.0) {
        let h = GevParams::new(xi, mu, sigma).unwrap();
        let ht = gev_power(&h, theta).unwrap();
        let d = Distortion::power(theta).unwrap();
        for i in 1..50 {
            let x = h.quantile(i as f64 / 50.0).unwrap();
            prop_assert!((limit_law_cdf(&d, &h, x) - gev_cdf(&ht, x)).abs() < 1e-12);
        }
    }
}
