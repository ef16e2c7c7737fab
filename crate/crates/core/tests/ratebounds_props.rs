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

use maxdep::numerics::{golden_max, linspace};
use maxdep::ratebounds::{composite_rate_bound, large_n_bound, movingmax_s, small_gap_bound, sup_power_diff};
use proptest::prelude::*;

/// Grid scan plus golden-section refinement of `|u^a - u^b|`.
fn numeric_sup(a: f64, b: f64) -> f64 {
    let f = |u: f64| (u.powf(a) - u.powf(b)).abs();
    let grid = linspace(0.0, 1.0, 100_001);
    let (i, _) = grid.iter().enumerate().fold((0, f64::MIN), |(bi, bv), (i, &u)| if f(u) > bv { (i, f(u)) } else { (bi, bv) });
    let lo = grid[i.saturating_sub(1)];
    let hi = grid[(i + 1).min(grid.len() - 1)];
    golden_max(f, lo, hi, 1e-15).1.max(f(grid[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn closed_form_matches_maximization(a in 0.01f64..20.0, gap in 0.001f64..1.0) {
        let b = a + gap * (20.0 - a);
        prop_assume!(b > a);
        let s = sup_power_diff(a, b).unwrap();
        prop_assert!((s.value - numeric_sup(a, b)).abs() < 1e-9);
        let at = s.maximizer.powf(a) - s.maximizer.powf(b);
        prop_assert!((at - s.value).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn valid_bounds_bound(a in 0.05f64..20.0, frac in -0.69f64..2.2) {
        let b_n = frac * a;
        let sb = small_gap_bound(a, b_n);
        if sb.valid && b_n != 0.0 {
            let (lo, hi) = if b_n > 0.0 { (a, a + b_n) } else { (a + b_n, a) };
            prop_assert!(sb.bound >= sup_power_diff(lo, hi).unwrap().value);
        }
        let lb = large_n_bound(frac.abs() + 0.01, a);
        if lb.valid {
            prop_assert!(lb.bound >= sup_power_diff(a, a + frac.abs() + 0.01).unwrap().value);
        }
    }

    #[test]
    fn movingmax_s_is_a_power_gap(n in 1u64..100_000, k in 1u32..20) {
        let (nf, kf) = (n as f64, k as f64);
        let a = 1.0 / (kf + 1.0);
        let b = (nf + kf) / (nf * (kf + 1.0));
        prop_assert!((movingmax_s(n, k) - sup_power_diff(a, b).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn composite_bound_monotonicity(beta in 0.0f64..0.4, s in 0.0f64..0.5, k in 0.1f64..3.0, kappa in 0.1f64..1.0, r in 1.0f64..1e6) {
        let base = composite_rate_bound(beta, s, k, kappa, r).unwrap().bound;
        let bump = 1e-3;
        prop_assert!(composite_rate_bound(beta + bump, s, k, kappa, r).unwrap().bound >= base);
        prop_assert!(composite_rate_bound(beta, s + bump, k, kappa, r).unwrap().bound >= base);
        prop_assert!(composite_rate_bound(beta, s, k + bump, kappa, r).unwrap().bound >= base);
        let rep = composite_rate_bound(beta, s, k, kappa, r).unwrap();
        if rep.margin_term + rep.ceiling_term < 1.0 {
            let k2 = (kappa + 0.05).min(1.0);
            prop_assert!(composite_rate_bound(beta, s, k, k2, r).unwrap().bound <= base + 1e-15);
        }
    }
}
