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

//! Maxima of dependent, identically distributed sequences.
//!
//! The crate evaluates copula diagonals `δ_n`, their power distortions
//! `D_n^r(u) = δ_n(u^{1/r_n})`, limit laws of the form `D ∘ H` with `H` a GEV
//! law, exact rate bounds for the convergence of normalized maxima, and
//! ships seedable Monte Carlo samplers for every model with an analytic
//! diagonal so that each formula can be checked by simulation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagonals;
pub mod distortions;
pub mod error;
pub mod generators;
pub mod gev;
pub mod margins;
pub mod numerics;
pub mod ratebounds;
pub mod samplers;

pub use error::{Error, Result};
