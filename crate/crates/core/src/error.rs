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

use thiserror::Error;

/// Errors raised by the numerics in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A family was constructed with parameters outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The margin has no registered iid normalizing sequence.
    #[error("no normalizer registered for margin {0}")]
    NoNormalizer(String),

    /// The margin has no known iid uniform convergence rate.
    #[error("unknown iid rate for margin {0}")]
    UnknownRate(String),

    /// A quantity fell below what double precision can resolve.
    #[error("precision loss: {0}")]
    Precision(String),

    /// The caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The requested construction has no sampler.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
