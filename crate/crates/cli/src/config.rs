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

//! Experiment configuration and its flat `key=value` file format.

use std::fmt;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Diagonal,
    Distortion,
    Bound,
    Converge,
    Mixing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

macro_rules! value_text {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
            }
        }

        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                <$t as ValueEnum>::from_str(s, false)
            }
        }
    };
}

value_text!(Command);
value_text!(Format);

macro_rules! params {
    ($($(#[doc = $doc:literal])* $field:ident : $ty:ty),* $(,)?) => {
        /// Every experiment parameter. Unset fields fall back to per-command defaults.
        #[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
        pub struct Params {
            $($(#[doc = $doc])* #[arg(long)] pub $field: Option<$ty>,)*
        }

        impl Params {
            /// Config-file keys, identical to the long flag names.
            pub const KEYS: &'static [&'static str] = &[$(kebab!($field)),*];

            pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
                match key {
                    $(kebab!($field) => {
                        self.$field = Some(value.parse::<$ty>().map_err(|e| {
                            CliError::Usage(format!("bad value `{value}` for `{key}`: {e}"))
                        })?)
                    })*
                    _ => return Err(CliError::Usage(format!("unknown config key `{key}`"))),
                }
                Ok(())
            }

            /// Set fields as `(key, value)` in declaration order.
            pub fn pairs(&self) -> Vec<(&'static str, String)> {
                let mut v = Vec::new();
                $(if let Some(x) = &self.$field {
                    v.push((kebab!($field), x.to_string()));
                })*
                v
            }

            /// Fields set in `top` replace those of `self`.
            pub fn overlay(&mut self, top: &Params) {
                $(if top.$field.is_some() {
                    self.$field = top.$field.clone();
                })*
            }
        }
    };
}

macro_rules! kebab {
    (rho_corr) => { "rho-corr" };
    (u_grid) => { "u-grid" };
    (x_grid) => { "x-grid" };
    (stdf_theta) => { "stdf-theta" };
    (k_const) => { "k-const" };
    ($f:ident) => { stringify!($f) };
}

params! {
    /// Dependence model or family, e.g. movingmax, clayton, berman
    model: String,
    /// Margin: frechet[:alpha], exponential[:lambda], normal, uniform, pareto:alpha, none
    margin: String,
    /// Generator family for archimedean/archimax models
    generator: String,
    /// Family parameter
    theta: f64,
    /// Moving-maximum window
    k: u32,
    /// AR(1) coefficient
    phi: f64,
    /// AR(1) innovation standard deviation
    sigma: f64,
    /// Equicorrelation
    rho_corr: f64,
    /// Logistic stable-tail parameter of archimax models
    stdf_theta: f64,
    /// n schedule: list (100,1000) or geometric range (2^4..2^12)
    n: String,
    /// Monte Carlo replications
    reps: u64,
    /// u grid: list or a:b:count
    u_grid: String,
    /// x grid: list or a:b:count
    x_grid: String,
    /// Rate: n, canonical or power:p
    rate: String,
    /// Master seed
    seed: u64,
    /// Output format
    format: Format,
    /// Output file (stdout when absent)
    out: String,
    /// Block fractions for the mixing discrepancy
    t1: f64,
    t2: f64,
    /// Constant K of the composite bound
    k_const: f64,
    /// Hölder exponent of the composite bound
    kappa: f64,
    /// Named preset, e.g. figure1
    preset: String,
}

/// A command and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub params: Params,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig { command, params: Params::default() }
    }

    /// `command=…` followed by one `key=value` line per set parameter.
    pub fn to_kv(&self) -> String {
        let mut s = format!("command={}\n", self.command);
        for (k, v) in self.params.pairs() {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }

    pub fn from_kv(text: &str) -> Result<Self, CliError> {
        let (command, params) = parse_kv(text)?;
        let command = command.ok_or_else(|| CliError::Usage("config has no `command` key".into()))?;
        Ok(ExperimentConfig { command, params })
    }

    /// Single-line rendering for table metadata.
    pub fn summary(&self) -> String {
        let mut s = format!("command={}", self.command);
        for (k, v) in self.params.pairs() {
            s.push_str(&format!(" {k}={v}"));
        }
        s
    }
}

/// Parse a flat config file; blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<(Option<Command>, Params), CliError> {
    let mut params = Params::default();
    let mut command = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "command" {
            command = Some(v.parse::<Command>().map_err(CliError::Usage)?);
        } else {
            params.set(k, v)?;
        }
    }
    Ok((command, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let mut c = ExperimentConfig::new(Command::Converge);
        c.params.model = Some("movingmax".into());
        c.params.theta = Some(0.1 + 0.2);
        c.params.k = Some(1);
        c.params.rho_corr = Some(1e-300);
        c.params.seed = Some(u64::MAX);
        c.params.format = Some(Format::Jsonl);
        c.params.u_grid = Some("0:1:11".into());
        let back = ExperimentConfig::from_kv(&c.to_kv()).unwrap();
        assert_eq!(back, c);
        assert_eq!(Params::KEYS.len(), 22);
        assert!(ExperimentConfig::from_kv("model=x\n").is_err());
        assert!(parse_kv("bogus=1").is_err());
        assert!(parse_kv("theta=abc").is_err());
    }
}
