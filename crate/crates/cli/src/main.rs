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

use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_seed = std::env::var("MAXDEP_SEED").ok();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = maxdep_cli::run(std::env::args_os(), env_seed.as_deref(), &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(e), _) => {
            eprintln!("maxdep: {e}");
            ExitCode::from(e.exit_code())
        }
        (Ok(()), Err(e)) => {
            eprintln!("maxdep: {e}");
            ExitCode::from(1)
        }
    }
}
