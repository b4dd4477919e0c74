//! JSON config files with CLI flag overrides.
//!
//! Each subcommand accepts `--config <file>` whose keys mirror its flags.
//! Precedence: built-in defaults < config file < explicit CLI flags.
//! Option-typed CLI fields are `None` unless the user passed them, which is
//! what makes the merge unambiguous.

use crate::{CliError, CliResult};
use serde::de::DeserializeOwned;
use std::path::Path;

pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> CliResult<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Data(format!("reading config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("config {}: {e}", p.display())))
        }
    }
}

/// Apply a CLI override on top of a config value.
pub fn merge<T>(config_value: T, cli_value: Option<T>) -> T {
    cli_value.unwrap_or(config_value)
}
