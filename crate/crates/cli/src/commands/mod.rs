pub mod gen;
pub mod simulate;
pub mod stats;
pub mod train;

use std::path::PathBuf;

/// Global flags shared by every subcommand.
pub struct Context {
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Context {
    pub fn ensure_out_dir(&self) -> crate::CliResult<()> {
        std::fs::create_dir_all(&self.out_dir)?;
        Ok(())
    }
}
