use std::io::Write;
use std::path::Path;

use thermospin::estimation::{run_experiment, SimConfig, SimResult};

use crate::error::{CliError, CliResult};
use crate::format::round_json;

pub fn load_config(path: &Path) -> CliResult<SimConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    SimConfig::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Load every config first so that a typo in the last file fails before any work.
pub fn simulate(paths: &[impl AsRef<Path>]) -> CliResult<Vec<SimResult>> {
    if paths.is_empty() {
        return Err(CliError::Usage("simulate needs at least one config file".into()));
    }
    let configs = paths
        .iter()
        .map(|p| load_config(p.as_ref()))
        .collect::<CliResult<Vec<_>>>()?;
    configs
        .iter()
        .map(|c| run_experiment(c).map_err(CliError::from))
        .collect()
}

pub fn write_results(out: &mut dyn Write, results: &[SimResult]) -> std::io::Result<()> {
    for r in results {
        let v = round_json(serde_json::to_value(r).map_err(std::io::Error::other)?);
        writeln!(out, "{v}")?;
    }
    Ok(())
}
