//! Optional key=value configuration file. It carries only defaults a
//! user would otherwise repeat on every call: solver grid overrides
//! and the output directory. Command-line flags always win.

use std::path::{Path, PathBuf};

#[derive(Debug, Default, PartialEq)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub grid_steps: Option<usize>,
    pub r_max: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

/// One `key = value` per line; blank lines and # comments ignored.
/// Unknown keys are rejected rather than skipped, so a typo cannot
/// silently fall back to defaults.
pub fn parse(text: &str) -> Result<FileConfig, String> {
    let mut config = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {raw:?}", idx + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "tol" => config.tol = Some(number(key, value)?),
            "r-max" => config.r_max = Some(number(key, value)?),
            "grid-steps" => {
                config.grid_steps = Some(
                    value
                        .parse()
                        .map_err(|_| format!("config key {key}: invalid integer {value:?}"))?,
                );
            }
            "out-dir" => config.out_dir = Some(PathBuf::from(value)),
            other => {
                return Err(format!(
                    "config line {}: unknown key {other:?} (expected tol, grid-steps, r-max, out-dir)",
                    idx + 1
                ));
            }
        }
    }
    Ok(config)
}

fn number(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse()
        .map_err(|_| format!("config key {key}: invalid number {value:?}"))
}
