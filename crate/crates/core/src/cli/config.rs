use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bootstrap::DEFAULT_MAX_STEPS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json, csv, svg or text)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: usize,
    pub max_steps: usize,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: 12,
            max_steps: DEFAULT_MAX_STEPS,
            output_dir: None,
            format: None,
        }
    }
}

impl RunConfig {
    /// Applies `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("config line {}: {what}", n + 1);
            match key.replace('-', "_").as_str() {
                "digits" => self.digits = value.parse().map_err(|_| bad("digits must be an integer"))?,
                "max_steps" => {
                    self.max_steps = value.parse().map_err(|_| bad("max_steps must be an integer"))?
                }
                "output_dir" => self.output_dir = Some(PathBuf::from(value)),
                "format" => self.format = Some(value.parse().map_err(|e: String| bad(&e))?),
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg = RunConfig::default();
        cfg.apply_file_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.digits == 0 {
            return Err("digits must be at least 1".into());
        }
        if self.max_steps == 0 {
            return Err("max_steps must be at least 1".into());
        }
        Ok(())
    }
}
