//! Run configuration: defaults, then a `key = value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};

use heckeflow::tolerance::PARABOLIC_BAND;

use crate::Failure;

pub const MAX_WORD_LEN: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub enum TemplateSource {
    Builtin,
    Tdl(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Svg,
    Table,
}

impl OutputFormat {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "jsonl" => Some(Self::Jsonl),
            "svg" => Some(Self::Svg),
            "table" => Some(Self::Table),
            _ => None,
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Jsonl => "jsonl",
            Self::Svg => "svg",
            Self::Table => "table",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub k: u32,
    /// Whether `k` was given; otherwise a TDL template supplies it.
    pub k_explicit: bool,
    /// How far beyond the lattice distance the cusp is opened.
    pub d_offset: f64,
    pub max_word_len: usize,
    pub tolerance: f64,
    pub template: TemplateSource,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            k: 3,
            k_explicit: false,
            d_offset: 0.0,
            max_word_len: 6,
            tolerance: PARABOLIC_BAND,
            template: TemplateSource::Builtin,
            output: OutputFormat::Jsonl,
        }
    }
}

/// Values given on the command line (or through the environment).
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub k: Option<u32>,
    pub d_offset: Option<f64>,
    pub max_word_len: Option<usize>,
    pub tolerance: Option<f64>,
    pub template: Option<PathBuf>,
    pub output: Option<String>,
}

fn bad(path: &Path, line: usize, msg: impl fmt::Display) -> Failure {
    Failure::validation(format!("{}:{line}: {msg}", path.display()))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::default();
        let base = path.parent().unwrap_or(Path::new("."));
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(bad(path, i + 1, format!("expected `key = value`, got `{line}`")));
            };
            let (key, value) = (key.trim(), value.trim());
            let num_err = |e: &dyn fmt::Display| bad(path, i + 1, format!("bad value for {key}: {e}"));
            match key {
                "k" => {
                    cfg.k = value.parse().map_err(|e| num_err(&e))?;
                    cfg.k_explicit = true;
                }
                "d_offset" => cfg.d_offset = value.parse().map_err(|e| num_err(&e))?,
                "max_word_len" => cfg.max_word_len = value.parse().map_err(|e| num_err(&e))?,
                "tolerance" => cfg.tolerance = value.parse().map_err(|e| num_err(&e))?,
                "template" => {
                    cfg.template = if value == "builtin" {
                        TemplateSource::Builtin
                    } else {
                        TemplateSource::Tdl(base.join(value))
                    }
                }
                "output" => {
                    cfg.output = OutputFormat::parse(value)
                        .ok_or_else(|| bad(path, i + 1, format!("unknown output format `{value}`")))?
                }
                _ => return Err(bad(path, i + 1, format!("unknown key `{key}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn resolve(file: Option<&Path>, o: &Overrides) -> Result<Self, Failure> {
        let mut cfg = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        if let Some(k) = o.k {
            cfg.k = k;
            cfg.k_explicit = true;
        }
        if let Some(d) = o.d_offset {
            cfg.d_offset = d;
        }
        if let Some(m) = o.max_word_len {
            cfg.max_word_len = m;
        }
        if let Some(t) = o.tolerance {
            cfg.tolerance = t;
        }
        if let Some(p) = &o.template {
            cfg.template = TemplateSource::Tdl(p.clone());
        }
        if let Some(f) = &o.output {
            cfg.output = OutputFormat::parse(f)
                .ok_or_else(|| Failure::validation(format!("unknown output format `{f}`")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.k < 3 || self.k % 2 == 0 {
            return Err(Failure::validation(format!("k must be odd and >= 3, got {}", self.k)));
        }
        if !(self.d_offset >= 0.0 && self.d_offset.is_finite()) {
            return Err(Failure::validation(format!("d_offset must be >= 0, got {}", self.d_offset)));
        }
        if !(1..=MAX_WORD_LEN).contains(&self.max_word_len) {
            return Err(Failure::validation(format!(
                "max_word_len must be in [1, {MAX_WORD_LEN}], got {}",
                self.max_word_len
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Failure::validation(format!(
                "tolerance must be in (0, 1), got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn file_then_flags() {
        let f = write("# run\nk = 5\nmax_word_len = 4  # short\noutput = table\n");
        let cfg = RunConfig::resolve(Some(f.path()), &Overrides::default()).unwrap();
        assert_eq!((cfg.k, cfg.max_word_len, cfg.output), (5, 4, OutputFormat::Table));
        let o = Overrides {
            k: Some(7),
            ..Default::default()
        };
        assert_eq!(RunConfig::resolve(Some(f.path()), &o).unwrap().k, 7);
    }

    #[test]
    fn rejects_bad_values() {
        for text in ["k = 4", "k = x", "max_word_len = 15", "d_offset = -1", "colour = red", "k 5"] {
            let f = write(text);
            let e = RunConfig::resolve(Some(f.path()), &Overrides::default()).unwrap_err();
            assert_eq!(e.code, 2, "{text}");
        }
    }

    #[test]
    fn template_paths_are_relative_to_the_file() {
        let f = write("template = t.tdl\n");
        let cfg = RunConfig::from_file(f.path()).unwrap();
        assert_eq!(cfg.template, TemplateSource::Tdl(f.path().parent().unwrap().join("t.tdl")));
    }
}
