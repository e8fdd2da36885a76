use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Table1,
    Table2,
    P2check,
    Assoc,
    Diverge,
    Tails,
    SpectrumPairs,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::Table2 => "table2",
            Command::P2check => "p2check",
            Command::Assoc => "assoc",
            Command::Diverge => "diverge",
            Command::Tails => "tails",
            Command::SpectrumPairs => "spectrum-pairs",
        }
    }

    fn needs_pairs(self) -> bool {
        !matches!(self, Command::Table2 | Command::SpectrumPairs)
    }

    fn needs_sizes(self) -> bool {
        !matches!(self, Command::Assoc)
    }

    pub fn default_pairs(self) -> Vec<(usize, usize)> {
        match self {
            Command::Table1 => vec![(1, 2), (2, 3), (20, 31), (60, 91)],
            Command::P2check => vec![(1, 1), (1, 3), (2, 2), (2, 4), (3, 3), (1, 2)],
            Command::Assoc => vec![(1, 2), (2, 3), (1, 4), (3, 6), (3, 3)],
            Command::Diverge => vec![(1, 1), (1, 3), (2, 2), (1, 2)],
            Command::Tails => vec![(1, 2), (3, 4)],
            Command::Table2 | Command::SpectrumPairs => Vec::new(),
        }
    }

    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Command::Table1 => vec![99, 100, 999, 1000, 1999, 2000],
            Command::Table2 | Command::SpectrumPairs => vec![999, 1000],
            Command::P2check => vec![1_000, 10_000, 100_000],
            Command::Diverge => vec![250, 500, 1000, 2000],
            Command::Tails => vec![200, 400, 800, 1600],
            Command::Assoc => Vec::new(),
        }
    }

    pub fn default_delete_tail(self) -> usize {
        match self {
            Command::Table2 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Tolerance keys accepted in `tolerance_overrides`.
pub const TOLERANCE_KEYS: [&str; 1] = ["grouping"];

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub pairs: Vec<(usize, usize)>,
    pub sizes: Vec<usize>,
    pub delete_tail: usize,
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl ExperimentConfig {
    /// The command's defaults.
    pub fn defaults(command: Command) -> Self {
        ExperimentConfig {
            command,
            pairs: command.default_pairs(),
            sizes: command.default_sizes(),
            delete_tail: command.default_delete_tail(),
            output_format: OutputFormat::Csv,
            output_path: None,
            tolerance_overrides: BTreeMap::new(),
        }
    }

    pub fn tolerance(&self, key: &str, default: f64) -> f64 {
        self.tolerance_overrides
            .get(key)
            .copied()
            .unwrap_or(default)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.command.needs_pairs() && self.pairs.is_empty() {
            return Err(CliError::Usage(format!(
                "{} needs at least one pair",
                self.command
            )));
        }
        if let Some(&(m, n)) = self.pairs.iter().find(|&&(m, n)| m == 0 || n == 0) {
            return Err(CliError::Usage(format!(
                "indices start at 1, got pair {m},{n}"
            )));
        }
        if self.command.needs_sizes() && self.sizes.is_empty() {
            return Err(CliError::Usage(format!(
                "{} needs at least one size",
                self.command
            )));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage("sizes must be strictly ascending".into()));
        }
        if self.sizes.contains(&0) {
            return Err(CliError::Usage("sizes must be positive".into()));
        }
        for (key, value) in &self.tolerance_overrides {
            if !TOLERANCE_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("unknown tolerance '{key}'")));
            }
            if !(value.is_finite() && *value > 0.0) {
                return Err(CliError::Usage(format!(
                    "tolerance '{key}' must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// Optional values from a TOML config file. Unset fields keep defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub pairs: Option<Vec<(usize, usize)>>,
    pub sizes: Option<Vec<usize>>,
    pub delete_tail: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Values given on the command line; they win over the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlagOverrides {
    pub pairs: Option<Vec<(usize, usize)>>,
    pub sizes: Option<Vec<usize>>,
    pub delete_tail: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub tolerances: BTreeMap<String, f64>,
}

/// defaults < config file < flags
pub fn resolve(
    command: Command,
    file: Option<FileConfig>,
    flags: FlagOverrides,
) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::defaults(command);
    if let Some(file) = file {
        if let Some(p) = file.pairs {
            cfg.pairs = p;
        }
        if let Some(s) = file.sizes {
            cfg.sizes = s;
        }
        if let Some(d) = file.delete_tail {
            cfg.delete_tail = d;
        }
        if let Some(f) = file.format {
            cfg.output_format = f;
        }
        if file.out.is_some() {
            cfg.output_path = file.out;
        }
        cfg.tolerance_overrides.extend(file.tolerances);
    }
    if let Some(p) = flags.pairs {
        cfg.pairs = p;
    }
    if let Some(s) = flags.sizes {
        cfg.sizes = s;
    }
    if let Some(d) = flags.delete_tail {
        cfg.delete_tail = d;
    }
    if let Some(f) = flags.format {
        cfg.output_format = f;
    }
    if flags.out.is_some() {
        cfg.output_path = flags.out;
    }
    cfg.tolerance_overrides.extend(flags.tolerances);
    cfg.validate()?;
    Ok(cfg)
}

/// `"1,2;2,3"` → `[(1, 2), (2, 3)]`. An empty string gives an empty list.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (m, n) = pair
                .split_once(',')
                .ok_or_else(|| format!("pair '{pair}' is not of the form m,n"))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad index '{s}': {e}"))
            };
            Ok((parse(m)?, parse(n)?))
        })
        .collect()
}

/// `"99,100"` → `[99, 100]`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| format!("bad size '{s}': {e}"))
        })
        .collect()
}

/// `"grouping=1e-6"` → `("grouping", 1e-6)`.
pub fn parse_tolerance(text: &str) -> Result<(String, f64), String> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| format!("tolerance '{text}' is not of the form key=value"))?;
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad tolerance value '{value}': {e}"))?;
    Ok((key.trim().to_string(), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_and_size_parsing() {
        assert_eq!(parse_pairs("1,2;2,3").unwrap(), vec![(1, 2), (2, 3)]);
        assert_eq!(parse_pairs(" 20 , 31 ; ").unwrap(), vec![(20, 31)]);
        assert!(parse_pairs("").unwrap().is_empty());
        assert!(parse_pairs("1;2").is_err());
        assert_eq!(parse_sizes("99, 100").unwrap(), vec![99, 100]);
        assert!(parse_sizes("x").is_err());
        assert_eq!(
            parse_tolerance("grouping=1e-6").unwrap(),
            ("grouping".into(), 1e-6)
        );
    }

    #[test]
    fn empty_pairs_is_usage_error() {
        let flags = FlagOverrides {
            pairs: Some(Vec::new()),
            ..Default::default()
        };
        let err = resolve(Command::Table1, None, flags).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn flags_win_over_file() {
        let file = FileConfig {
            sizes: Some(vec![10, 20]),
            delete_tail: Some(3),
            format: Some(OutputFormat::Json),
            ..Default::default()
        };
        let flags = FlagOverrides {
            sizes: Some(vec![30]),
            ..Default::default()
        };
        let cfg = resolve(Command::Table2, Some(file), flags).unwrap();
        assert_eq!(cfg.sizes, vec![30]);
        assert_eq!(cfg.delete_tail, 3);
        assert_eq!(cfg.output_format, OutputFormat::Json);
    }

    #[test]
    fn validation() {
        let mut cfg = ExperimentConfig::defaults(Command::Table1);
        cfg.sizes = vec![100, 99];
        assert!(cfg.validate().is_err());
        cfg.sizes = vec![99];
        cfg.pairs = vec![(0, 1)];
        assert!(cfg.validate().is_err());
        cfg.pairs = vec![(1, 2)];
        cfg.tolerance_overrides.insert("bogus".into(), 1.0);
        assert!(cfg.validate().is_err());
        assert!(ExperimentConfig::defaults(Command::Assoc)
            .validate()
            .is_ok());
    }

    #[test]
    fn file_config_parses_toml() {
        let cfg: FileConfig = toml::from_str(
            "pairs = [[1, 2], [2, 3]]\nsizes = [99, 100]\nformat = \"json\"\n[tolerances]\ngrouping = 1e-7\n",
        )
        .unwrap();
        assert_eq!(cfg.pairs, Some(vec![(1, 2), (2, 3)]));
        assert_eq!(cfg.format, Some(OutputFormat::Json));
        assert_eq!(cfg.tolerances["grouping"], 1e-7);
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
