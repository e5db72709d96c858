//! Flat `key=value` run configuration.
//!
//! Keys can come from a config file (one `key=value` per line, `#` comments)
//! and from command-line flags; flags win. Dashes in keys are read as
//! underscores and keys are case-insensitive, so `--D 8`, `d=8` and `D=8`
//! all set the cutoff.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rcurves::enumerate::{Mode, DEFAULT_BUDGET};
use rcurves::forms::SurfaceModel;
use rcurves::gf::Field;
use rcurves::lattice::{ConeSpec, DivisorClass};
use rcurves::sieve::Convention;

use crate::error::CliError;

/// Every key the configuration understands.
pub const KEYS: &[&str] = &[
    "a",
    "a_prime",
    "budget",
    "class",
    "cone",
    "convention",
    "d",
    "format",
    "hmax",
    "include_zero",
    "k",
    "mmax",
    "mode",
    "model",
    "model_text",
    "nmax",
    "out",
    "q",
    "r",
    "threads",
    "virtual",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Count,
    Tamagawa,
    Scan,
    Converge,
    AuditUpper,
    Limits,
    Cones,
    Admissible,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Count,
        Command::Tamagawa,
        Command::Scan,
        Command::Converge,
        Command::AuditUpper,
        Command::Limits,
        Command::Cones,
        Command::Admissible,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Count => "count",
            Command::Tamagawa => "tamagawa",
            Command::Scan => "scan",
            Command::Converge => "converge",
            Command::AuditUpper => "audit-upper",
            Command::Limits => "limits",
            Command::Cones => "cones",
            Command::Admissible => "admissible",
        }
    }

    /// Keys recorded in the report of this command.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Count => &["q", "r", "model_text", "class", "mode", "budget", "virtual", "d", "convention"],
            Command::Tamagawa => &["q", "r", "d"],
            Command::Scan => &[
                "q",
                "r",
                "model_text",
                "cone",
                "hmax",
                "include_zero",
                "mode",
                "budget",
                "virtual",
                "d",
                "convention",
            ],
            Command::Converge => &["q", "r", "model_text", "class", "mmax", "mode", "budget", "d"],
            Command::AuditUpper => &["q", "r", "model_text", "cone", "hmax", "mode", "budget"],
            Command::Limits => &["q", "r", "nmax", "d"],
            Command::Cones => &["r"],
            Command::Admissible => &["q", "r", "class"],
        }
    }

    fn needs_model(self) -> bool {
        matches!(self, Command::Count | Command::Scan | Command::Converge | Command::AuditUpper)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::config(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::config(format!("unknown format {s:?}"))),
        }
    }
}

/// A fully resolved run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub q: u64,
    pub r: usize,
    pub model: Option<SurfaceModel>,
    pub class: Option<DivisorClass>,
    pub cone: ConeSpec,
    pub hmax: i64,
    pub mmax: u32,
    pub nmax: u32,
    pub d: u64,
    pub mode: Mode,
    pub budget: u128,
    pub convention: Convention,
    pub include_zero: bool,
    pub virtual_counts: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Normalises a key: lower case, dashes to underscores.
pub fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('-', "_")
}

/// Reads `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("line {}: expected key=value", i + 1)))?;
        let k = normalize_key(k);
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::config(format!("line {}: unknown key {k:?}", i + 1)));
        }
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::config(format!("line {}: duplicate key {k:?}", i + 1)));
        }
    }
    Ok(out)
}

fn get<T: FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::config(format!("bad value for {key}: {v:?}"))),
    }
}

fn parse_bool(map: &BTreeMap<String, String>, key: &str, default: bool) -> Result<bool, CliError> {
    match map.get(key).map(String::as_str) {
        None => Ok(default),
        Some("true" | "1" | "yes") => Ok(true),
        Some("false" | "0" | "no") => Ok(false),
        Some(v) => Err(CliError::config(format!("bad value for {key}: {v:?}"))),
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::config(format!("bad integer {t:?} in {s:?}"))))
        .collect()
}

/// Model text with `;` in place of line breaks, as embedded in reports.
pub fn model_to_inline(m: &SurfaceModel) -> String {
    m.to_text().trim_end().replace('\n', ";")
}

impl RunConfig {
    /// Resolves a key map for `command`. Reads the model file named by
    /// `model`, if any.
    pub fn from_map(command: Command, map: &BTreeMap<String, String>) -> Result<RunConfig, CliError> {
        for k in map.keys() {
            if !KEYS.contains(&k.as_str()) {
                return Err(CliError::config(format!("unknown key {k:?}")));
            }
        }
        let model = match (map.get("model"), map.get("model_text")) {
            (Some(_), Some(_)) => return Err(CliError::config("give either model or model_text, not both")),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::io(format!("reading model {path}: {e}")))?;
                Some(SurfaceModel::parse(&text).map_err(CliError::model)?)
            }
            (None, Some(text)) => Some(SurfaceModel::parse(&text.replace(';', "\n")).map_err(CliError::model)?),
            (None, None) => None,
        };
        let q_key: Option<u64> = get(map, "q")?;
        let r_key: Option<usize> = get(map, "r")?;
        let (q, r) = match &model {
            Some(m) => {
                if q_key.is_some_and(|q| q != m.q()) || r_key.is_some_and(|r| r != m.r()) {
                    return Err(CliError::config("q or r disagrees with the model"));
                }
                (m.q(), m.r())
            }
            None => (q_key.unwrap_or(2), r_key.unwrap_or(3)),
        };
        if rcurves::gf::prime_power(q).is_none() || q > rcurves::gf::MAX_Q {
            return Err(CliError::config(format!("q = {q} is not a supported prime power")));
        }
        if !(1..=7).contains(&r) {
            return Err(CliError::config(format!("r = {r} outside 1..=7")));
        }
        let model = match model {
            Some(m) => Some(m),
            None if command.needs_model() => {
                let field = Field::with_order(q).map_err(CliError::config)?;
                Some(SurfaceModel::canonical(&field, r).map_err(CliError::model)?)
            }
            None => None,
        };
        let class = match (map.get("class"), map.get("a"), map.get("a_prime"), map.get("k")) {
            (Some(_), Some(_), _, _) | (Some(_), _, Some(_), _) | (Some(_), _, _, Some(_)) => {
                return Err(CliError::config("give either class or a, a_prime, k"))
            }
            (Some(c), None, None, None) => Some(DivisorClass::parse_in(c, Some(r)).map_err(CliError::config)?),
            (None, Some(a), Some(ap), Some(k)) => {
                let a: i64 = a.parse().map_err(|_| CliError::config(format!("bad value for a: {a:?}")))?;
                let ap: i64 = ap.parse().map_err(|_| CliError::config(format!("bad value for a_prime: {ap:?}")))?;
                let k = parse_list(k)?;
                if k.len() != r {
                    return Err(CliError::config(format!("k has {} entries, r = {r}", k.len())));
                }
                Some(DivisorClass::from_invariants(a, ap, &k).map_err(CliError::config)?)
            }
            (None, None, None, None) => None,
            _ => return Err(CliError::config("a, a_prime and k must be given together")),
        };
        let class = match command {
            Command::Count | Command::Converge | Command::Admissible => {
                Some(class.unwrap_or_else(|| DivisorClass::anticanonical(r)))
            }
            _ => class,
        };
        let cone = match map.get("cone") {
            Some(c) => ConeSpec::parse(c, r).map_err(CliError::config)?,
            None => ConeSpec::FullNef,
        };
        let threads: Option<usize> = get(map, "threads")?;
        if threads == Some(0) {
            return Err(CliError::config("threads must be positive"));
        }
        let cfg = RunConfig {
            command,
            q,
            r,
            model,
            class,
            cone,
            hmax: get(map, "hmax")?.unwrap_or(4),
            mmax: get(map, "mmax")?.unwrap_or(2),
            nmax: get(map, "nmax")?.unwrap_or(3),
            d: get(map, "d")?.unwrap_or(8),
            mode: map.get("mode").map(|m| m.parse()).transpose().map_err(CliError::config)?.unwrap_or(Mode::Accelerated),
            budget: get(map, "budget")?.unwrap_or(DEFAULT_BUDGET),
            convention: map
                .get("convention")
                .map(|c| c.parse())
                .transpose()
                .map_err(CliError::config)?
                .unwrap_or(Convention::Torsor),
            include_zero: parse_bool(map, "include_zero", false)?,
            virtual_counts: parse_bool(map, "virtual", true)?,
            format: get(map, "format")?.unwrap_or(Format::Csv),
            out: map.get("out").filter(|o| o.as_str() != "-").map(PathBuf::from),
            threads,
        };
        if cfg.mmax == 0 {
            return Err(CliError::config("mmax must be positive"));
        }
        Ok(cfg)
    }

    /// The settings that determine the output, as embedded in reports.
    /// Output format, destination and thread count are left out: they do
    /// not change the numbers.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        let mut all = BTreeMap::new();
        all.insert("q", self.q.to_string());
        all.insert("r", self.r.to_string());
        if let Some(m) = &self.model {
            all.insert("model_text", model_to_inline(m));
        }
        if let Some(c) = &self.class {
            all.insert("class", c.to_string());
        }
        all.insert("cone", self.cone.to_text());
        all.insert("hmax", self.hmax.to_string());
        all.insert("mmax", self.mmax.to_string());
        all.insert("nmax", self.nmax.to_string());
        all.insert("d", self.d.to_string());
        all.insert("mode", self.mode.as_str().to_string());
        all.insert("budget", self.budget.to_string());
        all.insert("convention", self.convention.as_str().to_string());
        all.insert("include_zero", self.include_zero.to_string());
        all.insert("virtual", self.virtual_counts.to_string());
        self.command
            .keys()
            .iter()
            .filter_map(|k| all.get(k).map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_parsing() {
        let m = parse_kv("# comment\nq = 3\n\nD=12\nhmax=4\n").unwrap();
        assert_eq!(m["q"], "3");
        assert_eq!(m["d"], "12");
        assert!(parse_kv("q=2\nq=3").is_err());
        assert!(parse_kv("bogus=1").is_err());
        assert!(parse_kv("no equals sign").is_err());
    }

    #[test]
    fn defaults_and_conflicts() {
        let m = parse_kv("q=2").unwrap();
        let c = RunConfig::from_map(Command::Count, &m).unwrap();
        assert_eq!(c.class.unwrap(), DivisorClass::anticanonical(3));
        assert_eq!(c.d, 8);
        let m = parse_kv("class=-K\na=1").unwrap();
        assert!(RunConfig::from_map(Command::Count, &m).is_err());
        let m = parse_kv("a=2\na_prime=2\nk=1,1,1").unwrap();
        let c = RunConfig::from_map(Command::Count, &m).unwrap();
        assert_eq!(c.class.unwrap(), DivisorClass::anticanonical(3));
        let m = parse_kv("q=6").unwrap();
        assert_eq!(RunConfig::from_map(Command::Tamagawa, &m).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn inline_model() {
        let m = parse_kv("model_text=2 2 1;3;0 1 0 1;1 1 1 1;1 0 1 0").unwrap();
        let c = RunConfig::from_map(Command::Scan, &m).unwrap();
        assert_eq!(c.q, 2);
        assert_eq!(c.resolved()["model_text"], "2 2 1;3;0 1 0 1;1 1 1 1;1 0 1 0");
        let m = parse_kv("model_text=2 2 1;3;0 1 0 1;0 1 1 1;1 0 1 0").unwrap();
        assert_eq!(RunConfig::from_map(Command::Scan, &m).unwrap_err().exit_code(), 4);
    }
}
