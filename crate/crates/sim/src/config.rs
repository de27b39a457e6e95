//! Simulation configuration and its JSON file form.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use polar_core::{
    construct_code, load_frozen_set, ConstructionMethod, CrcSpec, DecoderKind, PmMode, PolarCode,
};
use serde::{Deserialize, Serialize};

use crate::error::{read_file, Result, SimError};

/// Serializes a value through its `Display` / `FromStr` pair.
mod as_str {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// Which code to simulate: constructed from `(n, k)` or read from a frozen-set file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frozen_file: Option<PathBuf>,
    #[serde(default = "default_design_ebn0")]
    pub design_ebn0_db: f64,
    #[serde(default, with = "as_str")]
    pub method: ConstructionMethod,
    /// `none`, `crc8` or `crc32`.
    #[serde(default = "default_crc")]
    pub crc: String,
}

fn default_design_ebn0() -> f64 {
    2.0
}

fn default_crc() -> String {
    "none".into()
}

impl CodeSpec {
    pub fn constructed(n: u32, k: usize) -> Self {
        Self {
            n,
            k: Some(k),
            frozen_file: None,
            design_ebn0_db: default_design_ebn0(),
            method: ConstructionMethod::default(),
            crc: default_crc(),
        }
    }

    pub fn with_crc(mut self, crc: &str) -> Self {
        self.crc = crc.into();
        self
    }

    pub fn build(&self) -> Result<PolarCode> {
        let code = match (&self.frozen_file, self.k) {
            (Some(path), _) => {
                let code = load_frozen_set(&read_file(path)?, self.n)?;
                if let Some(k) = self.k {
                    if k != code.k() {
                        return Err(SimError::Config(format!(
                            "k = {k} but {} leaves {} information bits",
                            path.display(),
                            code.k()
                        )));
                    }
                }
                code
            }
            (None, Some(k)) => construct_code(self.n, k, self.design_ebn0_db, self.method)?,
            (None, None) => {
                return Err(SimError::Config(
                    "either k or frozen_file is required".into(),
                ))
            }
        };
        Ok(code.with_crc(CrcSpec::from_name(&self.crc)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: CodeSpec,
    #[serde(with = "as_str")]
    pub algo: DecoderKind,
    pub list_size: usize,
    #[serde(default, with = "as_str")]
    pub pm_mode: PmMode,
    pub ebn0_db: Vec<f64>,
    pub max_frames: u64,
    #[serde(default = "default_max_frame_errors")]
    pub max_frame_errors: u64,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; 0 uses every available core.
    #[serde(default)]
    pub workers: usize,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_max_frame_errors() -> u64 {
    100
}

impl SimConfig {
    pub fn new(
        code: CodeSpec,
        algo: DecoderKind,
        list_size: usize,
        pm_mode: PmMode,
        ebn0_db: Vec<f64>,
    ) -> Self {
        Self {
            code,
            algo,
            list_size,
            pm_mode,
            ebn0_db,
            max_frames: 10_000,
            max_frame_errors: default_max_frame_errors(),
            seed: 0,
            workers: 0,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_frames == 0 {
            return Err(SimError::Config("max_frames must be at least 1".into()));
        }
        if self.max_frame_errors == 0 {
            return Err(SimError::Config(
                "max_frame_errors must be at least 1".into(),
            ));
        }
        if self.ebn0_db.is_empty() {
            return Err(SimError::Config("Eb/N0 list is empty".into()));
        }
        if let Some(bad) = self.ebn0_db.iter().find(|v| !v.is_finite()) {
            return Err(SimError::Config(format!("Eb/N0 {bad} is not finite")));
        }
        if self.list_size == 0 {
            return Err(SimError::Config("list size must be at least 1".into()));
        }
        if self.algo == DecoderKind::Sc && self.list_size != 1 {
            return Err(SimError::Config("SC decoding requires list size 1".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&read_file(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses `start:step:stop` (inclusive) or a comma-separated list of Eb/N0 values.
pub fn parse_ebn0_list(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: &str| SimError::Config(format!("Eb/N0 list '{text}': {msg}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step <= 0.0 || step.is_nan() || stop < start {
                return Err(bad("needs a positive step and stop >= start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            (0..count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect()
        }
        [list] => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>>>()?,
        _ => return Err(bad("expected start:step:stop or a comma list")),
    };
    if values.is_empty() {
        return Err(bad("no values"));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            parse_ebn0_list("1.0:0.5:4.0").unwrap(),
            vec![1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]
        );
        assert_eq!(
            parse_ebn0_list("0:0.1:0.3").unwrap(),
            vec![0.0, 0.1, 0.2, 0.3]
        );
        assert_eq!(parse_ebn0_list("1,2, 3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_ebn0_list("2.5").unwrap(), vec![2.5]);
        for bad in ["", "1:0:3", "3:1:1", "a", "1:2"] {
            assert!(parse_ebn0_list(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = SimConfig::new(
            CodeSpec::constructed(6, 32).with_crc("crc8"),
            DecoderKind::Capped(2),
            8,
            PmMode::Exact,
            vec![1.0, 2.5],
        );
        cfg.seed = 42;
        cfg.format = OutputFormat::Json;
        let text = cfg.to_json();
        assert!(text.contains("\"capped:2\""));
        assert_eq!(SimConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = SimConfig::from_json(
            r#"{"code": {"n": 6, "k": 32}, "algo": "fast-sscl", "list_size": 4, "ebn0_db": [2.0], "max_frames": 10}"#,
        )
        .unwrap();
        assert_eq!(cfg.max_frame_errors, 100);
        assert_eq!(cfg.pm_mode, PmMode::Hwf);
        assert_eq!(cfg.code.crc, "none");
        assert_eq!(cfg.code.build().unwrap().k(), 32);
    }

    #[test]
    fn invalid_configs() {
        let base = SimConfig::new(
            CodeSpec::constructed(6, 32),
            DecoderKind::Scl,
            2,
            PmMode::Hwf,
            vec![1.0],
        );
        let mut c = base.clone();
        c.max_frames = 0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.ebn0_db.clear();
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.algo = DecoderKind::Sc;
        assert!(c.validate().is_err());
        let spec = CodeSpec {
            k: None,
            ..CodeSpec::constructed(6, 32)
        };
        assert!(spec.build().is_err());
        assert!(CodeSpec::constructed(6, 8).with_crc("crc8").build().is_ok());
        assert!(CodeSpec::constructed(6, 16)
            .with_crc("crc32")
            .build()
            .is_err());
    }
}
