//! Flat `key = value` configuration files and their merge with flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use symdomain::hwv::Signature;
use symdomain::jts::DomainConfig;

use crate::error::VerifyError;
use crate::report::Format;
use crate::suite::Options;

/// Every setting a flag or a config line can carry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub domain: Option<String>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub alpha: Option<f64>,
    pub signature: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, VerifyError> {
    v.parse()
        .map_err(|_| VerifyError::ConfigInvalid(format!("bad value {v:?} for {key}")))
}

impl Settings {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_str(text: &str) -> Result<Self, VerifyError> {
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| VerifyError::ConfigInvalid(format!("line {}: expected key = value", no + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut s = Settings::default();
        for (k, v) in &map {
            match k.as_str() {
                "domain" => s.domain = Some(v.clone()),
                "n" => s.n = Some(parse(k, v)?),
                "p" => s.p = Some(parse(k, v)?),
                "q" => s.q = Some(parse(k, v)?),
                "alpha" => s.alpha = Some(parse(k, v)?),
                "signature" => s.signature = Some(v.clone()),
                "seed" => s.seed = Some(parse(k, v)?),
                "samples" => s.samples = Some(parse(k, v)?),
                "tol" => s.tol = Some(parse(k, v)?),
                "out" => s.out = Some(PathBuf::from(v)),
                "format" => s.format = Some(v.clone()),
                other => return Err(VerifyError::ConfigInvalid(format!("unknown key {other:?}"))),
            }
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VerifyError::ConfigInvalid(format!("{}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Fields set in `over` win.
    pub fn overridden_by(self, over: Settings) -> Settings {
        Settings {
            domain: over.domain.or(self.domain),
            n: over.n.or(self.n),
            p: over.p.or(self.p),
            q: over.q.or(self.q),
            alpha: over.alpha.or(self.alpha),
            signature: over.signature.or(self.signature),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
            tol: over.tol.or(self.tol),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
        }
    }

    pub fn domain_config(&self) -> Result<Option<DomainConfig>, VerifyError> {
        let Some(kind) = &self.domain else {
            if self.n.is_some() || self.p.is_some() || self.q.is_some() {
                return Err(VerifyError::ConfigInvalid("--n/--p/--q need --domain".into()));
            }
            return Ok(None);
        };
        match kind.as_str() {
            "ball" | "disk" => Ok(Some(DomainConfig {
                kind: "ball".into(),
                n: Some(self.n.unwrap_or(1)),
                p: None,
                q: None,
            })),
            "matrix" => Ok(Some(DomainConfig {
                kind: "matrix".into(),
                n: None,
                p: Some(self.p.unwrap_or(2)),
                q: Some(self.q.or(self.p).unwrap_or(2)),
            })),
            other => Err(VerifyError::ConfigInvalid(format!("unknown domain {other:?}"))),
        }
    }

    pub fn signature(&self) -> Result<Option<Signature>, VerifyError> {
        self.signature
            .as_deref()
            .map(|s| Signature::parse(s).map_err(|e| VerifyError::ConfigInvalid(e.to_string())))
            .transpose()
    }

    pub fn format(&self) -> Result<Format, VerifyError> {
        self.format.as_deref().unwrap_or("json").parse()
    }

    pub fn options(&self) -> Result<Options, VerifyError> {
        Ok(Options {
            domain: self.domain_config()?,
            alpha: self.alpha,
            signature: self.signature()?,
            seed: self.seed.unwrap_or(42),
            samples: self.samples,
            tol: self.tol,
        })
    }
}
