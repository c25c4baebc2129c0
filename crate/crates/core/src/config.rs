use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::completion::Method;
use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_subset_n`].
pub const MAX_SUBSET_N_ENV: &str = "MEREO_MAX_SUBSET_N";

/// Bounds on the exponential parts of the library.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest carrier whose nonempty subsets are enumerated exhaustively
    /// (S(P), G(P), H(P) construction and map analysis).
    pub max_subset_n: usize,
    /// Largest carrier for F(P), whose output is itself exponential.
    pub max_fp_n: usize,
    /// Largest signature closure built when deciding completeness.
    pub max_signatures: usize,
    /// Node budget for the isomorphism search.
    pub max_search_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subset_n: 20,
            max_fp_n: 16,
            max_signatures: 1 << 20,
            max_search_steps: 5_000_000,
        }
    }
}

impl Limits {
    /// Applies the `MEREO_MAX_SUBSET_N` override, if set.
    pub fn with_env_override(mut self) -> Result<Self> {
        if let Ok(raw) = std::env::var(MAX_SUBSET_N_ENV) {
            self.max_subset_n = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_SUBSET_N_ENV}={raw:?} is not a count")))?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_subset_n == 0 || self.max_fp_n == 0 {
            return Err(Error::Config("subset bounds must be positive".into()));
        }
        // Subset enumeration packs a carrier into one machine word.
        if self.max_subset_n > 63 || self.max_fp_n > 63 {
            return Err(Error::Config("subset bounds above 63 are not supported".into()));
        }
        if self.max_signatures == 0 || self.max_search_steps == 0 {
            return Err(Error::Config("search bounds must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn check_subsets(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_subset_n {
            return Err(Error::ResourceLimit {
                what,
                size: n,
                limit: self.max_subset_n,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
    Dot,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "structured" | "json" => Ok(OutputFormat::Structured),
            "dot" => Ok(OutputFormat::Dot),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Structured => "structured",
            OutputFormat::Dot => "dot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub method: Method,
    pub limits: Limits,
    pub drop_bottom: bool,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            method: Method::Gp,
            limits: Limits::default(),
            drop_bottom: false,
            format: OutputFormat::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.limits.validate()
    }
}
