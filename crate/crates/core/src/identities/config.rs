use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IdentityId;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Largest number of indices a single range may span.
pub const MAX_RANGE_LEN: i64 = 100_000;

/// Inclusive integer range, written `a..b` (or a single integer).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: i64,
    pub end: i64,
}

impl IndexRange {
    pub fn new(start: i64, end: i64) -> Result<Self> {
        if start > end {
            return Err(Error::Config(format!("empty range {start}..{end}")));
        }
        if end - start >= MAX_RANGE_LEN {
            return Err(Error::Config(format!("range {start}..{end} is too long")));
        }
        Ok(IndexRange { start, end })
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }

    pub fn len(self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Intersection with `lo..hi`; `None` if disjoint.
    pub fn clip(self, lo: i64, hi: i64) -> Option<IndexRange> {
        let (s, e) = (self.start.max(lo), self.end.min(hi));
        (s <= e).then_some(IndexRange { start: s, end: e })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for IndexRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("bad range {s:?}, expected a..b"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        IndexRange::new(a, b)
    }
}

impl Serialize for IndexRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IndexRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Single(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Single(n) => IndexRange::new(n, n).map_err(serde::de::Error::custom),
        }
    }
}

/// Which identities to run: every catalog entry, or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Suites {
    #[default]
    All,
    List(Vec<IdentityId>),
}

impl Suites {
    pub fn ids(&self) -> Vec<IdentityId> {
        match self {
            Suites::All => IdentityId::ALL.to_vec(),
            Suites::List(ids) => {
                let mut ids = ids.clone();
                ids.sort_by_key(|id| id.as_str());
                ids.dedup();
                ids
            }
        }
    }
}

impl FromStr for Suites {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "all" {
            return Ok(Suites::All);
        }
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Suites::List)
    }
}

impl Serialize for Suites {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Suites::All => s.serialize_str("all"),
            Suites::List(ids) => ids.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Suites {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Word(String),
            List(Vec<String>),
        }
        match Repr::deserialize(d)? {
            Repr::Word(w) if w == "all" => Ok(Suites::All),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "suites must be \"all\" or a list, got {w:?}"
            ))),
            Repr::List(names) => names
                .iter()
                .map(|n| n.parse::<IdentityId>())
                .collect::<Result<Vec<_>>>()
                .map(Suites::List)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// How the two-variant identities are run.
///
/// `default` and `both` run the derivation-consistent form as the primary
/// check and the printed form as an informational one. `as_stated_only`
/// runs only the printed form, still informational for those identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantPolicy {
    #[default]
    Default,
    AsStatedOnly,
    Both,
}

impl FromStr for VariantPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(VariantPolicy::Default),
            "as_stated_only" | "as-stated-only" => Ok(VariantPolicy::AsStatedOnly),
            "both" => Ok(VariantPolicy::Both),
            other => Err(Error::Config(format!("unknown variant policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Parameter grid. Unset entries fall back to per-identity defaults.
///
/// `uvw` lists explicit triples and wins over the `u`, `v`, `w` lists,
/// whose cartesian product is used otherwise (a missing list means
/// `-2..3`).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uvw: Option<Vec<[Rational; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<IndexRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<IndexRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<IndexRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<IndexRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<IndexRange>,
}

impl GridSpec {
    pub fn has_uvw(&self) -> bool {
        self.uvw.is_some() || self.u.is_some() || self.v.is_some() || self.w.is_some()
    }
}

/// A verification run: which identities, which variants, which grid, and
/// where the report goes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub suites: Suites,
    #[serde(default)]
    pub variant: VariantPolicy,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl GridConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: GridConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn suites(ids: &[IdentityId]) -> Self {
        GridConfig {
            suites: Suites::List(ids.to_vec()),
            ..GridConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        for (name, range) in [("k", g.k), ("i", g.i), ("j", g.j), ("l", g.l)] {
            if let Some(r) = range {
                if r.start < 0 {
                    return Err(Error::Config(format!("{name} must be non-negative, got {r}")));
                }
            }
        }
        Ok(())
    }
}
