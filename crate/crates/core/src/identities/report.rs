use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IdentityId, Variant};
use crate::arith::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Counterexample,
    SkippedPrecondition,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::SkippedPrecondition => "skipped_precondition",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter point, kept in insertion order (`u, v, w` before indices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(Vec<(String, Rational)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &str, value: impl Into<Rational>) -> Self {
        self.set(name, value.into());
        self
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        match self.0.iter_mut().find(|(k, _)| k == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ParamsVisitor;
        impl<'de> Visitor<'de> for ParamsVisitor {
            type Value = Params;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from parameter name to rational string")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Params, A::Error> {
                let mut out = Params::new();
                while let Some((k, v)) = access.next_entry::<String, Rational>()? {
                    out.0.push((k, v));
                }
                Ok(out)
            }
        }
        deserializer.deserialize_map(ParamsVisitor)
    }
}

/// Outcome of checking one identity at one parameter point, or over a swept
/// index range at fixed outer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: IdentityId,
    pub variant: Variant,
    pub params: Params,
    pub status: Status,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub note: String,
}

impl VerifyReport {
    pub fn skipped(id: IdentityId, variant: Variant, params: Params, why: impl Into<String>) -> Self {
        VerifyReport {
            id,
            variant,
            params,
            status: Status::SkippedPrecondition,
            lhs: None,
            rhs: None,
            note: why.into(),
        }
    }

    /// Compares `lhs` with every named right-hand route; the first mismatch
    /// becomes the counterexample.
    pub fn compare_routes(
        id: IdentityId,
        variant: Variant,
        params: Params,
        lhs: Rational,
        routes: Vec<(&str, Rational)>,
    ) -> Self {
        let names: Vec<&str> = routes.iter().map(|(n, _)| *n).collect();
        for (name, value) in &routes {
            if value != &lhs {
                return VerifyReport {
                    id,
                    variant,
                    params,
                    status: Status::Counterexample,
                    lhs: Some(lhs),
                    rhs: Some(value.clone()),
                    note: format!("route {name} differs"),
                };
            }
        }
        let rhs = routes.into_iter().next().map(|(_, v)| v);
        VerifyReport {
            id,
            variant,
            params,
            status: Status::Verified,
            lhs: Some(lhs),
            rhs,
            note: format!("routes agree: {}", names.join(", ")),
        }
    }

    pub fn compare(id: IdentityId, variant: Variant, params: Params, lhs: Rational, rhs: Rational) -> Self {
        Self::compare_routes(id, variant, params, lhs, vec![("rhs", rhs)])
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }
}
