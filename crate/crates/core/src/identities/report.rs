use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    ThmMain,
    ThmPrime,
    PropQ1,
    PropQ2,
    Lemma32,
    ExpIdentity,
    MoebiusPsiSigma,
    DeltaHecke,
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityId::ThmMain => "THM_MAIN",
            IdentityId::ThmPrime => "THM_PRIME",
            IdentityId::PropQ1 => "PROP_Q1",
            IdentityId::PropQ2 => "PROP_Q2",
            IdentityId::Lemma32 => "LEMMA32",
            IdentityId::ExpIdentity => "EXP_IDENTITY",
            IdentityId::MoebiusPsiSigma => "MOEBIUS_PSI_SIGMA",
            IdentityId::DeltaHecke => "DELTA_HECKE",
        };
        f.write_str(s)
    }
}

/// First point where the two sides disagree.
///
/// For series identities `degree` is the exponent of the coefficient. Scalar
/// identities use it as a component index (`0` for the `a/d` sum, `1` for the
/// `b/d` sum) and the Möbius sweep stores the failing `N` there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: u64,
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    pub fn new(degree: u64, lhs: impl ToString, rhs: impl ToString) -> Self {
        Mismatch {
            degree,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of one identity check. `pass` holds exactly when there is no
/// mismatch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    identity: IdentityId,
    params: BTreeMap<String, Value>,
    pass: bool,
    first_mismatch: Option<Mismatch>,
    elapsed_ms: f64,
}

impl VerifyReport {
    pub(crate) fn finish(
        identity: IdentityId,
        params: Params,
        first_mismatch: Option<Mismatch>,
        started: Instant,
    ) -> Self {
        VerifyReport {
            identity,
            params: params.0,
            pass: first_mismatch.is_none(),
            first_mismatch,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn identity(&self) -> IdentityId {
        self.identity
    }

    pub fn params(&self) -> &BTreeMap<String, Value> {
        &self.params
    }

    pub fn param(&self, key: &str) -> Option<&Value> {
        self.params.get(key)
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.first_mismatch.as_ref()
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed_ms
    }

    /// Serialized report without the wall-clock field; identical runs give
    /// identical fingerprints.
    pub fn fingerprint(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("elapsed_ms");
        }
        v.to_string()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}",
            self.identity,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        for (k, v) in &self.params {
            match v {
                Value::String(s) => writeln!(f, "  {k}: {s}")?,
                other => writeln!(f, "  {k}: {other}")?,
            }
        }
        if let Some(m) = &self.first_mismatch {
            writeln!(f, "  first mismatch at {}:", m.degree)?;
            writeln!(f, "    lhs = {}", m.lhs)?;
            writeln!(f, "    rhs = {}", m.rhs)?;
        }
        write!(f, "  elapsed: {:.3} ms", self.elapsed_ms)
    }
}

/// Ordered parameter map builder.
#[derive(Debug, Default)]
pub(crate) struct Params(BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_owned(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_owned(), value.into());
    }
}
