use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Duration;

use grpforge_core::constructions::Check;
use grpforge_core::group::ConcreteGroup;
use grpforge_core::number::factorize;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Enumerations longer than this are fingerprinted but not listed.
const LISTED_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

/// A positive integer kept as its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredOrder {
    pub factors: Vec<PrimePower>,
    /// `p^e·q^f` rendering of `factors`.
    pub text: String,
}

impl FactoredOrder {
    pub fn from_factors(factors: &[(u64, u32)]) -> Self {
        let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
        for &(p, e) in factors {
            if e > 0 && p > 1 {
                *merged.entry(p).or_default() += e;
            }
        }
        let factors: Vec<PrimePower> = merged
            .into_iter()
            .map(|(prime, exponent)| PrimePower { prime, exponent })
            .collect();
        let text = if factors.is_empty() {
            "1".to_string()
        } else {
            factors
                .iter()
                .map(|f| {
                    if f.exponent == 1 {
                        f.prime.to_string()
                    } else {
                        format!("{}^{}", f.prime, f.exponent)
                    }
                })
                .collect::<Vec<_>>()
                .join("·")
        };
        Self { factors, text }
    }

    pub fn of(n: u64) -> Self {
        Self::from_factors(&factorize(n))
    }

    /// The value, when it fits.
    pub fn value(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, f| {
            acc.checked_mul((f.prime as u128).checked_pow(f.exponent)?)
        })
    }

    pub fn exponent_of(&self, prime: u64) -> u32 {
        self.factors.iter().find(|f| f.prime == prime).map_or(0, |f| f.exponent)
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)?;
        if self.factors.len() > 1 || self.factors.iter().any(|p| p.exponent > 1) {
            if let Some(v) = self.value() {
                write!(f, " = {v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        Self {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }
    }
}

/// Which enumeration order a result depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub group: String,
    pub order: usize,
    /// Leading 16 hex digits of SHA-256 over the element labels in order.
    pub fingerprint: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
}

impl Enumeration {
    pub fn of(g: &ConcreteGroup) -> Self {
        let mut hasher = Sha256::new();
        let mut elements = Vec::new();
        for x in g.elements() {
            let label = g.label(x);
            hasher.update(label.as_bytes());
            hasher.update(b"\n");
            if g.order() <= LISTED_ELEMENTS {
                elements.push(label);
            }
        }
        let digest = hasher.finalize();
        let mut fingerprint = String::with_capacity(16);
        for b in &digest[..8] {
            write!(fingerprint, "{b:02x}").expect("writing to a string");
        }
        Self {
            group: g.name().to_string(),
            order: g.order(),
            fingerprint,
            elements,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    /// Arguments as given on the command line, program name excluded.
    pub command: Vec<String>,
    pub spec: Option<String>,
    pub primes: BTreeMap<String, u32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub orders: BTreeMap<String, FactoredOrder>,
    pub values: BTreeMap<String, Value>,
    pub checks: Vec<CheckRecord>,
    pub enumeration: Vec<Enumeration>,
    /// Wall-clock time per phase in microseconds.
    pub timings_us: BTreeMap<String, u64>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            spec: None,
            primes: BTreeMap::new(),
            seed: None,
            samples: None,
            orders: BTreeMap::new(),
            values: BTreeMap::new(),
            checks: Vec::new(),
            enumeration: Vec::new(),
            timings_us: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckRecord {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        self.passed &= passed;
        passed
    }

    pub fn push_checks(&mut self, prefix: &str, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            let name = if prefix.is_empty() {
                c.name
            } else {
                format!("{prefix}: {}", c.name)
            };
            self.check(name, c.passed, c.detail);
        }
    }

    pub fn order(&mut self, name: impl Into<String>, order: FactoredOrder) {
        self.orders.insert(name.into(), order);
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.values.insert(name.into(), value.into());
    }

    pub fn prime(&mut self, name: impl Into<String>, p: u32) {
        self.primes.insert(name.into(), p);
    }

    pub fn timing(&mut self, phase: impl Into<String>, elapsed: Duration) {
        *self.timings_us.entry(phase.into()).or_default() += elapsed.as_micros() as u64;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grpforge {}", self.command.join(" "));
        if let Some(spec) = &self.spec {
            let _ = writeln!(out, "  group: {spec}");
        }
        if !self.primes.is_empty() {
            let primes: Vec<String> = self.primes.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(out, "  primes: {}", primes.join(", "));
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "  seed: {seed}");
        }
        for e in &self.enumeration {
            let _ = writeln!(
                out,
                "  enumeration of {} (order {}): {}",
                e.group, e.order, e.fingerprint
            );
        }
        for (k, v) in &self.orders {
            match k.rsplit_once(": ") {
                Some((case, name)) => writeln!(out, "  {case}: |{name}| = {v}"),
                None => writeln!(out, "  |{k}| = {v}"),
            }
            .expect("writing to a string");
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
        }
        let total = self
            .timings_us
            .get("total")
            .copied()
            .unwrap_or_else(|| self.timings_us.values().sum());
        let _ = writeln!(out, "  time: {:.3} s", total as f64 / 1e6);
        let _ = writeln!(out, "status: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
