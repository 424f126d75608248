//! JSON run reports. Numbers are written with 17 significant digits;
//! non-finite values become `null`.

use std::collections::BTreeMap;
use std::str::FromStr;

use killing_weyl::identities::{Comparison, IdentityReport};
use serde::{Serialize, Serializer};

pub const TOOL_VERSION: &str = concat!("killing-weyl ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let text = format!("{:.16e}", self.0);
        let n = serde_json::Number::from_str(&text).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Judge {
    Below,
    Above,
}

impl From<Comparison> for Judge {
    fn from(c: Comparison) -> Self {
        match c {
            Comparison::Below => Judge::Below,
            Comparison::Above => Judge::Above,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub residual: Num,
    pub tolerance: Num,
    pub comparison: Judge,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
}

impl Section {
    pub fn below(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            residual: Num(residual),
            tolerance: Num(tolerance),
            comparison: Judge::Below,
            pass: residual < tolerance,
            trials: None,
            values: BTreeMap::new(),
        }
    }

    pub fn above(name: &str, residual: f64, threshold: f64) -> Self {
        Self {
            comparison: Judge::Above,
            pass: residual > threshold,
            ..Self::below(name, residual, threshold)
        }
    }

    pub fn trials(mut self, n: usize) -> Self {
        self.trials = Some(n);
        self
    }

    pub fn value(mut self, key: &str, v: impl Serialize) -> Self {
        self.values
            .insert(key.to_string(), serde_json::to_value(v).expect("report values serialize"));
        self
    }
}

impl From<&IdentityReport> for Section {
    fn from(r: &IdentityReport) -> Self {
        Self {
            name: r.name.clone(),
            residual: Num(r.residual),
            tolerance: Num(r.tolerance),
            comparison: r.comparison.into(),
            pass: r.pass,
            trials: Some(r.trials),
            values: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: &'static str,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(seed: u64, sections: Vec<Section>, wall_time_ms: u64) -> Self {
        let verdict = if sections.iter().all(|s| s.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            tool_version: TOOL_VERSION,
            seed,
            sections,
            verdict,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(serde_json::to_string(&Num(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&Num(6.0)).unwrap(), "6.0000000000000000e+0");
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
        let back: f64 = serde_json::from_str(&serde_json::to_string(&Num(1.0 / 3.0)).unwrap()).unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn verdict_requires_every_section() {
        let ok = RunReport::new(0, vec![Section::below("a", 0.0, 1.0), Section::above("b", 2.0, 1.0)], 0);
        assert_eq!(ok.verdict, Verdict::Pass);
        let bad = RunReport::new(0, vec![Section::below("a", 0.0, 1.0), Section::below("c", f64::NAN, 1.0)], 0);
        assert_eq!(bad.verdict, Verdict::Fail);
        let v: serde_json::Value = serde_json::from_str(&ok.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["sections", "seed", "tool_version", "verdict", "wall_time_ms"]);
    }
}
