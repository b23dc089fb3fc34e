//! Residual statistics and the JSON verification report.
//!
//! The report serializes as one object keyed by identity name:
//!
//! ```json
//! {"we_residual": {"max_abs": ..., "l2": ..., "argmax": [x, y],
//!                  "nodes": ..., "pass": ..., "tolerance": ...},
//!  "errata": ["..."]}
//! ```
//!
//! BTreeMap keys and no timestamps keep re-runs byte-identical.

use crate::complex_core::C;
use serde::Serialize;
use std::collections::BTreeMap;

/// Per-identity residual statistics over the unmasked nodes of a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualStats {
    pub max_abs: f64,
    /// root-mean-square over unmasked nodes
    pub l2: f64,
    pub argmax: C,
    pub node_count: usize,
}

impl ResidualStats {
    /// Accumulate from per-node magnitudes.
    pub fn from_samples(samples: &[(C, f64)]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let mut max_abs = -1.0;
        let mut argmax = C::new(0.0, 0.0);
        let mut sq = 0.0;
        for &(z, v) in samples {
            if v > max_abs {
                max_abs = v;
                argmax = z;
            }
            sq += v * v;
        }
        Some(Self {
            max_abs,
            l2: (sq / samples.len() as f64).sqrt(),
            argmax,
            node_count: samples.len(),
        })
    }

    /// Merge component stats (e.g. the four equations of the system) into a
    /// single identity entry: max of maxima, rms over all samples.
    pub fn merged(parts: &[ResidualStats]) -> Option<Self> {
        if parts.is_empty() {
            return None;
        }
        let mut best = parts[0];
        let mut sq = 0.0;
        let mut n = 0usize;
        for p in parts {
            if p.max_abs > best.max_abs {
                best.max_abs = p.max_abs;
                best.argmax = p.argmax;
            }
            sq += p.l2 * p.l2 * p.node_count as f64;
            n += p.node_count;
        }
        Some(Self {
            max_abs: best.max_abs,
            l2: (sq / n as f64).sqrt(),
            argmax: best.argmax,
            node_count: n,
        })
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IdentityReport {
    pub max_abs: f64,
    pub l2: f64,
    pub argmax: [f64; 2],
    pub nodes: usize,
    pub pass: bool,
    pub tolerance: f64,
}

impl IdentityReport {
    pub fn from_stats(stats: &ResidualStats, tolerance: f64) -> Self {
        Self {
            max_abs: stats.max_abs,
            l2: stats.l2,
            argmax: [stats.argmax.re, stats.argmax.im],
            nodes: stats.node_count,
            pass: stats.max_abs < tolerance,
            tolerance,
        }
    }
}

/// Verification report: one entry per requested identity plus free-text
/// errata annotations, so a catalogued formula that fails as printed is a
/// first-class reportable outcome.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    #[serde(flatten)]
    identities: BTreeMap<String, IdentityReport>,
    pub errata: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert an identity entry. Each identity may appear exactly once;
    /// inserting a duplicate key panics, which indicates a caller bug.
    pub fn insert(&mut self, identity: &str, stats: &ResidualStats, tolerance: f64) {
        let prior = self
            .identities
            .insert(identity.to_string(), IdentityReport::from_stats(stats, tolerance));
        assert!(prior.is_none(), "identity `{identity}` reported twice");
    }

    pub fn insert_report(&mut self, identity: &str, report: IdentityReport) {
        let prior = self.identities.insert(identity.to_string(), report);
        assert!(prior.is_none(), "identity `{identity}` reported twice");
    }

    pub fn annotate(&mut self, note: impl Into<String>) {
        self.errata.push(note.into());
    }

    pub fn get(&self, identity: &str) -> Option<&IdentityReport> {
        self.identities.get(identity)
    }

    pub fn identities(&self) -> impl Iterator<Item = (&String, &IdentityReport)> {
        self.identities.iter()
    }

    pub fn all_pass(&self) -> bool {
        self.identities.values().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_invariants() {
        let s = ResidualStats::from_samples(&[
            (C::new(0.0, 0.0), 1.0),
            (C::new(1.0, 0.0), 3.0),
            (C::new(0.0, 1.0), 2.0),
        ])
        .unwrap();
        assert_eq!(s.max_abs, 3.0);
        assert_eq!(s.argmax, C::new(1.0, 0.0));
        assert!(s.l2 <= s.max_abs);
        assert_eq!(s.node_count, 3);
    }

    #[test]
    fn report_schema_field_names() {
        let mut r = VerificationReport::new();
        let s = ResidualStats::from_samples(&[(C::new(0.5, -0.5), 1e-9)]).unwrap();
        r.insert("we_residual", &s, 1e-6);
        r.annotate("note");
        let json = r.to_json();
        for key in [
            "\"we_residual\"",
            "\"max_abs\"",
            "\"l2\"",
            "\"argmax\"",
            "\"nodes\"",
            "\"pass\"",
            "\"tolerance\"",
            "\"errata\"",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        assert!(r.get("we_residual").unwrap().pass);
    }

    #[test]
    #[should_panic(expected = "reported twice")]
    fn duplicate_identity_panics() {
        let mut r = VerificationReport::new();
        let s = ResidualStats::from_samples(&[(C::new(0.0, 0.0), 0.0)]).unwrap();
        r.insert("x", &s, 1.0);
        r.insert("x", &s, 1.0);
    }
}
