//! The full per-graph certificate: spectrum summary plus the matching and
//! toughness sections, with the exit-code contract used by the CLI.

use serde::Serialize;

use crate::config::RunConfig;
use crate::graph::Graph;
use crate::hypothesis::{regular_violations, Violation};
use crate::matching::{certify_matchings, MatchingCertificate};
use crate::spectral::{spectrum, SpectralError};
use crate::toughness::{toughness_section, ToughnessCertificate};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_ANOMALY: i32 = 3;

pub const CSV_HEADER: [&str; 10] = [
    "graph_id",
    "n",
    "d",
    "lambda2",
    "guarantee",
    "achieved",
    "toughness_value",
    "prediction",
    "consistent",
    "borderline",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub lambda3: Option<f64>,
    pub lambda_n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub borderline: bool,
    pub anomaly: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub graph_id: String,
    pub n: usize,
    pub d: Option<usize>,
    pub spectrum_summary: SpectrumSummary,
    pub matching: Option<MatchingCertificate>,
    pub toughness: Option<ToughnessCertificate>,
    /// Every failed hypothesis across both sections.
    pub violations: Vec<Violation>,
    pub flags: Flags,
    pub seed: u64,
    pub tool_version: String,
}

/// Builds the certificate for `g`. Sections whose hypotheses fail are
/// omitted (matching) or carry no prediction (toughness).
pub fn analyze(g: &Graph, graph_id: &str, cfg: &RunConfig) -> Result<Certificate, SpectralError> {
    let spec = spectrum(g)?;
    let values = spec.values();
    let n = g.order();

    let matching = certify_matchings(g, &spec, cfg).ok();
    let toughness = toughness_section(g, &spec, cfg);

    let mut violations = Vec::new();
    if n % 2 == 1 {
        violations.push(Violation::OddOrder);
    }
    violations.extend(regular_violations(g));

    let anomaly = matching.as_ref().is_some_and(|m| !m.theorem_consistent)
        || toughness.theorem_consistent == Some(false);
    let borderline = matching.as_ref().is_some_and(|m| m.borderline) || toughness.borderline;

    Ok(Certificate {
        graph_id: graph_id.to_string(),
        n,
        d: g.regular_degree(),
        spectrum_summary: SpectrumSummary {
            lambda1: values[0],
            lambda2: values.get(1).copied(),
            lambda3: values.get(2).copied(),
            lambda_n: values[n - 1],
        },
        matching,
        toughness: Some(toughness),
        violations,
        flags: Flags { borderline, anomaly },
        seed: cfg.seed,
        tool_version: TOOL_VERSION.to_string(),
    })
}

impl Certificate {
    /// 3 on anomaly, else 2 on any hypothesis violation, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.flags.anomaly {
            EXIT_ANOMALY
        } else if !self.violations.is_empty() {
            EXIT_HYPOTHESIS
        } else {
            EXIT_OK
        }
    }

    /// One row under [`CSV_HEADER`]. Missing values are empty fields.
    pub fn csv_record(&self) -> [String; 10] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let t = self.toughness.as_ref();
        [
            self.graph_id.clone(),
            self.n.to_string(),
            opt(self.d.map(|d| d.to_string())),
            opt(self.spectrum_summary.lambda2.map(|l| format!("{l:.12}"))),
            opt(self.matching.as_ref().map(|m| m.guarantee_main.value.to_string())),
            opt(self.matching.as_ref().map(|m| m.achieved.to_string())),
            opt(t.and_then(|t| t.exact.as_ref()).map(|e| e.value.to_string())),
            opt(t.map(|t| t.prediction.to_string())),
            (!self.flags.anomaly).to_string(),
            self.flags.borderline.to_string(),
        ]
    }
}

/// Aggregate counts over a batch run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub processed: usize,
    pub consistent: usize,
    pub anomaly: usize,
    pub borderline: usize,
    pub hypothesis_violations: usize,
    pub skipped: usize,
}

impl CorpusSummary {
    pub fn record(&mut self, cert: &Certificate) {
        self.processed += 1;
        if cert.flags.anomaly {
            self.anomaly += 1;
        } else {
            self.consistent += 1;
        }
        if cert.flags.borderline {
            self.borderline += 1;
        }
        if !cert.violations.is_empty() {
            self.hypothesis_violations += 1;
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.anomaly > 0 {
            EXIT_ANOMALY
        } else {
            EXIT_OK
        }
    }
}
