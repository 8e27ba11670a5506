//! Report assembly and rendering: the versioned JSON envelope and the
//! deterministic text format. Identical inputs must produce byte-identical
//! output in both formats.

use serde::{Deserialize, Serialize};

use qdft_core::claims::{
    Backend, CheckConfig, ClaimResult, ClaimStatus, CoefficientPair, ResidualValue,
};
use qdft_core::cyclo::RootOfUnity;

/// The effective configuration echoed into every report, so a saved report
/// is self-describing (including the seed behind any sampled cross-checks).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub command: String,
    pub backend: Backend,
    pub root_order: u32,
    pub max_n: usize,
    pub pairwise_dims: Vec<usize>,
    pub float_tolerance: f64,
    pub random_seed: u64,
    pub timings: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inject_fault: Option<String>,
}

impl ConfigRecord {
    pub fn new(command: &str, config: &CheckConfig) -> Self {
        ConfigRecord {
            command: command.to_string(),
            backend: config.backend,
            root_order: config.root_order,
            max_n: config.max_n,
            pairwise_dims: config.pairwise_dims.clone(),
            float_tolerance: config.float_tolerance,
            random_seed: config.random_seed,
            timings: config.timings,
            inject_fault: config.inject_fault.clone(),
        }
    }
}

/// The versioned report envelope.
#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub config: ConfigRecord,
    pub results: Vec<ClaimResult>,
    /// Present only for the coefficient-solver command.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<CoefficientPair>>,
}

impl Report {
    pub fn new(config: ConfigRecord, results: Vec<ClaimResult>) -> Self {
        Report {
            version: 1,
            config,
            results,
            solutions: None,
        }
    }

    /// True iff no claim failed a mandatory condition (caveats pass).
    pub fn passes(&self) -> bool {
        self.results.iter().all(|r| !r.status.is_failure())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// The deterministic text rendering: one block per claim — a summary
    /// line (id, status, location, detail) plus expanded residuals for
    /// anything other than a clean verification — and a final tally.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for result in &self.results {
            out.push_str(&render_claim(result));
        }
        let mut counts: Vec<(ClaimStatus, usize)> = Vec::new();
        for result in &self.results {
            match counts.iter_mut().find(|(s, _)| *s == result.status) {
                Some((_, n)) => *n += 1,
                None => counts.push((result.status, 1)),
            }
        }
        let tally = counts
            .iter()
            .map(|(status, n)| format!("{n} {status}"))
            .collect::<Vec<_>>()
            .join(", ");
        let verdict = if self.passes() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "suite: {verdict} ({} claims: {tally})\n",
            self.results.len(),
        ));
        out
    }
}

fn render_claim(result: &ClaimResult) -> String {
    // Caveats and failures are rendered in upper case so they stand out in
    // a scan of the left columns.
    let status = match result.status {
        ClaimStatus::Verified => "verified".to_string(),
        ClaimStatus::Consistent => "consistent".to_string(),
        other => other.to_string().to_uppercase(),
    };
    let mut block = format!(
        "{:<6} {:<13} [{}] {}\n",
        result.claim_id, status, result.paper_location, result.detail,
    );
    if result.status != ClaimStatus::Verified && result.status != ClaimStatus::Consistent {
        for residual in &result.residuals {
            block.push_str(&format!(
                "       residual {} = {}\n",
                residual.name,
                render_residual(&residual.value),
            ));
        }
    }
    if result.timing_ms > 0 {
        block.push_str(&format!("       timing: {} ms\n", result.timing_ms));
    }
    block
}

pub fn render_residual(value: &ResidualValue) -> String {
    match value {
        ResidualValue::Polynomial(p) => p.to_string(),
        ResidualValue::Number(z) => z.to_string(),
        ResidualValue::Magnitude(m) => format!("{m:e}"),
    }
}

/// Text listing for the coefficient solver: the solutions as reduced roots
/// of unity, then the claim block.
pub fn render_solutions(
    roots: &[(RootOfUnity, RootOfUnity)],
    order: u32,
    result: &ClaimResult,
) -> String {
    let mut out = format!(
        "solutions over the {order}th roots of unity ({}):\n",
        roots.len(),
    );
    for (alpha, beta) in roots {
        out.push_str(&format!("  ({alpha}, {beta})\n"));
    }
    out.push_str(&render_claim(result));
    out
}
