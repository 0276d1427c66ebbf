use serde::Serialize;

use origami_core::suites::{PointRecord, SuiteOutcome};

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub r1: u32,
    pub r2: u32,
    pub order: u32,
    pub seed: u64,
    pub num_points: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ComputeReport {
    pub command: &'static str,
    pub config: ConfigEcho,
    pub point: PointRecord,
    pub localized: Vec<String>,
    pub closed: Vec<String>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub config: ConfigEcho,
    pub result: SuiteOutcome,
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}
