use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::checks::JobOutput;
use super::{SuiteConfig, Tier};
use crate::dersolve::{Direction, MapParity, Mode};
use crate::exactfield::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub algebra: String,
    pub inputs: String,
    pub dims: BTreeMap<String, usize>,
    pub verdict: Verdict,
    pub witness: Option<String>,
    /// Elapsed time; kept out of serialized reports so they stay byte-stable.
    #[serde(skip)]
    pub wall_ms: u128,
}

/// One classified `(algebra, mode, parity, δ)` query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub algebra: String,
    pub mode: Mode,
    pub parity: MapParity,
    pub delta: Scalar,
    pub dim: usize,
    pub verdict: Direction,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub tier: Tier,
    pub seed: u64,
    pub passed: bool,
    pub summary: Summary,
    /// Witness of the first failing record in manifest order.
    pub first_failure: Option<String>,
    pub records: Vec<Record>,
    pub table: Vec<TableRow>,
}

impl SuiteReport {
    pub(crate) fn assemble(cfg: &SuiteConfig, outputs: Vec<JobOutput>) -> Self {
        let mut records = Vec::new();
        let mut table = Vec::new();
        for o in outputs {
            records.extend(o.records);
            table.extend(o.table);
        }
        let failed = records
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .count();
        let first_failure = records
            .iter()
            .find(|r| r.verdict == Verdict::Fail)
            .map(|r| format!("{}: {}", r.id, r.witness.as_deref().unwrap_or("")));
        SuiteReport {
            suite: "paper".into(),
            tier: cfg.tier,
            seed: cfg.seed,
            passed: failed == 0,
            summary: Summary {
                total: records.len(),
                passed: records.len() - failed,
                failed,
            },
            first_failure,
            records,
            table,
        }
    }

    pub fn total_wall_ms(&self) -> u128 {
        self.records.iter().map(|r| r.wall_ms).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format {s:?}; expected json or markdown")),
        }
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
    }
}

fn direction_word(d: Direction) -> &'static str {
    match d {
        Direction::Zero => "zero",
        Direction::IsDerivation => "is_derivation",
        Direction::IsZeroDerivation => "is_zero_derivation",
        Direction::InCentroid => "in_centroid",
        Direction::InSupercentroid => "in_supercentroid",
        Direction::Nontrivial => "NONTRIVIAL",
    }
}

/// Canonical document for a report; identical reports give identical bytes.
pub fn emit_report(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Markdown => markdown(r),
    }
}

fn markdown(r: &SuiteReport) -> String {
    let mut s = String::new();
    let status = if r.passed { "PASSED" } else { "FAILED" };
    let _ = writeln!(
        s,
        "# Suite `{}`, tier {}, seed {}: {status}\n",
        r.suite, r.tier, r.seed
    );
    let _ = writeln!(
        s,
        "{} checks, {} passed, {} failed.\n",
        r.summary.total, r.summary.passed, r.summary.failed
    );
    if let Some(f) = &r.first_failure {
        let _ = writeln!(s, "First failure: {f}\n");
    }
    s += "## Checks\n\n| check | anchor | dims | verdict | witness |\n|---|---|---|---|---|\n";
    for rec in &r.records {
        let dims: Vec<String> = rec.dims.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            rec.id,
            rec.anchor,
            dims.join(", "),
            verdict_word(rec.verdict),
            rec.witness.as_deref().unwrap_or("")
        );
    }
    s += "\n## Classification\n\n| algebra | mode | parity | delta | dim | verdict |\n|---|---|---|---|---|---|\n";
    for row in &r.table {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} |",
            row.algebra,
            row.mode,
            row.parity,
            row.delta,
            row.dim,
            direction_word(row.verdict)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::super::{run_suite, AlgebraSpec, Job, SuiteConfig};
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig::with_jobs(
            Tier::Fast,
            7,
            vec![(
                "test".into(),
                Job::Algebra {
                    spec: AlgebraSpec::K3,
                },
            )],
        )
    }

    #[test]
    fn json_round_trips() {
        let r = run_suite(&small()).unwrap();
        let text = emit_report(&r, Format::Json);
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(emit_report(&back, Format::Json), text);
    }

    #[test]
    fn markdown_has_one_row_per_query() {
        let r = run_suite(&small()).unwrap();
        let md = emit_report(&r, Format::Markdown);
        let rows = md.lines().filter(|l| l.starts_with("| K3 |")).count();
        assert_eq!(rows, r.table.len());
        assert!(!r.table.is_empty());
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = emit_report(&run_suite(&small()).unwrap(), Format::Json);
        let b = emit_report(&run_suite(&small()).unwrap(), Format::Json);
        assert_eq!(a, b);
    }
}
