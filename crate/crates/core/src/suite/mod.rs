//! The verification battery: a manifest of checks, a parallel runner and a deterministic report.

mod checks;
mod report;
mod spec;

pub use report::{emit_report, Format, Record, SuiteReport, Summary, TableRow, Verdict};
pub use spec::{AlgebraSpec, Kind};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dersolve::DerError;
use crate::exactfield::Scalar;
use crate::jordancons::JordanError;
use crate::liecons::LieError;
use crate::superalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("bad algebra spec: {0}")]
    Spec(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Der(#[from] DerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Fast,
    Full,
    Extended,
}

impl FromStr for Tier {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Tier::Fast),
            "full" => Ok(Tier::Full),
            "extended" => Ok(Tier::Extended),
            _ => Err(format!(
                "unknown tier {s:?}; expected fast, full or extended"
            )),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Full => "full",
            Tier::Extended => "extended",
        })
    }
}

/// One unit of work in the battery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "job", rename_all = "snake_case")]
pub enum Job {
    /// Construction gate, roots, δ scans, classification and the per-kind property checks.
    Algebra { spec: AlgebraSpec },
    /// `ē_i•(ē_i•x)` over all monomials of `Γ₃`, plain and barred.
    ProjectionIdentities,
    /// ½-derivations of a unital flexible algebra commute with the commutator.
    CommutatorCentroid { spec: AlgebraSpec },
    /// `Δ_δ(A) = Δ_δ(A⁽⁺⁾) ∩ Δ_δ(A⁽⁻⁾)` and the same for centroids.
    PlusMinusIntersection { spec: AlgebraSpec },
}

impl Job {
    /// Name of the algebra the job examines; record ids are prefixed with it.
    pub fn name(&self) -> String {
        match self {
            Job::Algebra { spec } => spec.to_string(),
            Job::ProjectionIdentities => "J(Gamma3)".into(),
            Job::CommutatorCentroid { spec } | Job::PlusMinusIntersection { spec } => {
                spec.to_string()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub tier: Tier,
    /// What property of the theory this entry exercises.
    pub anchor: String,
    pub job: Job,
}

fn entry(tier: Tier, anchor: &str, job: Job) -> ManifestEntry {
    ManifestEntry {
        tier,
        anchor: anchor.to_string(),
        job,
    }
}

fn alg(spec: AlgebraSpec) -> Job {
    Job::Algebra { spec }
}

/// The full battery, each entry tagged with the smallest tier that runs it.
pub fn manifest() -> Vec<ManifestEntry> {
    use AlgebraSpec::*;
    use Tier::*;
    let cartan = "cartan-type-no-nontrivial-delta-derivations";
    let lie = "lie-super-no-nontrivial-delta-superderivations";
    let jordan = "jordan-super-no-nontrivial-delta-superderivations";
    let ordinary = "semisimple-nc-jordan-no-nontrivial-delta-derivations";
    let int = Scalar::from_int;
    vec![
        entry(Fast, cartan, alg(W { n: 2 })),
        entry(Fast, jordan, alg(K3)),
        entry(Fast, jordan, alg(Dt { t: int(3) })),
        entry(Fast, jordan, alg(JGamma { n: 2 })),
        entry(Fast, jordan, alg(Mplus { m: 1, n: 1 })),
        entry(Full, cartan, alg(W { n: 3 })),
        entry(Full, cartan, alg(S { n: 3 })),
        entry(Full, lie, alg(Sl { m: 2, n: 1 })),
        entry(Full, jordan, alg(Mplus { m: 2, n: 1 })),
        entry(Full, jordan, alg(Qplus { n: 2 })),
        entry(Full, jordan, alg(Osp { n: 1, m: 1 })),
        entry(Full, jordan, alg(Osp { n: 2, m: 1 })),
        entry(Full, jordan, alg(P { n: 2 })),
        entry(Full, jordan, alg(Jvf { n0: 2, n1: 2 })),
        entry(Full, jordan, alg(Dt { t: int(1) })),
        entry(Full, jordan, alg(Dt { t: int(2) })),
        entry(Full, jordan, alg(Dt { t: int(-1) })),
        entry(Full, jordan, alg(K10)),
        entry(Full, jordan, alg(JGamma { n: 3 })),
        entry(Full, ordinary, alg(Hermitian { n: 2 })),
        entry(Full, ordinary, alg(Hermitian { n: 3 })),
        entry(Full, ordinary, alg(HermitianSum { n: 2 })),
        entry(Full, ordinary, alg(M2)),
        entry(
            Full,
            ordinary,
            alg(QuasiM2 {
                lambda: Scalar::ratio(2, 3),
            }),
        ),
        entry(Full, ordinary, alg(Jvf { n0: 3, n1: 0 })),
        entry(
            Fast,
            "grassmann-bracket-projection-identities",
            Job::ProjectionIdentities,
        ),
        entry(
            Full,
            "flexible-half-derivations-commute-with-commutator",
            Job::CommutatorCentroid { spec: M2 },
        ),
        entry(
            Full,
            "flexible-half-derivations-commute-with-commutator",
            Job::CommutatorCentroid {
                spec: Hermitian { n: 2 },
            },
        ),
        entry(
            Full,
            "plus-minus-intersection",
            Job::PlusMinusIntersection { spec: M2 },
        ),
        entry(
            Full,
            "plus-minus-intersection",
            Job::PlusMinusIntersection {
                spec: Hermitian { n: 2 },
            },
        ),
        entry(
            Full,
            "plus-minus-intersection",
            Job::PlusMinusIntersection {
                spec: QuasiM2 {
                    lambda: Scalar::ratio(2, 3),
                },
            },
        ),
        entry(Extended, cartan, alg(Stilde { n: 4 })),
        entry(Extended, cartan, alg(H { n: 5 })),
    ]
}

/// δ values classified for every algebra, in addition to the exceptional points found by scanning.
pub fn probe_deltas() -> Vec<Scalar> {
    vec![
        Scalar::from_int(-1),
        Scalar::zero(),
        Scalar::ratio(1, 3),
        Scalar::ratio(1, 2),
        Scalar::ratio(2, 3),
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::ratio(5, 7),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub tier: Tier,
    pub entries: Vec<ManifestEntry>,
    pub probe_deltas: Vec<Scalar>,
    pub seed: u64,
    /// Worker threads; `None` reads `ALG_WORKERS`, then falls back to the rayon default.
    pub workers: Option<usize>,
    pub k10_table: Option<PathBuf>,
}

impl SuiteConfig {
    /// The standard battery restricted to `tier`.
    pub fn standard(tier: Tier, seed: u64) -> Self {
        SuiteConfig {
            tier,
            entries: manifest().into_iter().filter(|e| e.tier <= tier).collect(),
            probe_deltas: probe_deltas(),
            seed,
            workers: None,
            k10_table: None,
        }
    }

    /// A custom list of jobs run at the given tier.
    pub fn with_jobs(tier: Tier, seed: u64, jobs: Vec<(String, Job)>) -> Self {
        SuiteConfig {
            tier,
            entries: jobs
                .into_iter()
                .map(|(anchor, job)| ManifestEntry { tier, anchor, job })
                .collect(),
            probe_deltas: probe_deltas(),
            seed,
            workers: None,
            k10_table: None,
        }
    }
}

fn worker_count(cfg: &SuiteConfig) -> usize {
    cfg.workers
        .or_else(|| std::env::var("ALG_WORKERS").ok()?.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Run every entry; records come back in manifest order regardless of scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(cfg))
        .build()
        .map_err(|e| SuiteError::Pool(e.to_string()))?;
    let results: Vec<checks::JobOutput> = pool.install(|| {
        cfg.entries
            .par_iter()
            .map(|e| checks::run_job(cfg, e))
            .collect()
    });
    Ok(SuiteReport::assemble(cfg, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers_nest() {
        let fast = SuiteConfig::standard(Tier::Fast, 0).entries;
        let full = SuiteConfig::standard(Tier::Full, 0).entries;
        let ext = SuiteConfig::standard(Tier::Extended, 0).entries;
        assert!(fast.iter().all(|e| full.contains(e)));
        assert!(full.iter().all(|e| ext.contains(e)));
        assert!(fast.len() < full.len() && full.len() < ext.len());
        let names: Vec<String> = ext.iter().map(|e| e.job.name()).collect();
        assert!(names.contains(&"H(5)".to_string()) && names.contains(&"Stilde(4)".to_string()));
    }

    #[test]
    fn empty_suite_passes() {
        let cfg = SuiteConfig::with_jobs(Tier::Fast, 1, vec![]);
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed);
        assert_eq!(r.summary.total, 0);
    }
}
