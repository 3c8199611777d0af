use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use superderiv::dersolve::{
    centroid, classify, scan_exceptional, solve_delta, supercentroid, DerError, DerivationQuery,
    MapParity, MapSpace, Mode,
};
use superderiv::exactfield::Scalar;
use superderiv::liecons::cartan_and_roots;
use superderiv::linalg::Matrix;
use superderiv::suite::{emit_report, run_suite, Format, SuiteConfig};
use superderiv::superalg::{
    check_identity_multilinear, check_super_variety, load_algebra, peirce_decompose, to_json,
    AlgebraError, Identity, IdentityCheck, SuperAlgebra, Variety,
};
use thiserror::Error;

use crate::family::{cartan_family, cartan_from_name, spec_from_args};
use crate::{
    Axioms, BuildArgs, CentroidArgs, CheckArgs, Command, FormatArg, ParityArg, PeirceArgs,
    QueryArgs, ReportArgs, RootsArgs, ScanArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DerError> for CliError {
    fn from(e: DerError) -> Self {
        match e {
            DerError::AnyParityInSuperMode | DerError::ParityMismatch(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// What a verb printed and whether its check held.
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

fn emit(v: &impl Serialize, passed: bool) -> Outcome {
    Outcome {
        stdout: serde_json::to_string_pretty(v).expect("serializable") + "\n",
        passed,
    }
}

fn write_or_print(text: String, output: Option<&Path>, passed: bool) -> Result<Outcome, CliError> {
    match output {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                stdout: String::new(),
                passed,
            })
        }
        None => Ok(Outcome {
            stdout: text,
            passed,
        }),
    }
}

fn load(path: &PathBuf) -> Result<SuperAlgebra, CliError> {
    load_algebra(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Build(a) => build(&a),
        Command::Check(a) => check(&a),
        Command::Derive(a) => derive(&a, false),
        Command::Classify(a) => derive(&a, true),
        Command::Scan(a) => scan(&a),
        Command::Centroid(a) => centroid_cmd(&a),
        Command::Peirce(a) => peirce(&a),
        Command::Roots(a) => roots(&a),
        Command::Report(a) => report(&a),
    }
}

fn build(a: &BuildArgs) -> Result<Outcome, CliError> {
    let spec = spec_from_args(a)?;
    let alg = spec
        .build(a.k10_table.as_deref())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    write_or_print(to_json(&alg), a.output.as_deref(), true)
}

fn check(a: &CheckArgs) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let result = match a.axioms {
        Axioms::LieSuper => check_super_variety(&alg, Variety::LieSuper)?,
        Axioms::JordanSuper => check_super_variety(&alg, Variety::JordanSuper)?,
        Axioms::FlexibleSuper => check_super_variety(&alg, Variety::FlexibleSuper)?,
        Axioms::NcJordanSuper => check_super_variety(&alg, Variety::NcJordanSuper)?,
        Axioms::Lie => ordinary(&alg, &[Identity::Anticommutativity, Identity::Jacobi])?,
        Axioms::Jordan => ordinary(&alg, &[Identity::Commutativity, Identity::Jordan])?,
        Axioms::Flexible => ordinary(&alg, &[Identity::Flexibility])?,
        Axioms::NcJordan => ordinary(&alg, &[Identity::NcJordan])?,
    };
    let axioms = a
        .axioms
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    Ok(emit(
        &json!({
            "algebra": alg.name(),
            "axioms": axioms,
            "passed": result.passed(),
            "witness": result.witness(),
        }),
        result.passed(),
    ))
}

fn ordinary(a: &SuperAlgebra, ids: &[Identity]) -> Result<IdentityCheck, CliError> {
    for &id in ids {
        let r = check_identity_multilinear(a, id)?;
        if !r.passed() {
            return Ok(r);
        }
    }
    Ok(IdentityCheck::Pass)
}

fn default_parity(p: Option<ParityArg>, mode: Mode) -> MapParity {
    match (p, mode) {
        (Some(p), _) => p.into(),
        (None, Mode::Derivation) => MapParity::Any,
        (None, Mode::Superderivation) => MapParity::Even,
    }
}

/// Map matrices as rows of canonical scalar strings; column `j` is the image of `e_j`.
fn basis_json(space: &MapSpace) -> Value {
    let maps: Vec<Vec<Vec<String>>> = space
        .maps()
        .iter()
        .map(|m: &Matrix| {
            m.row_iter()
                .map(|r| r.iter().map(Scalar::to_string).collect())
                .collect()
        })
        .collect();
    json!(maps)
}

fn derive(a: &QueryArgs, strict: bool) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let mode: Mode = a.mode.into();
    let q = DerivationQuery::new(a.delta.clone(), default_parity(a.parity, mode), mode);
    let space = solve_delta(&alg, &q)?;
    let verdict = classify(&alg, &space, &q)?;
    let mut out = json!({
        "algebra": alg.name(),
        "query": { "delta": q.delta, "parity": q.parity, "mode": q.mode },
        "dim": space.dim(),
        "trivial_dim": verdict.trivial_dim,
        "verdict": verdict.verdict,
    });
    if strict {
        out["directions"] = json!(verdict.directions);
    }
    if a.emit_basis {
        out["basis"] = basis_json(&space);
    }
    Ok(emit(&out, !(strict && verdict.is_nontrivial())))
}

fn scan(a: &ScanArgs) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let mode: Mode = a.mode.into();
    let parity = default_parity(a.parity, mode);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let r = scan_exceptional(&alg, mode, parity, &mut rng)?;
    Ok(emit(&json!({ "algebra": alg.name(), "scan": r }), true))
}

fn centroid_cmd(a: &CentroidArgs) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let (kind, parity, space) = if a.superr {
        let parity = a.parity.map_or(MapParity::Even, MapParity::from);
        ("supercentroid", parity, supercentroid(&alg, parity)?)
    } else {
        if a.parity.is_some() {
            return Err(CliError::Usage("--parity needs --super".into()));
        }
        ("centroid", MapParity::Any, centroid(&alg))
    };
    let mut out = json!({
        "algebra": alg.name(),
        "query": { "kind": kind, "parity": parity },
        "dim": space.dim(),
    });
    if a.emit_basis {
        out["basis"] = basis_json(&space);
    }
    Ok(emit(&out, true))
}

fn parse_vector(text: &str, dim: usize) -> Result<Vec<Scalar>, CliError> {
    let v: Vec<Scalar> = text
        .split(',')
        .map(|s| {
            s.parse()
                .map_err(|e| CliError::Usage(format!("--idempotent: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != dim {
        return Err(CliError::Usage(format!(
            "--idempotent has {} coordinates, algebra has dim {dim}",
            v.len()
        )));
    }
    Ok(v)
}

fn peirce(a: &PeirceArgs) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let idempotents = match &a.idempotent {
        Some(text) => vec![parse_vector(text, alg.dim())?],
        None => alg.meta.idempotents.clone(),
    };
    if idempotents.is_empty() {
        return Err(CliError::Usage(format!(
            "{} registers no idempotents; pass --idempotent",
            alg.name()
        )));
    }
    let mut rows = Vec::new();
    let mut passed = true;
    for e in &idempotents {
        match peirce_decompose(&alg, e) {
            Ok(p) => rows.push(json!({
                "idempotent": e,
                "p0": p.p0.dim(),
                "p_half": p.p_half.dim(),
                "p1": p.p1.dim(),
            })),
            Err(err @ (AlgebraError::NotIdempotent | AlgebraError::NotPeirce)) => {
                passed = false;
                rows.push(json!({ "idempotent": e, "error": err.to_string() }));
            }
            Err(err) => return Err(err.into()),
        }
    }
    Ok(emit(
        &json!({ "algebra": alg.name(), "peirce": rows }),
        passed,
    ))
}

fn roots(a: &RootsArgs) -> Result<Outcome, CliError> {
    let alg = load(&a.algebra)?;
    let (family, n) = match (&a.family, a.n) {
        (Some(f), Some(n)) => (cartan_family(f)?, n),
        (None, None) => cartan_from_name(alg.name()).ok_or_else(|| {
            CliError::Usage(format!(
                "cannot read a Cartan family from {:?}; pass --family and --n",
                alg.name()
            ))
        })?,
        _ => return Err(CliError::Usage("--family and --n go together".into())),
    };
    let r = cartan_and_roots(&alg, family, n).map_err(|e| CliError::Failed(e.to_string()))?;
    let weights: Vec<Value> = r
        .epsilon_weights()
        .into_iter()
        .map(|(w, dim)| json!({ "weight": w, "dim": dim }))
        .collect();
    let outside = r.weights_outside_display();
    let passed = outside.is_empty() && r.total_dim() == alg.dim();
    Ok(emit(
        &json!({
            "algebra": alg.name(),
            "weights": weights,
            "zero_weight_dim": r.zero_weight_dim(),
            "total_dim": r.total_dim(),
            "outside_display": outside,
        }),
        passed,
    ))
}

fn report(a: &ReportArgs) -> Result<Outcome, CliError> {
    let mut cfg = SuiteConfig::standard(a.tier, a.seed);
    cfg.k10_table = a.k10_table.clone();
    let r = run_suite(&cfg).map_err(|e| CliError::Failed(e.to_string()))?;
    let format = match a.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    if let Some(f) = &r.first_failure {
        eprintln!("alg: suite FAILED: {f}");
    }
    write_or_print(emit_report(&r, format), a.output.as_deref(), r.passed)
}
