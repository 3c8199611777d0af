use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{Record, TableRow, Verdict};
use super::{AlgebraSpec, Job, Kind, ManifestEntry, SuiteConfig};
use crate::dersolve::{
    centroid, check_commutator_centroid, check_plus_minus_intersection, check_unit_mechanism,
    classify, scan_exceptional, solve_delta, DerivationQuery, MapParity, MapSpace, Mode,
};
use crate::exactfield::Scalar;
use crate::jordancons::{build_jgamma, JGammaBasis};
use crate::liecons::cartan_and_roots;
use crate::superalg::grassmann::partial;
use crate::superalg::{
    check_identity_multilinear, check_super_variety, peirce_decompose, Identity, IdentityCheck,
    SuperAlgebra, Variety,
};

pub(crate) struct JobOutput {
    pub records: Vec<Record>,
    pub table: Vec<TableRow>,
}

struct Recorder<'a> {
    anchor: &'a str,
    algebra: String,
    out: JobOutput,
}

impl Recorder<'_> {
    fn push(
        &mut self,
        check: &str,
        inputs: String,
        dims: BTreeMap<String, usize>,
        result: Result<(), String>,
        started: Instant,
    ) {
        let (verdict, witness) = match result {
            Ok(()) => (Verdict::Pass, None),
            Err(w) => (Verdict::Fail, Some(w)),
        };
        self.out.records.push(Record {
            id: format!("{}/{check}", self.algebra),
            anchor: self.anchor.to_string(),
            algebra: self.algebra.clone(),
            inputs,
            dims,
            verdict,
            witness,
            wall_ms: started.elapsed().as_millis(),
        });
    }
}

fn dims<const N: usize>(pairs: [(&str, usize); N]) -> BTreeMap<String, usize> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Per-job seed: the suite seed mixed with an FNV-1a hash of the job name.
fn job_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

pub(crate) fn run_job(cfg: &SuiteConfig, e: &ManifestEntry) -> JobOutput {
    let mut rec = Recorder {
        anchor: &e.anchor,
        algebra: e.job.name(),
        out: JobOutput {
            records: Vec::new(),
            table: Vec::new(),
        },
    };
    match &e.job {
        Job::Algebra { spec } => algebra_job(cfg, spec, &mut rec),
        Job::ProjectionIdentities => projection_job(&mut rec),
        Job::CommutatorCentroid { spec } => commutator_job(cfg, spec, &mut rec),
        Job::PlusMinusIntersection { spec } => plus_minus_job(cfg, spec, &mut rec),
    }
    rec.out
}

fn identity_witness(a: &SuperAlgebra, c: &IdentityCheck) -> Result<(), String> {
    match c.witness() {
        None => Ok(()),
        Some(w) => Err(format!(
            "{:?} fails on ({}) in {}; re-check with `alg check`",
            w.identity,
            w.labels.join(", "),
            a.name()
        )),
    }
}

fn axiom_gate(a: &SuperAlgebra, kind: Kind) -> Result<(), String> {
    let err = |e: crate::superalg::AlgebraError| e.to_string();
    match kind {
        Kind::LieSuper => {
            identity_witness(a, &check_super_variety(a, Variety::LieSuper).map_err(err)?)
        }
        Kind::JordanSuper => {
            if !a.is_supercommutative() {
                return Err("not supercommutative".into());
            }
            identity_witness(
                a,
                &check_super_variety(a, Variety::JordanSuper).map_err(err)?,
            )
        }
        Kind::Jordan => {
            identity_witness(
                a,
                &check_identity_multilinear(a, Identity::Commutativity).map_err(err)?,
            )?;
            identity_witness(
                a,
                &check_identity_multilinear(a, Identity::Jordan).map_err(err)?,
            )
        }
        Kind::NcJordan => {
            identity_witness(
                a,
                &check_identity_multilinear(a, Identity::Flexibility).map_err(err)?,
            )?;
            identity_witness(
                a,
                &check_identity_multilinear(a, Identity::NcJordan).map_err(err)?,
            )
        }
    }
}

fn queries(kind: Kind) -> Vec<(Mode, MapParity)> {
    match kind {
        Kind::LieSuper => vec![
            (Mode::Derivation, MapParity::Any),
            (Mode::Superderivation, MapParity::Even),
            (Mode::Superderivation, MapParity::Odd),
        ],
        Kind::JordanSuper => vec![
            (Mode::Superderivation, MapParity::Even),
            (Mode::Superderivation, MapParity::Odd),
        ],
        Kind::Jordan | Kind::NcJordan => vec![(Mode::Derivation, MapParity::Any)],
    }
}

fn cli_hint(name: &str, q: &DerivationQuery) -> String {
    let mode = match q.mode {
        Mode::Derivation => "plain",
        Mode::Superderivation => "super",
    };
    format!(
        "alg derive <{name}.json> --delta {} --parity {} --mode {mode}",
        q.delta, q.parity
    )
}

type Solved = BTreeMap<(Mode, MapParity, String), MapSpace>;

fn algebra_job(cfg: &SuiteConfig, spec: &AlgebraSpec, rec: &mut Recorder) {
    let t = Instant::now();
    let a = match spec.build(cfg.k10_table.as_deref()) {
        Ok(a) => a,
        Err(e) => {
            rec.push(
                "construction",
                spec.to_string(),
                BTreeMap::new(),
                Err(e.to_string()),
                t,
            );
            return;
        }
    };
    let kind = spec.kind();
    let d = dims([
        ("dim", a.dim()),
        ("even", a.even_dim()),
        ("odd", a.odd_dim()),
    ]);
    let gate = axiom_gate(&a, kind);
    let gate_ok = gate.is_ok();
    rec.push("axioms", format!("{kind:?}"), d, gate, t);
    if !gate_ok {
        return;
    }
    if matches!(kind, Kind::JordanSuper | Kind::Jordan) && *spec != AlgebraSpec::K3 {
        let t = Instant::now();
        let r = if a.unit().is_some() {
            Ok(())
        } else {
            Err("no verified unit".to_string())
        };
        rec.push("unit", String::new(), BTreeMap::new(), r, t);
    }
    if let Some((family, n)) = spec.cartan() {
        let t = Instant::now();
        match cartan_and_roots(&a, family, n) {
            Ok(rd) => {
                let outside = rd.weights_outside_display();
                let d = dims([
                    ("total", rd.total_dim()),
                    ("zero_weight", rd.zero_weight_dim()),
                    ("weights", rd.weights.len()),
                    ("outside_display", outside.len()),
                ]);
                let r = if outside.is_empty() {
                    Ok(())
                } else {
                    Err(format!("weights outside the root display: {outside:?}"))
                };
                rec.push("roots", format!("{family:?}({n})"), d, r, t);
            }
            Err(e) => rec.push(
                "roots",
                format!("{family:?}({n})"),
                BTreeMap::new(),
                Err(e.to_string()),
                t,
            ),
        }
    }
    let mut solved = Solved::new();
    let mut rng = ChaCha8Rng::seed_from_u64(job_seed(cfg.seed, a.name()));
    for (mode, parity) in queries(kind) {
        let tag = format!("{mode}/{parity}");
        let t = Instant::now();
        let mut deltas = cfg.probe_deltas.clone();
        match scan_exceptional(&a, mode, parity, &mut rng) {
            Ok(scan) => {
                let mut d = dims([("generic", scan.generic_dim)]);
                for e in &scan.exceptional {
                    d.insert(format!("delta={}", e.delta), e.dim);
                }
                let allowed = [Scalar::ratio(1, 2), Scalar::one()];
                let stray: Vec<String> = scan
                    .exceptional
                    .iter()
                    .filter(|e| !allowed.contains(&e.delta))
                    .map(|e| e.delta.to_string())
                    .collect();
                let r = if !stray.is_empty() {
                    Err(format!(
                        "exceptional delta outside {{1/2, 1}}: {}",
                        stray.join(", ")
                    ))
                } else if !scan.unresolved.is_empty() {
                    Err(format!(
                        "unresolved factors: {}",
                        scan.unresolved.join("; ")
                    ))
                } else if scan.degenerate {
                    Err("degenerate constraint system".into())
                } else {
                    Ok(())
                };
                rec.push(&format!("scan/{tag}"), String::new(), d, r, t);
                deltas.extend(scan.exceptional.into_iter().map(|e| e.delta));
            }
            Err(e) => rec.push(
                &format!("scan/{tag}"),
                String::new(),
                BTreeMap::new(),
                Err(e.to_string()),
                t,
            ),
        }
        deltas.sort_by(Scalar::lex_cmp);
        deltas.dedup();
        let t = Instant::now();
        let mut d = BTreeMap::new();
        let mut failure = None;
        for delta in deltas {
            let q = DerivationQuery::new(delta.clone(), parity, mode);
            let verdict = solve_delta(&a, &q).and_then(|s| {
                let v = classify(&a, &s, &q)?;
                solved.insert((mode, parity, delta.to_string()), s);
                Ok(v)
            });
            match verdict {
                Ok(v) => {
                    d.insert(format!("delta={delta}"), v.dim);
                    if v.is_nontrivial() && failure.is_none() {
                        failure = Some(format!(
                            "nontrivial space of dim {} at delta={delta}: {}",
                            v.dim,
                            cli_hint(a.name(), &q)
                        ));
                    }
                    rec.out.table.push(TableRow {
                        algebra: a.name().to_string(),
                        mode,
                        parity,
                        delta,
                        dim: v.dim,
                        verdict: v.verdict,
                    });
                }
                Err(e) => failure = failure.or(Some(e.to_string())),
            }
        }
        rec.push(
            &format!("classify/{tag}"),
            String::new(),
            d,
            failure.map_or(Ok(()), Err),
            t,
        );
    }
    let get = |mode, parity, delta: Scalar| solved.get(&(mode, parity, delta.to_string()));
    let half = Scalar::ratio(1, 2);
    if kind == Kind::LieSuper {
        inner_derivations(&a, &solved, rec);
        if spec.cartan().is_some() {
            let t = Instant::now();
            let mut d = BTreeMap::new();
            let mut failure = None;
            for delta in &cfg.probe_deltas {
                if delta.is_one() {
                    continue;
                }
                let expected = usize::from(*delta == half);
                if let Some(s) = get(Mode::Derivation, MapParity::Any, delta.clone()) {
                    d.insert(format!("delta={delta}"), s.dim());
                    if s.dim() != expected && failure.is_none() {
                        failure = Some(format!(
                            "delta={delta}: dim {} expected {expected}",
                            s.dim()
                        ));
                    }
                }
            }
            rec.push(
                "delta-dims",
                "derivation/any".into(),
                d,
                failure.map_or(Ok(()), Err),
                t,
            );
        }
    }
    if kind == Kind::JordanSuper {
        let t = Instant::now();
        let dim = get(Mode::Superderivation, MapParity::Odd, half.clone()).map_or(0, MapSpace::dim);
        let r = if dim == 0 {
            Ok(())
        } else {
            Err(format!("odd half-superderivations of dim {dim}"))
        };
        rec.push(
            "odd-half-vanishes",
            String::new(),
            dims([("dim", dim)]),
            r,
            t,
        );
    }
    if matches!(kind, Kind::JordanSuper | Kind::Jordan) && a.unit().is_some() {
        let t = Instant::now();
        let mut failure = None;
        let mut d = BTreeMap::new();
        for (mode, parity) in queries(kind) {
            if let Some(s) = get(mode, parity, half.clone()) {
                d.insert(parity.to_string(), s.dim());
                match check_unit_mechanism(&a, s) {
                    Ok(None) => {}
                    Ok(Some((m, i))) => {
                        failure = failure.or(Some(format!(
                            "{parity} map {m} differs from phi(1)x at {}",
                            a.label(i)
                        )))
                    }
                    Err(e) => failure = failure.or(Some(e.to_string())),
                }
            }
        }
        rec.push(
            "unit-mechanism",
            "delta=1/2".into(),
            d,
            failure.map_or(Ok(()), Err),
            t,
        );
    }
    if matches!(kind, Kind::JordanSuper | Kind::Jordan) && !a.meta.idempotents.is_empty() {
        let t = Instant::now();
        let mut failure = None;
        let mut d = BTreeMap::new();
        for (n, e) in a.meta.idempotents.iter().enumerate() {
            match peirce_decompose(&a, e) {
                Ok(p) => {
                    d.insert(format!("e{n}/p0"), p.p0.dim());
                    d.insert(format!("e{n}/p_half"), p.p_half.dim());
                    d.insert(format!("e{n}/p1"), p.p1.dim());
                    if p.p0.dim() + p.p_half.dim() + p.p1.dim() != a.dim() {
                        failure = failure.or(Some(format!(
                            "idempotent {n}: eigenspaces do not fill the algebra"
                        )));
                    }
                }
                Err(err) => failure = failure.or(Some(format!("idempotent {n}: {err}"))),
            }
        }
        rec.push("peirce", String::new(), d, failure.map_or(Ok(()), Err), t);
    }
    if matches!(kind, Kind::Jordan | Kind::NcJordan) {
        let t = Instant::now();
        let gamma = centroid(&a);
        let r = match get(Mode::Derivation, MapParity::Any, half) {
            Some(s) if *s.space() == *gamma.space() => Ok(()),
            Some(s) => Err(format!(
                "half-derivations dim {} vs centroid dim {}",
                s.dim(),
                gamma.dim()
            )),
            None => Err("half-derivations not computed".into()),
        };
        rec.push(
            "half-equals-centroid",
            String::new(),
            dims([("centroid", gamma.dim())]),
            r,
            t,
        );
    }
}

/// `ad(A₀)` lies in the derivations; `ad` of each parity lies in the superderivations of that parity.
fn inner_derivations(a: &SuperAlgebra, solved: &Solved, rec: &mut Recorder) {
    let t = Instant::now();
    let one = Scalar::one().to_string();
    let mut failure = None;
    let mut d = BTreeMap::new();
    for (mode, parity) in queries(Kind::LieSuper) {
        let Some(space) = solved.get(&(mode, parity, one.clone())) else {
            continue;
        };
        d.insert(format!("{mode}/{parity}"), space.dim());
        for i in 0..a.dim() {
            let p = a.parity_of(i);
            let wanted = match parity {
                MapParity::Any => p == 0,
                MapParity::Even => p == 0,
                MapParity::Odd => p == 1,
            };
            if !wanted {
                continue;
            }
            let ad = a.ad_operator(&a.basis_element(i)).expect("dims");
            if !space.contains(&ad) && failure.is_none() {
                failure = Some(format!(
                    "ad({}) outside {mode}/{parity} derivations",
                    a.label(i)
                ));
            }
        }
    }
    rec.push(
        "inner-derivations",
        "delta=1".into(),
        d,
        failure.map_or(Ok(()), Err),
        t,
    );
}

fn projection_job(rec: &mut Recorder) {
    let t = Instant::now();
    let j = build_jgamma(3).expect("J(Gamma3)");
    let b = JGammaBasis::new(3);
    let twice = |i: usize, x: usize| {
        let ei = j.basis_element(i);
        let once = j.multiply(&ei, &j.basis_element(x)).expect("dims");
        j.multiply(&ei, &once).expect("dims")
    };
    let (mut plain_cases, mut barred_cases) = (0, 0);
    let mut failure = None;
    for i in 1..=3 {
        let bar_i = b.bar(1 << (i - 1));
        for x in 0u32..8 {
            let has_i = partial(i, x).is_some();
            let expect_plain = if has_i {
                j.zero_element()
            } else {
                j.basis_element(b.plain(x))
            };
            if twice(bar_i, b.plain(x)) != expect_plain {
                failure = failure.or(Some(format!("plain: i={i}, x={}", j.label(b.plain(x)))));
            }
            plain_cases += 1;
            let expect_bar = if has_i {
                j.basis_element(b.bar(x))
            } else {
                j.zero_element()
            };
            if twice(bar_i, b.bar(x)) != expect_bar {
                failure = failure.or(Some(format!("barred: i={i}, x={}", j.label(b.bar(x)))));
            }
            barred_cases += 1;
        }
    }
    rec.push(
        "projection",
        "i in 1..3, x over monomials".into(),
        dims([("plain_cases", plain_cases), ("barred_cases", barred_cases)]),
        failure.map_or(Ok(()), Err),
        t,
    );
}

fn commutator_job(cfg: &SuiteConfig, spec: &AlgebraSpec, rec: &mut Recorder) {
    let t = Instant::now();
    let r = spec
        .build(cfg.k10_table.as_deref())
        .and_then(|a| Ok(check_commutator_centroid(&a)?));
    match r {
        Ok(rep) => {
            let res = match rep.witness {
                None => Ok(()),
                Some((m, i, j)) => Err(format!("map {m} fails on basis pair ({i}, {j})")),
            };
            rec.push(
                "commutator-centroid",
                String::new(),
                dims([("half_dim", rep.half_dim)]),
                res,
                t,
            );
        }
        Err(e) => rec.push(
            "commutator-centroid",
            String::new(),
            BTreeMap::new(),
            Err(e.to_string()),
            t,
        ),
    }
}

fn plus_minus_job(cfg: &SuiteConfig, spec: &AlgebraSpec, rec: &mut Recorder) {
    let t = Instant::now();
    let r = spec
        .build(cfg.k10_table.as_deref())
        .and_then(|a| Ok(check_plus_minus_intersection(&a)?));
    match r {
        Ok(rep) => {
            let mut d = dims([
                ("centroid", rep.centroid_dim),
                ("centroid_intersection", rep.centroid_intersection_dim),
            ]);
            let mut failure = None;
            for row in &rep.deltas {
                d.insert(format!("delta={}", row.delta), row.dim_a);
                d.insert(
                    format!("delta={}/intersection", row.delta),
                    row.dim_intersection,
                );
                if !row.equal {
                    failure = failure.or(Some(format!("delta={}: spaces differ", row.delta)));
                }
            }
            if !rep.centroid_equal {
                failure = failure.or(Some("centroids differ".into()));
            }
            rec.push(
                "plus-minus",
                "delta in {1/2, 2, -1}".into(),
                d,
                failure.map_or(Ok(()), Err),
                t,
            );
        }
        Err(e) => rec.push(
            "plus-minus",
            String::new(),
            BTreeMap::new(),
            Err(e.to_string()),
            t,
        ),
    }
}
