use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superderiv::dersolve::Direction;
use superderiv::liecons::build_w;
use superderiv::suite::{
    emit_report, run_suite, AlgebraSpec, Format, Job, SuiteConfig, Tier, Verdict,
};

#[test]
fn fast_tier_passes_with_only_trivial_verdicts() {
    let r = run_suite(&SuiteConfig::standard(Tier::Fast, 7)).unwrap();
    assert!(r.passed, "{:?}", r.first_failure);
    assert!(r
        .table
        .iter()
        .all(|row| row.verdict != Direction::Nontrivial));
    let algebras: Vec<&str> = r.records.iter().map(|rec| rec.algebra.as_str()).collect();
    for name in ["W(2)", "K3", "D(3)", "J(Gamma2)", "M(1,1)(+)"] {
        assert!(algebras.contains(&name), "{name} missing");
    }
}

#[test]
fn flipped_structure_constants_fail_the_axiom_gate() {
    let w = build_w(2).unwrap();
    let mut nonzero = Vec::new();
    for i in 0..w.dim() {
        for j in 0..w.dim() {
            for &(k, _) in w.product(i, j).iter() {
                nonzero.push((i, j, k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let picks: Vec<_> = nonzero.choose_multiple(&mut rng, 10).copied().collect();
    assert_eq!(picks.len(), 10);
    let jobs = picks
        .iter()
        .map(|&(i, j, k)| {
            let spec = AlgebraSpec::Mutated {
                base: Box::new(AlgebraSpec::W { n: 2 }),
                i,
                j,
                k,
            };
            ("mutation".to_string(), Job::Algebra { spec })
        })
        .collect();
    let r = run_suite(&SuiteConfig::with_jobs(Tier::Fast, 7, jobs)).unwrap();
    assert!(!r.passed);
    let gates: Vec<_> = r
        .records
        .iter()
        .filter(|rec| rec.id.ends_with("/axioms"))
        .collect();
    assert_eq!(gates.len(), 10);
    for g in gates {
        assert_eq!(g.verdict, Verdict::Fail, "{} passed", g.id);
        assert!(g.witness.as_deref().is_some_and(|w| !w.is_empty()));
    }
    assert!(r.first_failure.is_some());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cfg = SuiteConfig::standard(Tier::Fast, 7);
    for format in [Format::Json, Format::Markdown] {
        let a = emit_report(&run_suite(&cfg).unwrap(), format);
        let b = emit_report(&run_suite(&cfg).unwrap(), format);
        assert_eq!(a, b);
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let mut one = SuiteConfig::standard(Tier::Fast, 3);
    one.workers = Some(1);
    let mut four = one.clone();
    four.workers = Some(4);
    assert_eq!(
        emit_report(&run_suite(&one).unwrap(), Format::Json),
        emit_report(&run_suite(&four).unwrap(), Format::Json)
    );
}
