use super::*;
use crate::algebra::hom_basis;
use crate::project::load_fixture;
use crate::rigid::build_context;

fn pa2() -> (crate::project::Project, RigidContext) {
    let p = load_fixture("pa2").unwrap();
    let ctx = p.context().unwrap();
    (p, ctx)
}

#[test]
fn random_morphism_is_deterministic() {
    let (p, _) = pa2();
    let (p1, p2) = (p.module("P1").unwrap(), p.module("P2").unwrap());
    let f = random_morphism(&p1, &p2, 7);
    assert_eq!(f, random_morphism(&p1, &p2, 7));
    let basis = hom_basis(&p1, &p2);
    assert_eq!(basis.len(), 1);
    assert!(crate::algebra::express(&basis, &f).is_some());
    let s1 = p.module("S1").unwrap();
    let s2 = p.module("S2").unwrap();
    assert!(random_morphism(&s1, &s2, 3).is_zero());
}

#[test]
fn lifting_test_on_small_cases() {
    let (p, ctx) = pa2();
    let (s1, p1) = (p.module("S1").unwrap(), p.module("P1").unwrap());
    let zero = Module::zero(&p.algebra);
    let id = Morphism::identity(&s1);
    assert!(has_lifting(&Morphism::zero(&zero, &p1), &id));
    let top = hom_basis(&p1, &s1)[0].clone();
    assert!(has_lifting(&Morphism::zero(&zero, &p1), &top));
    assert!(!has_lifting(&Morphism::zero(&zero, &s1), &Morphism::zero(&s1, &s1)));
    assert!(!has_lifting(&Morphism::zero(&zero, &s1), &top));
    assert!(ctx.is_fibration(&id));
}

#[test]
fn pa2_battery_passes_on_a_short_run() {
    let (p, ctx) = pa2();
    let suite = Suite::new(&ctx, &p.modules);
    let summary = suite.run_all(1, 24);
    assert!(summary.pass, "{}", summary.to_text());
    assert_eq!(summary.runs.len(), CHECKS.len());
}

#[test]
fn reruns_are_identical_across_executions() {
    let (p, ctx) = pa2();
    let seq = Suite::new(&ctx, &p.modules).with_execution(Execution::Sequential);
    let par = Suite::new(&ctx, &p.modules).with_execution(Execution::Parallel);
    for name in ["two_out_of_three", "pullback_fibration"] {
        let a = seq.run_check(name, 9, 12).unwrap();
        let b = par.run_check(name, 9, 12).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn every_mutation_is_caught() {
    let (p, ctx) = pa2();
    let cases = [
        (Mutation::WeqAlwaysTrue, "weq_cone_characterization"),
        (Mutation::WeqNegated, "two_out_of_three"),
        (Mutation::FibrationNegated, "fib_cone_characterization"),
        (Mutation::CofibrantNegated, "copr_eq_pr"),
        (Mutation::CofibrantParity, "pr_extension_closure"),
        (Mutation::HomotopyNegated, "homotopy_G_agreement"),
        (Mutation::EpiNegated, "wic_deflation"),
        (Mutation::ExtDimPlusOne, "mho_rigid"),
        (Mutation::WeqNegated, "sq_J_in_W"),
        (Mutation::FibrationNegated, "lifting_I_eq_JW"),
        (Mutation::WeqNegated, "factorization1"),
        (Mutation::WeqNegated, "factorization2"),
        (Mutation::FibrationNegated, "pullback_fibration"),
        (Mutation::WeqNegated, "retract_stability"),
    ];
    for name in check_names() {
        assert!(cases.iter().any(|(_, c)| *c == name), "{name} has no mutation case");
    }
    for (m, name) in cases {
        let run = Suite::new(&ctx, &p.modules).with_mutation(m).run_check(name, 42, 60).unwrap();
        assert!(!run.pass(), "{m:?} not caught by {name}");
    }
}

#[test]
fn registry_errors() {
    let (p, _) = pa2();
    let exact = build_context(&p.algebra, &p.generator_summands().unwrap(), Mode::Exact).unwrap();
    assert!(matches!(run_check(&exact, "nope", 1, 1), Err(Error::UnknownCheck(_))));
    assert!(matches!(run_check(&exact, "factorization2", 1, 1), Err(Error::ModeMismatch { .. })));
    let summary = run_all(&exact, 3, 4);
    assert!(summary.skipped.contains(&"fib_cone_characterization".to_string()));
}
