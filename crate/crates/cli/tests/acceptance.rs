//! Acceptance battery. Prints one line per criterion and exits nonzero if any
//! criterion fails or exceeds its time bound. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use frobcat::algebra::{cokernel, direct_sum, enumerate_submodules, hom_basis, is_epi, is_mono, Module, Morphism};
use frobcat::axioms::{random_morphism, Suite};
use frobcat::homological::ext1_dim;
use frobcat::localization::{dl_verify, ho_hom, stable_endo};
use frobcat::project::{load_fixture, Project};
use frobcat::rigid::{build_context, Mode, RigidContext};
use frobcat_cli::run;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(tag: &str) -> (Project, RigidContext) {
    let p = load_fixture(tag).expect("fixture loads");
    let ctx = p.context().expect("fixture context");
    (p, ctx)
}

fn emit(tag: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = run(["frobcat", "fixtures", "emit", tag, dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    dir
}

/// Ho(X, Y) against Ē-module maps for all 16 ordered pairs, through the CLI.
fn criterion_1() -> Check {
    let dir = emit("pa2");
    let out = run(["frobcat", "--json", "--project", dir.path().to_str().unwrap(), "dl-verify", "--all-pairs"]);
    ensure(out.code == 0, || format!("exit {} {}", out.code, out.stderr))?;
    let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let reports = v["reports"].as_array().ok_or("no reports")?;
    ensure(reports.len() == 16, || format!("{} pairs", reports.len()))?;
    for r in reports {
        let (x, y) = (r["pair"][0].as_str().unwrap(), r["pair"][1].as_str().unwrap());
        let expected = u64::from(x == "S1" && y == "S1");
        ensure(r["dim_ho"] == expected && r["dim_mod"] == expected && r["pass"] == true, || {
            format!("({x}, {y}): {r}")
        })?;
    }
    Ok("16 pairs, dim_ho = dim_mod, only (S1,S1) = 1".into())
}

/// The replacement map is a fibration, a weak equivalence and an epi.
fn criterion_2() -> Check {
    let mut n = 0;
    for tag in ["pa2", "pa3"] {
        let (p, ctx) = fixture(tag);
        for (name, x) in &p.modules {
            let rep = ctx.cofibrant_replacement(x).map_err(|e| format!("{tag}/{name}: {e}"))?;
            ensure(ctx.is_fibration(&rep.phi) && ctx.is_weak_equivalence(&rep.phi) && is_epi(&rep.phi), || {
                format!("{tag}/{name}: replacement fails")
            })?;
            ensure(ctx.is_cofibrant(&rep.a).unwrap_or(false), || format!("{tag}/{name}: A not cofibrant"))?;
            n += 1;
        }
    }
    Ok(format!("{n} objects"))
}

const BATTERY: [&str; 14] = [
    "two_out_of_three",
    "retract_stability",
    "pullback_fibration",
    "factorization1",
    "factorization2",
    "lifting_I_eq_JW",
    "sq_J_in_W",
    "weq_cone_characterization",
    "fib_cone_characterization",
    "copr_eq_pr",
    "mho_rigid",
    "pr_extension_closure",
    "homotopy_G_agreement",
    "wic_deflation",
];

/// The axiom battery at seed 42 with 200 samples per check, through the CLI.
fn criterion_3() -> Check {
    let dir = emit("pa2");
    let out = run([
        "frobcat", "--json", "--project", dir.path().to_str().unwrap(), "axioms", "--seed", "42", "--samples", "200",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| format!("{e}: {}", out.stderr))?;
    let runs = v["runs"].as_array().ok_or("no runs")?;
    let names: BTreeSet<&str> = runs.iter().filter_map(|r| r["check"].as_str()).collect();
    ensure(names == BATTERY.iter().copied().collect(), || format!("checks run: {names:?}"))?;
    let mut total = 0;
    for r in runs {
        ensure(r["samples"] == 200 && r["seed"] == 42, || format!("{r}"))?;
        let k = r["violations"].as_array().map_or(usize::MAX, Vec::len);
        ensure(k == 0, || format!("{}: {k} violations", r["check"]))?;
        total += 200;
    }
    ensure(out.code == 0 && v["pass"] == true, || format!("exit {}", out.code))?;
    Ok(format!("14 checks, {total} samples, 0 violations"))
}

/// Ē = 0, every morphism is a weak equivalence and every Ho space vanishes.
fn criterion_4() -> Check {
    for tag in ["semi", "pa2-deg"] {
        let (p, ctx) = fixture(tag);
        let e = stable_endo(&ctx).map_err(|e| e.to_string())?;
        ensure(e.dim() == 0, || format!("{tag}: dim Ē = {}", e.dim()))?;
        let suite = Suite::new(&ctx, &p.modules);
        let uni = suite.universe();
        let mut maps = 0;
        for i in 0..uni.len() {
            for j in 0..uni.len() {
                let (x, y) = (uni.module(i), uni.module(j));
                let mut fs: Vec<Morphism> = uni.homs(i, j).to_vec();
                fs.push(random_morphism(x, y, (i * 31 + j) as u64));
                fs.push(Morphism::zero(x, y));
                for f in &fs {
                    ensure(ctx.is_weak_equivalence(f), || format!("{tag}: {} -> {} not a weq", uni.name(i), uni.name(j)))?;
                    maps += 1;
                }
            }
        }
        for (a, x) in &p.modules {
            for (b, y) in &p.modules {
                let d = ho_hom(&ctx, x, y).map_err(|e| e.to_string())?.dim();
                ensure(d == 0, || format!("{tag}: dim Ho({a}, {b}) = {d}"))?;
            }
        }
        let _ = maps;
    }
    Ok("semi and pa2-deg: Ē = 0, all weqs, Ho = 0".into())
}

/// Direct predicates against the cone characterizations on 500 random maps.
fn criterion_5() -> Check {
    let (p, ctx) = fixture("pa2");
    let suite = Suite::new(&ctx, &p.modules);
    let uni = suite.universe();
    let n = uni.len();
    let (mut fibs, mut weqs) = (0, 0);
    for s in 0..500u64 {
        let (i, j) = ((s as usize * 7) % n, (s as usize * 13 + s as usize / n) % n);
        let f = random_morphism(uni.module(i), uni.module(j), s);
        let (fib, weq) = (ctx.is_fibration(&f), ctx.is_weak_equivalence(&f));
        ensure(fib == ctx.fibration_via_cone(&f).map_err(|e| e.to_string())?, || {
            format!("seed {s}: fibration disagreement on {} -> {}", uni.name(i), uni.name(j))
        })?;
        ensure(weq == ctx.weq_via_cone(&f).map_err(|e| e.to_string())?, || {
            format!("seed {s}: weq disagreement on {} -> {}", uni.name(i), uni.name(j))
        })?;
        fibs += usize::from(fib);
        weqs += usize::from(weq);
    }
    Ok(format!("500 maps, 0 disagreements ({fibs} fibrations, {weqs} weqs)"))
}

/// Both factorizations recompose and land in the claimed classes.
fn criterion_6() -> Check {
    let (p, ctx) = fixture("pa2");
    let suite = Suite::new(&ctx, &p.modules);
    let uni = suite.universe();
    let n = uni.len();
    for s in 0..100u64 {
        let (i, j) = ((s as usize * 5 + 1) % n, (s as usize * 11 + 3) % n);
        let f = random_morphism(uni.module(i), uni.module(j), 1000 + s);
        let fac = ctx.factorize1(&f).map_err(|e| format!("seed {s}: {e}"))?;
        ensure(fac.right.after(&fac.left) == f, || format!("seed {s}: factorize1 does not recompose"))?;
        ensure(ctx.is_weak_equivalence(&fac.left) && ctx.is_fibration(&fac.right), || {
            format!("seed {s}: factorize1 classes")
        })?;
    }
    let mut count = 0;
    for (a, x) in &p.modules {
        if !ctx.is_cofibrant(x).map_err(|e| e.to_string())? {
            continue;
        }
        for (b, y) in &p.modules {
            for f in hom_basis(x, y) {
                let fac = ctx.factorize2(&f).map_err(|e| format!("{a} -> {b}: {e}"))?;
                ensure(fac.right.after(&fac.left) == f, || format!("{a} -> {b}: factorize2 does not recompose"))?;
                let coker_cof = ctx.is_cofibrant(&cokernel(&fac.left).0).map_err(|e| e.to_string())?;
                ensure(is_mono(&fac.left) && coker_cof && ctx.is_trivial_fibration(&fac.right), || {
                    format!("{a} -> {b}: factorize2 classes")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("100 first factorizations, {count} second factorizations"))
}

/// Rigid `Λ ⊕ N` for small quotients `N` of projectives over F_2.
fn criterion_7() -> Check {
    let (p, _) = fixture("pa3");
    let alg = p.algebra.clone();
    let projectives: Vec<Module> = (1..=3).map(|k| p.module(&format!("P{k}")).unwrap()).collect();
    let simples: Vec<(String, Module)> = (1..=3).map(|k| (format!("S{k}"), p.module(&format!("S{k}")).unwrap())).collect();
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for proj in &projectives {
        for (_, incl) in enumerate_submodules(proj, 6).map_err(|e| e.to_string())? {
            let (n, _) = cokernel(&incl);
            if n.is_zero() || n.total_dim() > 3 || !seen.insert(n.canonical_string()) {
                continue;
            }
            candidates.push(n);
        }
    }
    let (mut rigid, mut pairs) = (0, 0);
    for (k, n) in candidates.iter().enumerate() {
        let mut summands = projectives.clone();
        summands.push(n.clone());
        let total = direct_sum(&alg, &summands).module;
        if ext1_dim(&total, &total) != 0 {
            continue;
        }
        rigid += 1;
        let ctx = build_context(&alg, &summands, Mode::Frobenius).map_err(|e| format!("N#{k}: {e}"))?;
        let e = stable_endo(&ctx).map_err(|e| e.to_string())?;
        let mut objects = simples.clone();
        objects.extend(projectives.iter().enumerate().map(|(i, m)| (format!("P{}", i + 1), m.clone())));
        objects.push(("N".into(), n.clone()));
        for (a, x) in &objects {
            for (b, y) in &objects {
                let r = dl_verify(&ctx, &e, (a, x), (b, y)).map_err(|e| format!("N#{k} ({a}, {b}): {e}"))?;
                ensure(r.pass, || format!("N#{k} ({a}, {b}): ho={} mod={}", r.dim_ho, r.dim_mod))?;
                pairs += 1;
            }
        }
    }
    ensure(rigid > 0, || "no rigid candidates".into())?;
    Ok(format!("{} candidates, {rigid} rigid, {pairs} pairs pass", candidates.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 dl-verify all pairs (pa2)", criterion_1, Duration::from_secs(1)),
        ("2 replacement invariant (pa2, pa3)", criterion_2, Duration::from_secs(1)),
        ("3 axiom battery seed 42 x 200 (pa2)", criterion_3, Duration::from_secs(30)),
        ("4 degenerate contexts (semi, pa2-deg)", criterion_4, Duration::from_secs(1)),
        ("5 characterization cross-checks (pa2)", criterion_5, Duration::from_secs(10)),
        ("6 factorization contracts (pa2)", criterion_6, Duration::from_secs(10)),
        ("7 rigidity search (pa3)", criterion_7, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, f, bound) in criteria {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let (status, detail) = match &res {
            Ok(d) if el <= bound => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; exceeded time bound")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {name}: {status} [{:.3}s / {}s] {detail}", el.as_secs_f64(), bound.as_secs());
    }
    println!("acceptance: {} of 7 criteria pass", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
