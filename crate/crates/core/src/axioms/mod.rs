//! Seeded property harness for the model-structure claims.
//!
//! Each check draws `samples` independent cases from a sampling universe (the
//! given objects and their two-fold sums) and records every case where a
//! claimed implication or equivalence fails. Case `k` of check `c` uses a
//! ChaCha stream seeded from `sha256(c, seed, k)`, so reports do not depend on
//! the execution order. Passing runs are sampled evidence, not proofs.

mod checks;
mod universe;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{hom_basis, is_epi, Module, Morphism};
use crate::error::{Error, Result};
use crate::homological::{ext1_dim, indecomposable_injectives, indecomposable_projectives};
use crate::io::{ModuleFile, MorphismFile};
use crate::linalg::{Field, Scalar};
use crate::par::{map_indexed, Execution};
use crate::rigid::{Mode, RigidContext};

pub use checks::has_lifting;
pub use universe::Universe;

/// Deliberate corruptions of the predicates, used to show every check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    WeqAlwaysTrue,
    WeqNegated,
    FibrationNegated,
    CofibrantNegated,
    /// Flips cofibrancy on odd total dimension.
    CofibrantParity,
    HomotopyNegated,
    EpiNegated,
    ExtDimPlusOne,
}

/// A morphism with inline source and target modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub role: String,
    pub morphism: MorphismFile,
    pub modules: BTreeMap<String, ModuleFile>,
}

impl Replay {
    pub fn new(role: &str, f: &Morphism) -> Self {
        let (s, t) = (format!("{role}.source"), format!("{role}.target"));
        let modules = [(s.clone(), ModuleFile::from_module(f.source())), (t.clone(), ModuleFile::from_module(f.target()))]
            .into_iter()
            .collect();
        Replay { role: role.to_string(), morphism: MorphismFile::from_morphism(f, &s, &t), modules }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sample: usize,
    pub inputs: Vec<Replay>,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRun {
    pub check: String,
    pub seed: u64,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl CheckRun {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<26} seed={} samples={} violations={} {}",
            self.check,
            self.seed,
            self.samples,
            self.violations.len(),
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub samples: usize,
    pub runs: Vec<CheckRun>,
    /// Registered checks not applicable in the context's mode.
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl Summary {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.runs {
            out.push_str(&r.summary_line());
            out.push('\n');
        }
        for s in &self.skipped {
            out.push_str(&format!("{s:<26} skipped (frobenius only)\n"));
        }
        let failed = self.runs.iter().filter(|r| !r.pass()).count();
        out.push_str(&format!(
            "{} checks, {} failed: {} (sampled evidence, not a proof)\n",
            self.runs.len(),
            failed,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// One failed case before it is tagged with its sample index.
pub(crate) struct Failure {
    pub inputs: Vec<Replay>,
    pub expected: String,
    pub observed: String,
}

impl Failure {
    pub fn new(inputs: Vec<Replay>, expected: impl Into<String>, observed: impl Into<String>) -> Self {
        Failure { inputs, expected: expected.into(), observed: observed.into() }
    }
}

pub(crate) type CheckFn = fn(&Harness, &mut ChaCha8Rng, usize) -> Result<Option<Failure>>;

pub struct CheckInfo {
    pub name: &'static str,
    pub frobenius_only: bool,
    run: CheckFn,
}

const fn check(name: &'static str, frobenius_only: bool, run: CheckFn) -> CheckInfo {
    CheckInfo { name, frobenius_only, run }
}

pub const CHECKS: [CheckInfo; 14] = [
    check("two_out_of_three", false, checks::two_out_of_three),
    check("retract_stability", false, checks::retract_stability),
    check("pullback_fibration", false, checks::pullback_fibration),
    check("factorization1", false, checks::factorization1),
    check("factorization2", true, checks::factorization2),
    check("lifting_I_eq_JW", true, checks::lifting_i_eq_jw),
    check("sq_J_in_W", true, checks::sq_j_in_w),
    check("weq_cone_characterization", true, checks::weq_cone),
    check("fib_cone_characterization", true, checks::fib_cone),
    check("copr_eq_pr", true, checks::copr_eq_pr),
    check("mho_rigid", true, checks::mho_rigid),
    check("pr_extension_closure", true, checks::pr_extension_closure),
    check("homotopy_G_agreement", false, checks::homotopy_g_agreement),
    check("wic_deflation", false, checks::wic_deflation),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Seed of the stream for case `sample` of check `name`.
pub fn stream_seed(name: &str, seed: u64, sample: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(name.as_bytes());
    h.update(seed.to_le_bytes());
    h.update((sample as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

pub(crate) fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field.order() {
        Some(q) => field.from_i64(rng.gen_range(0..q) as i64),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub(crate) fn random_combination(x: &Module, y: &Module, basis: &[Morphism], rng: &mut ChaCha8Rng) -> Morphism {
    let coeffs: Vec<Scalar> = basis.iter().map(|_| random_scalar(x.field(), rng)).collect();
    Morphism::combination(x, y, basis, &coeffs)
}

/// A random combination of `hom_basis(x, y)`, deterministic in `seed`.
pub fn random_morphism(x: &Module, y: &Module, seed: u64) -> Morphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_combination(x, y, &hom_basis(x, y), &mut rng)
}

/// The predicates as seen by the checks, with an optional corruption.
pub(crate) struct Harness<'a> {
    pub ctx: &'a RigidContext,
    pub uni: &'a Universe,
    mutation: Option<Mutation>,
}

impl Harness<'_> {
    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn weq(&self, f: &Morphism) -> bool {
        if self.mutated(Mutation::WeqAlwaysTrue) {
            return true;
        }
        self.ctx.is_weak_equivalence(f) != self.mutated(Mutation::WeqNegated)
    }

    pub fn fib(&self, f: &Morphism) -> bool {
        self.ctx.is_fibration(f) != self.mutated(Mutation::FibrationNegated)
    }

    pub fn trivfib(&self, f: &Morphism) -> bool {
        self.fib(f) && self.weq(f)
    }

    pub fn cofibrant(&self, x: &Module) -> Result<bool> {
        let c = self.ctx.is_cofibrant(x)?;
        let flip = self.mutated(Mutation::CofibrantNegated)
            || (self.mutated(Mutation::CofibrantParity) && x.total_dim() % 2 == 1);
        Ok(c != flip)
    }

    pub fn homotopic(&self, f: &Morphism, g: &Morphism) -> Result<bool> {
        Ok(self.ctx.are_homotopic(f, g)? != self.mutated(Mutation::HomotopyNegated))
    }

    pub fn epi(&self, f: &Morphism) -> bool {
        is_epi(f) != self.mutated(Mutation::EpiNegated)
    }

    pub fn ext1(&self, x: &Module, y: &Module) -> usize {
        ext1_dim(x, y) + usize::from(self.mutated(Mutation::ExtDimPlusOne))
    }
}

/// A configured run of the registered checks over one context.
pub struct Suite<'a> {
    ctx: &'a RigidContext,
    uni: Universe,
    mutation: Option<Mutation>,
    execution: Execution,
}

impl<'a> Suite<'a> {
    /// Samples over `objects` and their two-fold sums.
    pub fn new(ctx: &'a RigidContext, objects: &[(String, Module)]) -> Self {
        Suite { ctx, uni: Universe::new(ctx.algebra(), objects), mutation: None, execution: Execution::default() }
    }

    /// Samples over the simples, indecomposable projectives and injectives and
    /// the generator summands.
    pub fn from_context(ctx: &'a RigidContext) -> Self {
        let alg = ctx.algebra();
        let mut objects: Vec<(String, Module)> = Vec::new();
        let mut push = |name: String, m: Module| {
            if !m.is_zero() && !objects.iter().any(|(_, o)| o == &m) {
                objects.push((name, m));
            }
        };
        for v in 0..alg.num_vertices() {
            push(format!("S{}", v + 1), Module::simple(alg, v));
        }
        for (v, p) in indecomposable_projectives(alg).into_iter().enumerate() {
            push(format!("P{}", v + 1), p);
        }
        for (v, i) in indecomposable_injectives(alg).into_iter().enumerate() {
            push(format!("I{}", v + 1), i);
        }
        for (k, n) in ctx.summands().iter().enumerate() {
            push(format!("M{}", k + 1), n.clone());
        }
        Suite::new(ctx, &objects)
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = Some(mutation);
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn universe(&self) -> &Universe {
        &self.uni
    }

    pub fn run_check(&self, name: &str, seed: u64, samples: usize) -> Result<CheckRun> {
        let info = CHECKS.iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
        if info.frobenius_only && self.ctx.mode() != Mode::Frobenius {
            return Err(Error::ModeMismatch { expected: "frobenius" });
        }
        let h = Harness { ctx: self.ctx, uni: &self.uni, mutation: self.mutation };
        let outcomes = map_indexed(self.execution, samples, |k| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(name, seed, k));
            match (info.run)(&h, &mut rng, k) {
                Ok(None) => None,
                Ok(Some(f)) => Some(Violation { sample: k, inputs: f.inputs, expected: f.expected, observed: f.observed }),
                Err(e) => Some(Violation {
                    sample: k,
                    inputs: vec![],
                    expected: "no error".into(),
                    observed: format!("error: {e}"),
                }),
            }
        });
        Ok(CheckRun {
            check: name.to_string(),
            seed,
            samples,
            violations: outcomes.into_iter().flatten().collect(),
        })
    }

    pub fn run_all(&self, seed: u64, samples: usize) -> Summary {
        let mut runs = Vec::new();
        let mut skipped = Vec::new();
        for info in &CHECKS {
            if info.frobenius_only && self.ctx.mode() != Mode::Frobenius {
                skipped.push(info.name.to_string());
                continue;
            }
            runs.push(self.run_check(info.name, seed, samples).expect("registered and applicable"));
        }
        let pass = runs.iter().all(CheckRun::pass);
        Summary { seed, samples, runs, skipped, pass }
    }
}

pub fn run_check(ctx: &RigidContext, name: &str, seed: u64, samples: usize) -> Result<CheckRun> {
    Suite::from_context(ctx).run_check(name, seed, samples)
}

pub fn run_all(ctx: &RigidContext, seed: u64, samples: usize) -> Summary {
    Suite::from_context(ctx).run_all(seed, samples)
}

#[cfg(test)]
mod tests;
