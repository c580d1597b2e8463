//! Command dispatch for the `frobcat` binary.
//!
//! Exit codes: 0 success or predicate true, 1 predicate or property failure,
//! 2 invalid input or rejected hypotheses.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use frobcat::algebra::{hom_dim, is_epi, Module, Morphism};
use frobcat::axioms::{check_names, Suite};
use frobcat::error::Error;
use frobcat::homological::ext1_dim;
use frobcat::io::{to_json, ModuleFile, MorphismFile};
use frobcat::localization::{dl_verify, ho_hom, stable_endo, DlReport};
use frobcat::project::{fixture, OutputFormat, Project};
use frobcat::rigid::{Factorization, RigidContext};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "frobcat", version, about = "Model structures from rigid subcategories of quiver representations")]
pub struct Cli {
    /// Project directory containing project.json.
    #[arg(long, global = true, default_value = ".")]
    pub project: PathBuf,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the context and print the generator data.
    Validate,
    /// Dimension of Hom(X, Y).
    Hom { x: String, y: String },
    /// Dimension of Ext¹(X, Y).
    Ext { x: String, y: String },
    /// Is the morphism a weak equivalence?
    Weq {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Is the morphism a fibration?
    Fib {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Is the object cofibrant (in pr M)?
    Cofibrant { x: String },
    /// Cofibrant replacement of an object.
    Replace { x: String },
    /// Factor into a weak equivalence followed by a fibration.
    Factor1 {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Factor a map out of a cofibrant object into a cofibration followed by a trivial fibration.
    Factor2 {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Are two parallel morphisms homotopic?
    Homotopic {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Dimension of Ho(X, Y).
    HoHom { x: String, y: String },
    /// Compare Ho(X, Y) with Ē-module maps GX -> GY.
    DlVerify {
        /// Every ordered pair of project modules (the default without X Y).
        #[arg(long)]
        all_pairs: bool,
        x: Option<String>,
        y: Option<String>,
    },
    /// Run the seeded axiom battery.
    Axioms {
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Fixture projects.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixtureAction {
    /// Write a fixture project (semi, pa2, pa2-deg, pa3) to a directory.
    Emit { tag: String, dir: PathBuf },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 1 } else { 2 };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli).unwrap_or_else(|e| Outcome::error(&e)),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

struct Env {
    project: Project,
    ctx: RigidContext,
    json: bool,
}

impl Env {
    fn load(dir: &Path, json: bool) -> Result<Env, Error> {
        let project = Project::load(dir)?;
        let ctx = project.context()?;
        let json = json || project.config.options.format == OutputFormat::Json;
        Ok(Env { project, ctx, json })
    }

    fn emit(&self, value: Value, text: String, pass: bool) -> Outcome {
        if self.json {
            let mut value = value;
            if let Value::Object(map) = &mut value {
                map.insert("tool_version".into(), json!(TOOL_VERSION));
            }
            Outcome::ok(to_json(&value), pass)
        } else {
            Outcome::ok(text, pass)
        }
    }

    fn morphism(&self, path: &Path) -> Result<Morphism, Error> {
        self.project.load_morphism(path)
    }
}

fn dims(m: &Module) -> Vec<usize> {
    m.dims().to_vec()
}

fn fmt_dims(m: &Module) -> String {
    let parts: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn predicate(env: &Env, name: &str, value: bool) -> Outcome {
    env.emit(json!({ "predicate": name, "value": value }), format!("{value}\n"), value)
}

fn factorization_output(env: &Env, fac: &Factorization) -> Outcome {
    let left = MorphismFile::from_morphism(&fac.left, "source", "mid");
    let right = MorphismFile::from_morphism(&fac.right, "mid", "target");
    let value = json!({
        "flavor": fac.flavor,
        "mid": ModuleFile::from_module(fac.mid()),
        "left": left,
        "right": right,
        "recomposes": fac.right.after(&fac.left) == fac.f,
    });
    let text = format!(
        "flavor: {}\nmid dims: {}\nleft: {}right: {}",
        serde_json::to_value(fac.flavor).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        fmt_dims(fac.mid()),
        to_json(&left),
        to_json(&right)
    );
    env.emit(value, text, true)
}

fn dl_pairs(env: &Env, all: bool, x: &Option<String>, y: &Option<String>) -> Result<Vec<(String, String)>, Error> {
    match (x, y) {
        (Some(x), Some(y)) if !all => Ok(vec![(x.clone(), y.clone())]),
        (None, None) => {
            let names = env.project.names();
            Ok(names.iter().flat_map(|a| names.iter().map(move |b| (a.to_string(), b.to_string()))).collect())
        }
        (Some(_), Some(_)) => Err(Error::Input("give either --all-pairs or a pair X Y".into())),
        _ => Err(Error::Input("dl-verify needs both X and Y".into())),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    if let Command::Fixtures { action: FixtureAction::Emit { tag, dir } } = &cli.command {
        let f = fixture(tag)?;
        f.write(dir)?;
        let text = format!("wrote fixture {tag} to {}\n", dir.display());
        return Ok(if cli.json {
            Outcome::ok(to_json(&json!({ "fixture": tag, "dir": dir, "tool_version": TOOL_VERSION })), true)
        } else {
            Outcome::ok(text, true)
        });
    }
    let env = Env::load(&cli.project, cli.json)?;
    let ctx = &env.ctx;
    let p = &env.project;
    Ok(match &cli.command {
        Command::Validate => {
            let u: Vec<Vec<usize>> = ctx.u_parts().iter().map(dims).collect();
            let m: Vec<Vec<usize>> = ctx.summands().iter().map(dims).collect();
            let mut text = format!("context ok ({} mode)\n", ctx.mode());
            text.push_str(&format!("M_gen = {}\n", p.config.m_gen.join(" + ")));
            for (name, d) in p.config.m_gen.iter().zip(&m) {
                text.push_str(&format!("  summand {name}: dims {d:?}\n"));
            }
            text.push_str(&format!("℧M_gen dims: {}\n", fmt_dims(ctx.mho_generator().right())));
            for d in &u {
                text.push_str(&format!("  U part: dims {d:?}\n"));
            }
            let value = json!({
                "mode": ctx.mode(),
                "m_gen": p.config.m_gen,
                "summand_dims": m,
                "mho_dims": dims(ctx.mho_generator().right()),
                "u_part_dims": u,
            });
            env.emit(value, text, true)
        }
        Command::Hom { x, y } => {
            let d = hom_dim(&p.module(x)?, &p.module(y)?);
            env.emit(json!({ "x": x, "y": y, "hom_dim": d }), format!("dim Hom({x}, {y}) = {d}\n"), true)
        }
        Command::Ext { x, y } => {
            let d = ext1_dim(&p.module(x)?, &p.module(y)?);
            env.emit(json!({ "x": x, "y": y, "ext1_dim": d }), format!("dim Ext1({x}, {y}) = {d}\n"), true)
        }
        Command::Weq { morphism } => predicate(&env, "weak_equivalence", ctx.is_weak_equivalence(&env.morphism(morphism)?)),
        Command::Fib { morphism } => predicate(&env, "fibration", ctx.is_fibration(&env.morphism(morphism)?)),
        Command::Cofibrant { x } => predicate(&env, "cofibrant", ctx.is_cofibrant(&p.module(x)?)?),
        Command::Replace { x } => {
            let rep = ctx.cofibrant_replacement(&p.module(x)?)?;
            let phi = MorphismFile::from_morphism(&rep.phi, "A", x);
            let checks = json!({
                "fibration": ctx.is_fibration(&rep.phi),
                "weak_equivalence": ctx.is_weak_equivalence(&rep.phi),
                "epi": is_epi(&rep.phi),
            });
            let value = json!({ "x": x, "a": ModuleFile::from_module(&rep.a), "phi": phi, "checks": checks });
            let text = format!(
                "A dims: {}\nfibration: {}\nweak equivalence: {}\nepi: {}\nphi: {}",
                fmt_dims(&rep.a),
                checks["fibration"],
                checks["weak_equivalence"],
                checks["epi"],
                to_json(&phi)
            );
            env.emit(value, text, true)
        }
        Command::Factor1 { morphism } => factorization_output(&env, &ctx.factorize1(&env.morphism(morphism)?)?),
        Command::Factor2 { morphism } => factorization_output(&env, &ctx.factorize2(&env.morphism(morphism)?)?),
        Command::Homotopic { f, g } => predicate(&env, "homotopic", ctx.are_homotopic(&env.morphism(f)?, &env.morphism(g)?)?),
        Command::HoHom { x, y } => {
            let d = ho_hom(ctx, &p.module(x)?, &p.module(y)?)?.dim();
            env.emit(json!({ "x": x, "y": y, "ho_dim": d }), format!("dim Ho({x}, {y}) = {d}\n"), true)
        }
        Command::DlVerify { all_pairs, x, y } => {
            let e = stable_endo(ctx)?;
            let mut reports: Vec<DlReport> = Vec::new();
            for (a, b) in dl_pairs(&env, *all_pairs, x, y)? {
                reports.push(dl_verify(ctx, &e, (&a, &p.module(&a)?), (&b, &p.module(&b)?))?);
            }
            let pass = reports.iter().all(|r| r.pass);
            let mut text = format!("dim Ē = {}\n", e.dim());
            for r in &reports {
                text.push_str(&format!(
                    "({}, {}) ho={} mod={} {} {}\n",
                    r.pair.0,
                    r.pair.1,
                    r.dim_ho,
                    r.dim_mod,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.checksum
                ));
            }
            text.push_str(if pass { "all pairs pass\n" } else { "some pairs fail\n" });
            env.emit(json!({ "ebar_dim": e.dim(), "reports": reports, "pass": pass }), text, pass)
        }
        Command::Axioms { check, seed, samples } => {
            let seed = seed.unwrap_or(p.config.options.seed);
            let samples = samples.unwrap_or(p.config.options.samples);
            let suite = Suite::new(ctx, &p.modules);
            match check {
                Some(name) => {
                    let run = suite.run_check(name, seed, samples)?;
                    let pass = run.pass();
                    let mut text = run.summary_line();
                    text.push('\n');
                    for v in &run.violations {
                        text.push_str(&format!("  sample {}: expected {}, observed {}\n", v.sample, v.expected, v.observed));
                    }
                    env.emit(serde_json::to_value(&run)?, text, pass)
                }
                None => {
                    let summary = suite.run_all(seed, samples);
                    env.emit(serde_json::to_value(&summary)?, summary.to_text(), summary.pass)
                }
            }
        }
        Command::Fixtures { .. } => unreachable!("handled above"),
    })
}

/// Names accepted by `axioms --check`.
pub fn registered_checks() -> Vec<&'static str> {
    check_names()
}
