//! Project directories (`project.json` plus algebra and module files) and the
//! built-in fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{direct_sum, Algebra, Module, Morphism};
use crate::error::{Error, Result};
use crate::io::{builtin_algebra, parse_json, to_json, AlgebraFile, ModuleFile, MorphismFile};
use crate::linalg::Field;
use crate::rigid::{build_context, Mode, RigidContext};

pub const PROJECT_FILE: &str = "project.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub name: String,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_seed() -> u64 {
    42
}

fn default_samples() -> usize {
    200
}

fn default_format() -> OutputFormat {
    OutputFormat::Text
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: default_seed(), samples: default_samples(), format: default_format() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectConfig {
    /// A path relative to the project directory or a `builtin:` tag.
    pub algebra: String,
    pub modules: Vec<ModuleEntry>,
    #[serde(rename = "M_gen")]
    pub m_gen: Vec<String>,
    pub mode: Mode,
    #[serde(default)]
    pub options: Options,
}

/// A loaded project. Module names may be combined with `+` for direct sums
/// and `0` names the zero module.
#[derive(Clone, Debug)]
pub struct Project {
    pub dir: Option<PathBuf>,
    pub config: ProjectConfig,
    pub algebra: Arc<Algebra>,
    pub modules: Vec<(String, Module)>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

impl Project {
    pub fn load(dir: &Path) -> Result<Project> {
        let config: ProjectConfig = parse_json(&read(&dir.join(PROJECT_FILE))?, PROJECT_FILE)?;
        let algebra = if config.algebra.starts_with("builtin:") {
            builtin_algebra(&config.algebra)?
        } else {
            let file: AlgebraFile = parse_json(&read(&dir.join(&config.algebra))?, &config.algebra)?;
            file.build()?
        };
        let mut modules = Vec::new();
        for entry in &config.modules {
            let file: ModuleFile = parse_json(&read(&dir.join(&entry.file))?, &entry.file)?;
            modules.push((entry.name.clone(), file.build(&algebra)?));
        }
        Project::assemble(Some(dir.to_path_buf()), config, algebra, modules)
    }

    fn assemble(
        dir: Option<PathBuf>,
        config: ProjectConfig,
        algebra: Arc<Algebra>,
        modules: Vec<(String, Module)>,
    ) -> Result<Project> {
        for (i, (name, _)) in modules.iter().enumerate() {
            if name.is_empty() || name == "0" || name.contains('+') {
                return Err(Error::Input(format!("invalid module name `{name}`")));
            }
            if modules[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let project = Project { dir, config, algebra, modules };
        for name in &project.config.m_gen {
            project.module(name)?;
        }
        Ok(project)
    }

    pub fn names(&self) -> Vec<&str> {
        self.modules.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn module(&self, name: &str) -> Result<Module> {
        let name = name.trim();
        if name == "0" {
            return Ok(Module::zero(&self.algebra));
        }
        if name.contains('+') {
            let parts = name.split('+').map(|p| self.module(p)).collect::<Result<Vec<_>>>()?;
            return Ok(direct_sum(&self.algebra, &parts).module);
        }
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn generator_summands(&self) -> Result<Vec<Module>> {
        self.config.m_gen.iter().map(|n| self.module(n)).collect()
    }

    pub fn context(&self) -> Result<RigidContext> {
        build_context(&self.algebra, &self.generator_summands()?, self.config.mode)
    }

    /// Reads a morphism file; relative paths resolve against the working
    /// directory first, then the project directory.
    pub fn load_morphism(&self, path: &Path) -> Result<Morphism> {
        let resolved = if path.exists() || path.is_absolute() {
            path.to_path_buf()
        } else {
            self.dir.as_ref().map(|d| d.join(path)).unwrap_or_else(|| path.to_path_buf())
        };
        let file: MorphismFile = parse_json(&read(&resolved)?, &path.display().to_string())?;
        self.morphism(&file)
    }

    pub fn morphism(&self, file: &MorphismFile) -> Result<Morphism> {
        file.build(&self.module(&file.source)?, &self.module(&file.target)?)
    }
}

/// In-memory contents of a fixture project.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub tag: String,
    pub algebra: AlgebraFile,
    pub modules: Vec<(String, ModuleFile)>,
    pub config: ProjectConfig,
}

pub const FIXTURE_TAGS: [&str; 4] = ["semi", "pa2", "pa2-deg", "pa3"];

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn module_file(dims: &[(&str, usize)], action: &[(&str, &[&str])]) -> ModuleFile {
    ModuleFile {
        dims: dims.iter().map(|(v, d)| (v.to_string(), *d)).collect(),
        action: action.iter().map(|(a, e)| (a.to_string(), strings(e))).collect(),
    }
}

fn pa2_modules() -> Vec<(String, ModuleFile)> {
    vec![
        ("S1".into(), module_file(&[("1", 1), ("2", 0)], &[("a", &[]), ("a*", &[])])),
        ("S2".into(), module_file(&[("1", 0), ("2", 1)], &[("a", &[]), ("a*", &[])])),
        ("P1".into(), module_file(&[("1", 1), ("2", 1)], &[("a", &["1"]), ("a*", &["0"])])),
        ("P2".into(), module_file(&[("1", 1), ("2", 1)], &[("a", &["0"]), ("a*", &["1"])])),
    ]
}

fn config(modules: &[(String, ModuleFile)], m_gen: &[&str]) -> ProjectConfig {
    ProjectConfig {
        algebra: "algebra.json".into(),
        modules: modules
            .iter()
            .map(|(n, _)| ModuleEntry { name: n.clone(), file: format!("modules/{n}.json") })
            .collect(),
        m_gen: strings(m_gen),
        mode: Mode::Frobenius,
        options: Options::default(),
    }
}

/// The fixtures: `semi` (one vertex over F_5), `pa2` (preprojective `A_2` over
/// F_5 with `M_gen = P1 ⊕ P2 ⊕ S1`), `pa2-deg` (`M_gen = P1 ⊕ P2`) and `pa3`
/// (preprojective `A_3` over F_2 with `M_gen = Λ`). All use Frobenius mode.
pub fn fixture(tag: &str) -> Result<Fixture> {
    let f5 = Field::prime(5)?;
    let (algebra, modules, m_gen): (AlgebraFile, Vec<(String, ModuleFile)>, Vec<&str>) = match tag {
        "semi" => {
            let alg = AlgebraFile { field: f5, vertices: strings(&["1"]), arrows: vec![], relations: vec![] };
            (alg, vec![("S".into(), module_file(&[("1", 1)], &[]))], vec!["S"])
        }
        "pa2" | "pa2-deg" => {
            let alg = AlgebraFile::from_algebra(&*Algebra::preprojective(2, f5)?);
            let gen = if tag == "pa2" { vec!["P1", "P2", "S1"] } else { vec!["P1", "P2"] };
            (alg, pa2_modules(), gen)
        }
        "pa3" => {
            let alg = Algebra::preprojective(3, Field::prime(2)?)?;
            let mut modules = Vec::new();
            for v in 0..3 {
                modules.push((format!("S{}", v + 1), ModuleFile::from_module(&Module::simple(&alg, v))));
            }
            for v in 0..3 {
                modules.push((format!("P{}", v + 1), ModuleFile::from_module(&Module::projective(&alg, v))));
            }
            (AlgebraFile::from_algebra(&alg), modules, vec!["P1", "P2", "P3"])
        }
        other => {
            return Err(Error::Input(format!(
                "unknown fixture `{other}` (expected one of {})",
                FIXTURE_TAGS.join(", ")
            )))
        }
    };
    let config = config(&modules, &m_gen);
    Ok(Fixture { tag: tag.to_string(), algebra, modules, config })
}

impl Fixture {
    pub fn project(&self) -> Result<Project> {
        let alg = self.algebra.build()?;
        let modules = self
            .modules
            .iter()
            .map(|(n, f)| Ok((n.clone(), f.build(&alg)?)))
            .collect::<Result<Vec<_>>>()?;
        Project::assemble(None, self.config.clone(), alg, modules)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Input(format!("cannot write to {}: {e}", dir.display()));
        fs::create_dir_all(dir.join("modules")).map_err(io)?;
        fs::write(dir.join(PROJECT_FILE), to_json(&self.config)).map_err(io)?;
        fs::write(dir.join(&self.config.algebra), to_json(&self.algebra)).map_err(io)?;
        for ((_, file), entry) in self.modules.iter().zip(&self.config.modules) {
            fs::write(dir.join(&entry.file), to_json(file)).map_err(io)?;
        }
        Ok(())
    }
}

pub fn load_fixture(tag: &str) -> Result<Project> {
    fixture(tag)?.project()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa2_matches_generated_modules() {
        let p = load_fixture("pa2").unwrap();
        assert_eq!(p.module("P1").unwrap(), Module::projective(&p.algebra, 0));
        assert_eq!(p.module("P2").unwrap(), Module::projective(&p.algebra, 1));
        assert_eq!(p.module("S2").unwrap(), Module::simple(&p.algebra, 1));
        assert_eq!(p.module("S1+S2").unwrap().dims(), &[1, 1]);
        assert!(p.module("0").unwrap().is_zero());
        assert!(matches!(p.module("Q"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn every_fixture_builds_a_context() {
        for tag in FIXTURE_TAGS {
            let p = load_fixture(tag).unwrap();
            p.context().unwrap();
        }
    }

    #[test]
    fn write_then_load() {
        let dir = tempfile::tempdir().unwrap();
        for tag in FIXTURE_TAGS {
            let d = dir.path().join(tag);
            fixture(tag).unwrap().write(&d).unwrap();
            let p = Project::load(&d).unwrap();
            assert_eq!(p.names(), fixture(tag).unwrap().project().unwrap().names());
            p.context().unwrap();
        }
        assert!(fixture("nope").is_err());
    }
}
