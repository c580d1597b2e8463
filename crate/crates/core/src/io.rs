//! JSON file formats for algebras, modules and morphisms. Entries are field
//! element strings; matrices are row-major.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Module, Morphism, RawRelation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    /// Arrow names from source to target.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
}

impl AlgebraFile {
    pub fn build(&self) -> Result<Arc<Algebra>> {
        self.field.validate()?;
        let arrows = self.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| Ok((self.field.parse(&t.coeff)?, t.path.clone())))
                    .collect::<Result<RawRelation>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.field, self.vertices.clone(), arrows, relations)
    }

    pub fn from_algebra(alg: &Algebra) -> Self {
        let names = alg.vertices();
        let arrows = alg
            .arrows()
            .iter()
            .map(|a| ArrowSpec { name: a.name.clone(), from: names[a.source].clone(), to: names[a.target].clone() })
            .collect();
        let relations = alg
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|t| TermSpec {
                        coeff: t.coeff.to_string(),
                        path: t.path.iter().map(|&k| alg.arrows()[k].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect();
        AlgebraFile { field: alg.field(), vertices: names.to_vec(), arrows, relations }
    }
}

/// Missing vertices have dimension 0 and missing arrows act by zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<String>>,
}

impl ModuleFile {
    pub fn build(&self, alg: &Arc<Algebra>) -> Result<Module> {
        let mut dims = vec![0; alg.num_vertices()];
        for (v, &d) in &self.dims {
            dims[alg.vertex_index(v)?] = d;
        }
        let f = alg.field();
        let mut action: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        for (name, entries) in &self.action {
            let k = alg.arrow_index(name)?;
            let a = &alg.arrows()[k];
            action[k] = Matrix::from_strings(f, dims[a.target], dims[a.source], entries)?;
        }
        Module::new(alg, dims, action)
    }

    pub fn from_module(m: &Module) -> Self {
        let alg = m.algebra();
        let dims = alg.vertices().iter().cloned().zip(m.dims().iter().copied()).collect();
        let action = alg.arrows().iter().zip(m.action()).map(|(a, mat)| (a.name.clone(), mat.to_strings())).collect();
        ModuleFile { dims, action }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub comps: BTreeMap<String, Vec<String>>,
}

impl MorphismFile {
    /// Builds the morphism between already-resolved modules; missing vertices
    /// get zero components.
    pub fn build(&self, source: &Module, target: &Module) -> Result<Morphism> {
        let alg = source.algebra();
        let f = alg.field();
        let mut comps: Vec<Matrix> =
            (0..alg.num_vertices()).map(|v| Matrix::zeros(f, target.dim_at(v), source.dim_at(v))).collect();
        for (v, entries) in &self.comps {
            let i = alg.vertex_index(v)?;
            comps[i] = Matrix::from_strings(f, target.dim_at(i), source.dim_at(i), entries)?;
        }
        Morphism::new(source, target, comps)
    }

    pub fn from_morphism(m: &Morphism, source: &str, target: &str) -> Self {
        let alg = m.source().algebra();
        let comps = alg.vertices().iter().cloned().zip(m.comps().iter().map(Matrix::to_strings)).collect();
        MorphismFile { source: source.to_string(), target: target.to_string(), comps }
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{what}: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Parses `builtin:<kind>:<n>:<p>` (`p = 0` for the rationals) with kinds
/// `preprojective`, `linear` and `semisimple`.
pub fn builtin_algebra(tag: &str) -> Result<Arc<Algebra>> {
    let parts: Vec<&str> = tag.split(':').collect();
    let bad = || Error::Input(format!("malformed builtin algebra tag `{tag}`"));
    if parts.len() != 4 || parts[0] != "builtin" {
        return Err(bad());
    }
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    let p: u64 = parts[3].parse().map_err(|_| bad())?;
    let field = if p == 0 { Field::Rational } else { Field::prime(p)? };
    match parts[1] {
        "preprojective" => Algebra::preprojective(n, field),
        "linear" => Algebra::linear_path_algebra(n, field),
        "semisimple" => Algebra::new(field, (1..=n).map(|i| i.to_string()).collect(), vec![], vec![]),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_roundtrip() {
        let alg = Algebra::preprojective(3, Field::prime(2).unwrap()).unwrap();
        let file = AlgebraFile::from_algebra(&alg);
        let text = to_json(&file);
        let back: AlgebraFile = parse_json(&text, "algebra").unwrap();
        assert_eq!(back, file);
        assert_eq!(back.build().unwrap().dim(), alg.dim());
        assert!(text.contains("\"kind\": \"prime\""));
    }

    #[test]
    fn module_and_morphism_roundtrip() {
        let alg = builtin_algebra("builtin:preprojective:2:5").unwrap();
        let p1 = Module::projective(&alg, 0);
        let file = ModuleFile::from_module(&p1);
        assert_eq!(file.action["a"], vec!["1".to_string()]);
        assert_eq!(file.build(&alg).unwrap(), p1);
        let f = crate::algebra::hom_basis(&p1, &Module::projective(&alg, 1))[0].clone();
        let mf = MorphismFile::from_morphism(&f, "P1", "P2");
        assert_eq!(mf.build(f.source(), f.target()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        let alg = builtin_algebra("builtin:preprojective:2:5").unwrap();
        let bad: ModuleFile = parse_json(r#"{"dims": {"1": 1, "2": 1}, "action": {"a": ["1"], "a*": ["1"]}}"#, "m").unwrap();
        assert!(matches!(bad.build(&alg), Err(Error::RelationViolation { .. })));
        let unknown: ModuleFile = parse_json(r#"{"dims": {"9": 1}}"#, "m").unwrap();
        assert!(matches!(unknown.build(&alg), Err(Error::UnknownName(_))));
        assert!(builtin_algebra("builtin:cyclic:2:5").is_err());
        assert!(parse_json::<ModuleFile>("{", "m").is_err());
    }
}
