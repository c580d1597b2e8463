use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path of the quiver: a start vertex and arrows listed source-to-target.
/// The empty arrow list is the trivial path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Sort key: length, then arrow indices, then start vertex.
    fn key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.start)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub path: Vec<usize>,
}

/// A uniform linear combination of paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
    pub source: usize,
    pub target: usize,
}

/// Bounds on the path enumeration used to find the quotient basis.
#[derive(Clone, Copy, Debug)]
pub struct PathLimits {
    pub max_length: usize,
    pub max_paths: usize,
}

impl Default for PathLimits {
    fn default() -> Self {
        PathLimits { max_length: 64, max_paths: 20_000 }
    }
}

/// A finite-dimensional quotient `KQ/I` of a path algebra by admissible relations.
pub struct Algebra {
    field: Field,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// Coordinates of every path shorter than `nil_length`; longer paths vanish.
    reductions: HashMap<Path, Vec<(usize, Scalar)>>,
    nil_length: usize,
    opposite: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("vertices", &self.vertices)
            .field("arrows", &self.arrows)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for Algebra {}

/// Relation as read from a file: coefficient plus arrow names source-to-target.
pub type RawRelation = Vec<(Scalar, Vec<String>)>;

impl Algebra {
    pub fn new(
        field: Field,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<RawRelation>,
    ) -> Result<Arc<Self>> {
        Algebra::with_limits(field, vertices, arrows, relations, PathLimits::default())
    }

    pub fn with_limits(
        field: Field,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<RawRelation>,
        limits: PathLimits,
    ) -> Result<Arc<Self>> {
        field.validate()?;
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let lookup = |v: &str| vindex.get(v).copied().ok_or_else(|| Error::UnknownName(v.to_string()));
        let mut aindex = HashMap::new();
        let mut arrow_list = Vec::with_capacity(arrows.len());
        for (i, (name, s, t)) in arrows.iter().enumerate() {
            if aindex.insert(name.clone(), i).is_some() || vindex.contains_key(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
            arrow_list.push(Arrow { name: name.clone(), source: lookup(s)?, target: lookup(t)? });
        }
        let mut rels = Vec::with_capacity(relations.len());
        for (index, raw) in relations.iter().enumerate() {
            let bad = |reason: String| Error::NonAdmissible { index, reason };
            let mut terms: Vec<Term> = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            for (coeff, names) in raw {
                if coeff.field() != field {
                    return Err(Error::FieldMismatch(format!("coefficient {coeff} of relation {index}")));
                }
                if names.len() < 2 {
                    return Err(bad(format!("path of length {} (need at least 2)", names.len())));
                }
                let path = names
                    .iter()
                    .map(|n| aindex.get(n).copied().ok_or_else(|| Error::UnknownName(n.clone())))
                    .collect::<Result<Vec<_>>>()?;
                for w in path.windows(2) {
                    if arrow_list[w[0]].target != arrow_list[w[1]].source {
                        return Err(bad(format!(
                            "arrows `{}` and `{}` do not compose",
                            arrow_list[w[0]].name, arrow_list[w[1]].name
                        )));
                    }
                }
                let st = (arrow_list[path[0]].source, arrow_list[*path.last().unwrap()].target);
                if *ends.get_or_insert(st) != st {
                    return Err(bad("terms have different endpoints".into()));
                }
                if coeff.is_zero() {
                    continue;
                }
                match terms.iter_mut().find(|t| t.path == path) {
                    Some(t) => t.coeff = t.coeff.add(coeff),
                    None => terms.push(Term { coeff: coeff.clone(), path }),
                }
            }
            terms.retain(|t| !t.coeff.is_zero());
            if let Some((source, target)) = ends {
                rels.push(Relation { terms, source, target });
            }
        }
        let mut alg = Algebra {
            field,
            vertices,
            arrows: arrow_list,
            relations: rels,
            basis: Vec::new(),
            reductions: HashMap::new(),
            nil_length: 0,
            opposite: OnceLock::new(),
        };
        alg.compute_basis(limits)?;
        Ok(Arc::new(alg))
    }

    /// Preprojective algebra of the linearly oriented `A_n` quiver. Arrows are
    /// `a{i}: i -> i+1` and `a{i}*: i+1 -> i` (plain `a`, `a*` when `n = 2`),
    /// with one relation per vertex.
    pub fn preprojective(n: usize, field: Field) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::Input("preprojective algebra needs n >= 1".into()));
        }
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let name = |i: usize| if n == 2 { "a".to_string() } else { format!("a{i}") };
        let mut arrows = Vec::new();
        for i in 1..n {
            arrows.push((name(i), i.to_string(), (i + 1).to_string()));
            arrows.push((format!("{}*", name(i)), (i + 1).to_string(), i.to_string()));
        }
        let one = field.one();
        let minus = one.neg();
        let mut relations = Vec::new();
        for i in 1..=n {
            let mut rel: RawRelation = Vec::new();
            if i < n {
                rel.push((one.clone(), vec![name(i), format!("{}*", name(i))]));
            }
            if i > 1 {
                rel.push((minus.clone(), vec![format!("{}*", name(i - 1)), name(i - 1)]));
            }
            if !rel.is_empty() {
                relations.push(rel);
            }
        }
        Algebra::new(field, vertices, arrows, relations)
    }

    /// Path algebra of the linearly oriented `A_n` quiver without relations.
    pub fn linear_path_algebra(n: usize, field: Field) -> Result<Arc<Self>> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (format!("b{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Algebra::new(field, vertices, arrows, Vec::new())
    }

    fn compute_basis(&mut self, limits: PathLimits) -> Result<()> {
        let nv = self.vertices.len();
        // paths[l] lists all paths of length l.
        let mut paths: Vec<Vec<Path>> = vec![(0..nv).map(Path::trivial).collect()];
        let mut total = nv;
        for length in 1..=limits.max_length {
            let next: Vec<Path> = paths[length - 1]
                .iter()
                .flat_map(|p| {
                    let end = self.end(p);
                    self.arrows
                        .iter()
                        .enumerate()
                        .filter(move |(_, a)| a.source == end)
                        .map(move |(i, _)| {
                            let mut q = p.clone();
                            q.arrows.push(i);
                            q
                        })
                })
                .collect();
            total += next.len();
            if total > limits.max_paths {
                break;
            }
            paths.push(next);
            if let Some((basis, reductions)) = self.truncated_reductions(&paths) {
                self.basis = basis;
                self.reductions = reductions;
                self.nil_length = length;
                return Ok(());
            }
        }
        Err(Error::InfiniteDimensional { cap: limits.max_length })
    }

    /// Works in `KQ / (I + J^{L+1})` with `L = paths.len() - 1`. Returns the
    /// standard basis and reduction table when every path of length `L` lies in
    /// the truncated ideal; then `J^L ⊆ I` and the quotient is final.
    #[allow(clippy::type_complexity)]
    fn truncated_reductions(
        &self,
        paths: &[Vec<Path>],
    ) -> Option<(Vec<Path>, HashMap<Path, Vec<(usize, Scalar)>>)> {
        let top = paths.len() - 1;
        let mut columns: Vec<&Path> = paths.iter().flatten().collect();
        // Largest paths first so that pivots eliminate leading terms.
        columns.sort_by(|a, b| b.key().cmp(&a.key()));
        let col: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for rel in &self.relations {
            let Some(min_len) = rel.terms.iter().map(|t| t.path.len()).min() else {
                continue;
            };
            for u in paths.iter().flatten() {
                if self.end(u) != rel.source || u.len() + min_len > top {
                    continue;
                }
                for v in paths.iter().flatten() {
                    if v.start != rel.target || u.len() + min_len + v.len() > top {
                        continue;
                    }
                    let mut row = Vec::new();
                    for t in &rel.terms {
                        let len = u.len() + t.path.len() + v.len();
                        if len > top {
                            continue;
                        }
                        let mut arrows = Vec::with_capacity(len);
                        arrows.extend_from_slice(&u.arrows);
                        arrows.extend_from_slice(&t.path);
                        arrows.extend_from_slice(&v.arrows);
                        let w = Path { start: u.start, arrows };
                        row.push((col[&w], t.coeff.clone()));
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let mut m = Matrix::zeros(self.field, rows.len(), columns.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row {
                let cur = m.get(r, *c);
                m.set(r, *c, &cur.add(s));
            }
        }
        let rref = m.rref();
        let pivot_row: HashMap<usize, usize> =
            rref.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();

        let mut standard: Vec<&Path> =
            (0..columns.len()).filter(|c| !pivot_row.contains_key(c)).map(|c| columns[c]).collect();
        if standard.iter().any(|p| p.len() == top) {
            return None;
        }
        // Every length-`top` path must reduce to zero.
        for p in &paths[top] {
            let r = pivot_row[&col[p]];
            if (0..columns.len()).any(|c| c != col[p] && !rref.matrix.get(r, c).is_zero()) {
                return None;
            }
        }
        standard.sort_by(|a, b| a.key().cmp(&b.key()));
        let index: HashMap<&Path, usize> = standard.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut reductions = HashMap::new();
        for p in paths[..top].iter().flatten() {
            let c = col[p];
            let coords = match pivot_row.get(&c) {
                None => vec![(index[p], self.field.one())],
                Some(&r) => {
                    let mut v: Vec<(usize, Scalar)> = (0..columns.len())
                        .filter(|&f| f != c)
                        .filter_map(|f| {
                            let e = rref.matrix.get(r, f);
                            (!e.is_zero()).then(|| (index[columns[f]], e.neg()))
                        })
                        .collect();
                    v.sort_by_key(|(i, _)| *i);
                    v
                }
            };
            reductions.insert(p.clone(), coords);
        }
        Some((standard.into_iter().cloned().collect(), reductions))
    }

    fn end(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.start, |&a| self.arrows[a].target)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard paths, ordered by length then arrow indices then start vertex.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn source(&self, p: &Path) -> usize {
        p.start
    }

    pub fn target(&self, p: &Path) -> usize {
        self.end(p)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_empty() {
            format!("e{}", self.vertices[p.start])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("·")
        }
    }

    /// Sparse coordinates of a path in the standard basis.
    pub fn reduce(&self, p: &Path) -> Vec<(usize, Scalar)> {
        if p.len() >= self.nil_length {
            return Vec::new();
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Indices of standard paths from `i` to `v`, in basis order.
    pub fn paths_between(&self, i: usize, v: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| self.basis[k].start == i && self.end(&self.basis[k]) == v)
            .collect()
    }

    /// Algebra with every arrow reversed and relation paths read backwards.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let arrows = self
                    .arrows
                    .iter()
                    .map(|a| {
                        (a.name.clone(), self.vertices[a.target].clone(), self.vertices[a.source].clone())
                    })
                    .collect();
                let relations = self
                    .relations
                    .iter()
                    .map(|r| {
                        r.terms
                            .iter()
                            .map(|t| {
                                let names =
                                    t.path.iter().rev().map(|&a| self.arrows[a].name.clone()).collect();
                                (t.coeff.clone(), names)
                            })
                            .collect()
                    })
                    .collect();
                Algebra::new(self.field, self.vertices.clone(), arrows, relations)
                    .expect("opposite of a finite-dimensional algebra is finite-dimensional")
            })
            .clone()
    }

    /// Structural equality, short-circuiting on pointer identity.
    pub fn same(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// Human-readable relation, e.g. `a·a* - a*·a`.
    pub fn relation_name(&self, index: usize) -> String {
        let r = &self.relations[index];
        if r.terms.is_empty() {
            return "0".into();
        }
        r.terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let name = self.path_name(&Path { start: r.source, arrows: t.path.clone() });
                let c = t.coeff.to_string();
                match (k, c.as_str()) {
                    (0, "1") => name,
                    (_, "1") => format!("+ {name}"),
                    (0, _) => format!("{c}·{name}"),
                    _ => format!("+ {c}·{name}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Vertex names mapped to their indices, for deterministic serialization.
    pub fn vertex_map(&self) -> BTreeMap<String, usize> {
        self.vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn single_vertex_has_dimension_one() {
        let a = Algebra::new(Field::Rational, vec!["1".into()], vec![], vec![]).unwrap();
        assert_eq!(a.dim(), 1);
        let p = Algebra::preprojective(1, f5()).unwrap();
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn preprojective_a2_basis() {
        let a = Algebra::preprojective(2, f5()).unwrap();
        let names: Vec<String> = a.basis().iter().map(|p| a.path_name(p)).collect();
        assert_eq!(names, vec!["e1", "e2", "a", "a*"]);
        assert_eq!(a.relations().len(), 2);
    }

    #[test]
    fn preprojective_a3_dimension() {
        // Projectives of dimension vectors (1,1,1), (1,2,1), (1,1,1).
        let a = Algebra::preprojective(3, Field::prime(2).unwrap()).unwrap();
        assert_eq!(a.dim(), 10);
        let counts: Vec<usize> = (0..3)
            .map(|i| (0..3).map(|v| a.paths_between(i, v).len()).sum())
            .collect();
        assert_eq!(counts, vec![3, 4, 3]);
    }

    #[test]
    fn truncated_loop() {
        let q = Field::Rational;
        let a = Algebra::new(
            q,
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
            vec![vec![(q.one(), vec!["x".into(), "x".into()])]],
        )
        .unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn unbounded_loop_is_rejected() {
        let q = Field::Rational;
        let r = Algebra::with_limits(
            q,
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
            vec![],
            PathLimits { max_length: 10, max_paths: 1000 },
        );
        assert!(matches!(r, Err(Error::InfiniteDimensional { .. })));
    }

    #[test]
    fn short_relation_is_not_admissible() {
        let q = Field::Rational;
        let r = Algebra::new(
            q,
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
            vec![vec![(q.one(), vec!["a".into()])]],
        );
        assert!(matches!(r, Err(Error::NonAdmissible { index: 0, .. })));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let q = Field::Rational;
        let r = Algebra::new(q, vec!["1".into(), "1".into()], vec![], vec![]);
        assert!(matches!(r, Err(Error::DuplicateName(_))));
    }

    #[test]
    fn commutativity_relation_reduces_longer_path() {
        // Square with ab = cd: the path c·d reduces onto a·b.
        let q = Field::Rational;
        let a = Algebra::new(
            q,
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("d".into(), "3".into(), "4".into()),
            ],
            vec![vec![(q.one(), vec!["a".into(), "b".into()]), (q.from_i64(-1), vec!["c".into(), "d".into()])]],
        )
        .unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        let ab = a.reduce(&Path { start: 0, arrows: vec![0, 1] });
        let cd = a.reduce(&Path { start: 0, arrows: vec![2, 3] });
        assert_eq!(ab, cd);
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = Algebra::preprojective(3, f5()).unwrap();
        let op = a.opposite();
        assert_eq!(op.dim(), a.dim());
        assert_eq!(op.arrows()[0].source, a.arrows()[0].target);
    }
}
