use std::fmt;
use std::sync::Arc;

use super::quiver::{Algebra, Path};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(PartialEq, Eq)]
struct ModuleData {
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

/// A finite-dimensional representation: a space per vertex, a matrix per arrow.
/// Arrow `a: i -> j` acts by a `dims[j] x dims[i]` matrix. Cloning is cheap.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    data: Arc<ModuleData>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.alg, &other.alg)
            && (Arc::ptr_eq(&self.data, &other.data) || self.data == other.data)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.data.dims)?;
        for (a, m) in self.alg.arrows().iter().zip(&self.data.action) {
            write!(f, " {}={:?}", a.name, m)?;
        }
        Ok(())
    }
}

impl Module {
    /// Checks shapes and relations.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = Module::new_unchecked(alg, dims, action)?;
        m.validate()?;
        Ok(m)
    }

    /// Checks shapes only; relations are trusted.
    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions given, algebra has {} vertices",
                dims.len(),
                alg.num_vertices()
            )));
        }
        if action.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} arrow matrices given, algebra has {} arrows",
                action.len(),
                alg.arrows().len()
            )));
        }
        for (a, m) in alg.arrows().iter().zip(&action) {
            if m.field() != alg.field() {
                return Err(Error::FieldMismatch(format!("matrix of arrow `{}`", a.name)));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Module { alg: alg.clone(), data: Arc::new(ModuleData { dims, action }) })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let f = alg.field();
        let action = alg.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module { alg: alg.clone(), data: Arc::new(ModuleData { dims: vec![0; alg.num_vertices()], action }) }
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Self {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|u| (u == v) as usize).collect();
        let action = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Module { alg: alg.clone(), data: Arc::new(ModuleData { dims, action }) }
    }

    /// The indecomposable projective `P_i`: standard paths starting at `i`,
    /// with arrows acting by right concatenation.
    pub fn projective(alg: &Arc<Algebra>, i: usize) -> Self {
        let nv = alg.num_vertices();
        let at: Vec<Vec<usize>> = (0..nv).map(|v| alg.paths_between(i, v)).collect();
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(alg.field(), dims[a.target], dims[a.source]);
                for (c, &k) in at[a.source].iter().enumerate() {
                    let mut p: Path = alg.basis()[k].clone();
                    p.arrows.push(ai);
                    for (idx, s) in alg.reduce(&p) {
                        let r = at[a.target]
                            .iter()
                            .position(|&b| b == idx)
                            .expect("reduction stays between the same endpoints");
                        m.set(r, c, &s);
                    }
                }
                m
            })
            .collect();
        Module { alg: alg.clone(), data: Arc::new(ModuleData { dims, action }) }
    }

    /// Vector-space dual over the opposite algebra `target`: same dimensions,
    /// transposed matrices.
    pub fn dual_over(&self, target: &Arc<Algebra>) -> Self {
        let action = self.data.action.iter().map(Matrix::transpose).collect();
        Module { alg: target.clone(), data: Arc::new(ModuleData { dims: self.data.dims.clone(), action }) }
    }

    /// Dual module over the opposite algebra.
    pub fn dual(&self) -> Self {
        self.dual_over(&self.alg.opposite())
    }

    /// The indecomposable injective `I_j = D(P_j)` with `P_j` over the opposite algebra.
    pub fn injective(alg: &Arc<Algebra>, j: usize) -> Self {
        Module::projective(&alg.opposite(), j).dual_over(alg)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.data.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.data.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.data.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.data.action
    }

    pub fn arrow(&self, a: usize) -> &Matrix {
        &self.data.action[a]
    }

    /// Matrix of a path (arrows source-to-target), composed right-to-left.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dim_at(p.start));
        for &a in &p.arrows {
            m = self.data.action[a].mul(&m);
        }
        m
    }

    /// Relations violated by this module as `(relation, vertex)` name pairs.
    pub fn violations(&self) -> Vec<(String, String)> {
        let alg = &self.alg;
        alg.relations()
            .iter()
            .enumerate()
            .filter_map(|(idx, r)| {
                let zero = Matrix::zeros(self.field(), self.dim_at(r.target), self.dim_at(r.source));
                let total = r.terms.iter().fold(zero, |acc, t| {
                    let p = Path { start: r.source, arrows: t.path.clone() };
                    acc.add(&self.path_matrix(&p).scale(&t.coeff))
                });
                (!total.is_zero()).then(|| (alg.relation_name(idx), alg.vertices()[r.source].clone()))
            })
            .collect()
    }

    /// Fails on the first violated relation.
    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some((relation, vertex)) => Err(Error::RelationViolation { relation, vertex }),
        }
    }

    /// Stable text form used for hashing and ordering.
    pub fn canonical_string(&self) -> String {
        let acts: Vec<String> = self.data.action.iter().map(Matrix::canonical_string).collect();
        format!("{:?}|{}", self.data.dims, acts.join("|"))
    }
}

/// A vertex-indexed family of matrices intertwining the arrow actions.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    comps: Arc<Vec<Matrix>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism{:?}->{:?} {:?}", self.source.dims(), self.target.dims(), self.comps)
    }
}

impl Morphism {
    /// Checks shapes and the intertwiner law.
    pub fn new(source: &Module, target: &Module, comps: Vec<Matrix>) -> Result<Self> {
        let f = Morphism::new_unchecked(source, target, comps)?;
        if let Some(a) = f.non_intertwined_arrow() {
            return Err(Error::NotIntertwiner(source.algebra().arrows()[a].name.clone()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, comps: Vec<Matrix>) -> Result<Self> {
        if !Algebra::same(source.algebra(), target.algebra()) {
            return Err(Error::Mismatch("morphism between modules over different algebras".into()));
        }
        if comps.len() != source.dims().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components given for {} vertices",
                comps.len(),
                source.dims().len()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.field() != source.field() {
                return Err(Error::FieldMismatch(format!("component at vertex {v}")));
            }
            if c.shape() != (target.dim_at(v), source.dim_at(v)) {
                return Err(Error::DimensionMismatch(format!(
                    "component at vertex `{}` must be {}x{}, got {}x{}",
                    source.algebra().vertices()[v],
                    target.dim_at(v),
                    source.dim_at(v),
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), comps: Arc::new(comps) })
    }

    fn non_intertwined_arrow(&self) -> Option<usize> {
        self.source.algebra().arrows().iter().enumerate().position(|(k, a)| {
            self.comps[a.target].mul(self.source.arrow(k)) != self.target.arrow(k).mul(&self.comps[a.source])
        })
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let comps = (0..source.dims().len())
            .map(|v| Matrix::zeros(f, target.dim_at(v), source.dim_at(v)))
            .collect();
        Morphism { source: source.clone(), target: target.clone(), comps: Arc::new(comps) }
    }

    pub fn identity(x: &Module) -> Self {
        let f = x.field();
        let comps = x.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism { source: x.clone(), target: x.clone(), comps: Arc::new(comps) }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &Morphism) -> Morphism {
        assert!(g.target == self.source, "composition of non-composable morphisms");
        let comps = self.comps.iter().zip(g.comps.iter()).map(|(a, b)| a.mul(b)).collect();
        Morphism { source: g.source.clone(), target: self.target.clone(), comps: Arc::new(comps) }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Morphism {
        g.after(self)
    }

    fn assert_parallel(&self, other: &Morphism) {
        assert!(
            self.source == other.source && self.target == other.target,
            "morphisms are not parallel"
        );
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        self.assert_parallel(other);
        self.with_comps(self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.assert_parallel(other);
        self.with_comps(self.comps.iter().zip(other.comps.iter()).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> Morphism {
        self.with_comps(self.comps.iter().map(Matrix::neg).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        self.with_comps(self.comps.iter().map(|m| m.scale(c)).collect())
    }

    fn with_comps(&self, comps: Vec<Matrix>) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), comps: Arc::new(comps) }
    }

    /// Length of the flattened coordinate vector for morphisms `x -> y`.
    pub fn flat_len(x: &Module, y: &Module) -> usize {
        x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum()
    }

    /// Components concatenated row-major into a single row vector.
    pub fn to_row(&self) -> Matrix {
        let f = self.field();
        let n = Morphism::flat_len(&self.source, &self.target);
        let mut out = Matrix::zeros(f, 1, n);
        let mut off = 0;
        for c in self.comps.iter() {
            let len = c.rows() * c.cols();
            out.set_block(0, off, &c.reshape(1, len));
            off += len;
        }
        out
    }

    /// Inverse of `to_row`; the intertwiner law is trusted.
    pub fn from_row(x: &Module, y: &Module, row: &Matrix) -> Morphism {
        let row = if row.rows() == 1 { row.clone() } else { row.transpose() };
        assert_eq!(row.cols(), Morphism::flat_len(x, y), "flattened morphism length mismatch");
        let mut off = 0;
        let comps = (0..x.dims().len())
            .map(|v| {
                let (r, c) = (y.dim_at(v), x.dim_at(v));
                let m = row.submatrix(0, 1, off, off + r * c).reshape(r, c);
                off += r * c;
                m
            })
            .collect();
        Morphism { source: x.clone(), target: y.clone(), comps: Arc::new(comps) }
    }

    /// Linear combination `Σ c_k b_k` of parallel morphisms `x -> y`.
    pub fn combination(x: &Module, y: &Module, basis: &[Morphism], coeffs: &[Scalar]) -> Morphism {
        assert_eq!(basis.len(), coeffs.len());
        basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(Morphism::zero(x, y), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    pub fn canonical_string(&self) -> String {
        let cs: Vec<String> = self.comps.iter().map(Matrix::canonical_string).collect();
        cs.join("|")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa2() -> Arc<Algebra> {
        Algebra::preprojective(2, Field::prime(5).unwrap()).unwrap()
    }

    #[test]
    fn projectives_of_pa2() {
        let a = pa2();
        let f = a.field();
        let p1 = Module::projective(&a, 0);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.arrow(0), &Matrix::from_i64(f, 1, 1, &[1]));
        assert_eq!(p1.arrow(1), &Matrix::from_i64(f, 1, 1, &[0]));
        assert!(p1.validate().is_ok());
    }

    #[test]
    fn invalid_module_names_relation() {
        let a = pa2();
        let f = a.field();
        let one = Matrix::from_i64(f, 1, 1, &[1]);
        let r = Module::new(&a, vec![1, 1], vec![one.clone(), one]);
        match r {
            Err(Error::RelationViolation { vertex, .. }) => assert_eq!(vertex, "1"),
            other => panic!("expected a relation violation, got {other:?}"),
        }
    }

    #[test]
    fn injectives_of_pa2_are_projective() {
        let a = pa2();
        let i1 = Module::injective(&a, 0);
        let p2 = Module::projective(&a, 1);
        // I_1 has socle S1 and top S2, like P2.
        assert_eq!(i1.dims(), p2.dims());
        assert!(i1.validate().is_ok());
    }

    #[test]
    fn flatten_roundtrip() {
        let a = pa2();
        let p1 = Module::projective(&a, 0);
        let id = Morphism::identity(&p1);
        let row = id.to_row();
        assert_eq!(Morphism::from_row(&p1, &p1, &row), id);
    }

    #[test]
    fn non_intertwiner_is_rejected() {
        let a = pa2();
        let f = a.field();
        let p1 = Module::projective(&a, 0);
        let s1 = Module::simple(&a, 0);
        // S1 -> P1 hitting the top of P1 does not commute with `a`.
        let bad = Morphism::new(&s1, &p1, vec![Matrix::from_i64(f, 1, 1, &[1]), Matrix::zeros(f, 1, 0)]);
        assert!(matches!(bad, Err(Error::NotIntertwiner(_))));
    }
}
