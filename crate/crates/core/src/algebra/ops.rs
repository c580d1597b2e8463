//! Additive-category toolkit on representations: hom spaces, kernels,
//! cokernels, sums, pushouts, pullbacks and short exact sequences.

use std::sync::Arc;

use super::module::{Module, Morphism};
use super::quiver::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

fn same_algebra(x: &Module, y: &Module) -> Result<()> {
    if Algebra::same(x.algebra(), y.algebra()) {
        Ok(())
    } else {
        Err(Error::Mismatch("modules over different algebras".into()))
    }
}

/// Basis of `Hom(x, y)`: the null space of the intertwiner equations
/// `C_j X_a - Y_a C_i = 0`, in the flattened coordinates of `Morphism::to_row`.
pub fn hom_basis(x: &Module, y: &Module) -> Vec<Morphism> {
    same_algebra(x, y).expect("hom_basis needs a common algebra");
    let alg = x.algebra();
    let f = x.field();
    let nv = alg.num_vertices();
    let mut offsets = Vec::with_capacity(nv + 1);
    offsets.push(0);
    for v in 0..nv {
        offsets.push(offsets[v] + x.dim_at(v) * y.dim_at(v));
    }
    let unknowns = offsets[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let eq_rows: usize = alg.arrows().iter().map(|a| y.dim_at(a.target) * x.dim_at(a.source)).sum();
    let mut sys = Matrix::zeros(f, eq_rows, unknowns);
    let mut r0 = 0;
    for (k, a) in alg.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let rows = y.dim_at(j) * x.dim_at(i);
        if rows == 0 {
            continue;
        }
        // Row-major vec(C_j X_a) = (I ⊗ X_a^T) vec(C_j); vec(Y_a C_i) = (Y_a ⊗ I) vec(C_i).
        let left = Matrix::identity(f, y.dim_at(j)).kron(&x.arrow(k).transpose());
        let right = y.arrow(k).kron(&Matrix::identity(f, x.dim_at(i))).neg();
        if i == j {
            sys.set_block(r0, offsets[j], &left.add(&right));
        } else {
            sys.set_block(r0, offsets[j], &left);
            sys.set_block(r0, offsets[i], &right);
        }
        r0 += rows;
    }
    sys.kernel_basis().iter().map(|v| Morphism::from_row(x, y, v)).collect()
}

pub fn hom_dim(x: &Module, y: &Module) -> usize {
    hom_basis(x, y).len()
}

/// Stacks flattened morphisms as the rows of a matrix.
pub fn rows_of(x: &Module, y: &Module, ms: &[Morphism]) -> Matrix {
    let rows: Vec<Matrix> = ms.iter().map(Morphism::to_row).collect();
    let refs: Vec<&Matrix> = rows.iter().collect();
    Matrix::vstack(x.field(), Morphism::flat_len(x, y), &refs)
}

/// Coefficients expressing `m` in terms of `basis` (parallel morphisms), if possible.
pub fn express(basis: &[Morphism], m: &Morphism) -> Option<Vec<Scalar>> {
    let (x, y) = (m.source(), m.target());
    if basis.is_empty() {
        return m.is_zero().then(Vec::new);
    }
    let b = rows_of(x, y, basis);
    let sol = b.solve_left(&m.to_row())?;
    Some(sol.entries())
}

/// Submodule of `x` spanned at each vertex by the columns of `bases[v]`, which
/// must be linearly independent and arrow-stable. Returns it with its inclusion.
pub fn submodule_from_bases(x: &Module, bases: Vec<Matrix>) -> (Module, Morphism) {
    let alg = x.algebra();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let image = x.arrow(k).mul(&bases[a.source]);
            bases[a.target]
                .solve_right(&image)
                .expect("subspace family is stable under the arrows")
        })
        .collect();
    let sub = Module::new_unchecked(alg, dims, action).expect("shapes are consistent");
    let inc = Morphism::new_unchecked(&sub, x, bases).expect("shapes are consistent");
    (sub, inc)
}

/// Kernel of `f` with its (mono) inclusion into the source.
pub fn kernel(f: &Morphism) -> (Module, Morphism) {
    let bases = f.comps().iter().map(Matrix::kernel_matrix).collect();
    submodule_from_bases(f.source(), bases)
}

/// Image of `f` with its inclusion into the target.
pub fn image(f: &Morphism) -> (Module, Morphism) {
    let bases = f.comps().iter().map(Matrix::column_space).collect();
    submodule_from_bases(f.target(), bases)
}

/// Cokernel of `f` with its (epi) projection from the target. At each vertex
/// the projection `Q_v` spans the left null space of `f_v`, and arrows act by
/// `Q_j Y_a R_i` with `R_i` a right inverse of `Q_i`.
pub fn cokernel(f: &Morphism) -> (Module, Morphism) {
    let y = f.target();
    let alg = y.algebra();
    let fld = y.field();
    let qs: Vec<Matrix> = f.comps().iter().map(Matrix::left_kernel_matrix).collect();
    let rs: Vec<Matrix> = qs
        .iter()
        .map(|q| q.solve_right(&Matrix::identity(fld, q.rows())).expect("Q has full row rank"))
        .collect();
    let dims = qs.iter().map(Matrix::rows).collect();
    let action = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| qs[a.target].mul(y.arrow(k)).mul(&rs[a.source]))
        .collect();
    let c = Module::new_unchecked(alg, dims, action).expect("shapes are consistent");
    let p = Morphism::new_unchecked(y, &c, qs).expect("shapes are consistent");
    (c, p)
}

/// Given `ι: K -> X` mono and `g: W -> X` with image inside `K`, the unique
/// `h: W -> K` with `ι ∘ h = g`.
pub fn factor_through_mono(iota: &Morphism, g: &Morphism) -> Option<Morphism> {
    let comps = iota
        .comps()
        .iter()
        .zip(g.comps())
        .map(|(b, gv)| b.solve_right(gv))
        .collect::<Option<Vec<_>>>()?;
    Morphism::new(g.source(), iota.source(), comps).ok()
}

/// Given `π: Y -> C` epi and `g: Y -> Z` vanishing on `ker π`, the unique
/// `h: C -> Z` with `h ∘ π = g`.
pub fn factor_through_epi(pi: &Morphism, g: &Morphism) -> Option<Morphism> {
    let comps = pi
        .comps()
        .iter()
        .zip(g.comps())
        .map(|(q, gv)| q.solve_left(gv))
        .collect::<Option<Vec<_>>>()?;
    Morphism::new(pi.target(), g.target(), comps).ok()
}

/// A direct sum with its structure maps; `projections[i] ∘ injections[j] = δ_ij`.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> DirectSum {
    let f = alg.field();
    let nv = alg.num_vertices();
    for p in parts {
        same_algebra(&Module::zero(alg), p).expect("direct_sum needs a common algebra");
    }
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let action = (0..alg.arrows().len())
        .map(|k| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.arrow(k)).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let module = Module::new_unchecked(alg, dims.clone(), action).expect("shapes are consistent");
    let mut offsets = vec![0usize; nv];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let d = p.dim_at(v);
            let mut m = Matrix::zeros(f, dims[v], d);
            m.set_block(offsets[v], 0, &Matrix::identity(f, d));
            proj.push(m.transpose());
            inj.push(m);
            offsets[v] += d;
        }
        injections.push(Morphism::new_unchecked(p, &module, inj).expect("shapes are consistent"));
        projections.push(Morphism::new_unchecked(&module, p, proj).expect("shapes are consistent"));
    }
    DirectSum { module, injections, projections }
}

/// The morphism `X -> ⊕ Y_k` with components `maps[k]`, into the given sum.
pub fn column_map(sum: &DirectSum, maps: &[Morphism]) -> Morphism {
    assert_eq!(sum.injections.len(), maps.len());
    let x = maps.first().map(|m| m.source().clone());
    let Some(x) = x else { panic!("column_map needs at least one component") };
    maps.iter()
        .zip(&sum.injections)
        .fold(Morphism::zero(&x, &sum.module), |acc, (m, i)| acc.add(&i.after(m)))
}

/// The morphism `⊕ X_k -> Y` with components `maps[k]`, out of the given sum.
pub fn row_map(sum: &DirectSum, maps: &[Morphism], y: &Module) -> Morphism {
    assert_eq!(sum.projections.len(), maps.len());
    maps.iter()
        .zip(&sum.projections)
        .fold(Morphism::zero(&sum.module, y), |acc, (m, p)| acc.add(&m.after(p)))
}

/// `f ⊕ g : A ⊕ C -> B ⊕ D`, with the sums built by `direct_sum`.
pub fn sum_of_morphisms(fs: &[Morphism]) -> (DirectSum, DirectSum, Morphism) {
    let alg = fs[0].source().algebra().clone();
    let src = direct_sum(&alg, &fs.iter().map(|f| f.source().clone()).collect::<Vec<_>>());
    let tgt = direct_sum(&alg, &fs.iter().map(|f| f.target().clone()).collect::<Vec<_>>());
    let comps = (0..alg.num_vertices())
        .map(|v| {
            let blocks: Vec<&Matrix> = fs.iter().map(|f| f.comp(v)).collect();
            Matrix::block_diag(alg.field(), &blocks)
        })
        .collect();
    let m = Morphism::new_unchecked(&src.module, &tgt.module, comps).expect("shapes are consistent");
    (src, tgt, m)
}

/// Pushout square of `f: A -> B` and `g: A -> C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: Module,
    pub from_b: Morphism,
    pub from_c: Morphism,
    /// `A -> B ⊕ C`, `x ↦ (f x, -g x)`, and the sum it lands in.
    pub sum: DirectSum,
    pub into_sum: Morphism,
    pub projection: Morphism,
}

pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Mismatch("pushout needs a common source".into()));
    }
    let alg = f.source().algebra().clone();
    let sum = direct_sum(&alg, &[f.target().clone(), g.target().clone()]);
    let into_sum = column_map(&sum, &[f.clone(), g.neg()]);
    let (module, projection) = cokernel(&into_sum);
    let from_b = projection.after(&sum.injections[0]);
    let from_c = projection.after(&sum.injections[1]);
    Ok(Pushout { module, from_b, from_c, sum, into_sum, projection })
}

/// Pullback square of `f: B -> D` and `g: C -> D`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: Module,
    pub to_b: Morphism,
    pub to_c: Morphism,
    pub sum: DirectSum,
    pub inclusion: Morphism,
}

pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Mismatch("pullback needs a common target".into()));
    }
    let alg = f.source().algebra().clone();
    let sum = direct_sum(&alg, &[f.source().clone(), g.source().clone()]);
    let out = row_map(&sum, &[f.clone(), g.neg()], f.target());
    let (module, inclusion) = kernel(&out);
    let to_b = sum.projections[0].after(&inclusion);
    let to_c = sum.projections[1].after(&inclusion);
    Ok(Pullback { module, to_b, to_c, sum, inclusion })
}

pub fn is_mono(f: &Morphism) -> bool {
    f.comps().iter().all(|c| c.rank() == c.cols())
}

pub fn is_epi(f: &Morphism) -> bool {
    f.comps().iter().all(|c| c.rank() == c.rows())
}

pub fn is_iso(f: &Morphism) -> bool {
    f.comps().iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
}

pub fn inverse(f: &Morphism) -> Option<Morphism> {
    let comps = f.comps().iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
    Morphism::new_unchecked(f.target(), f.source(), comps).ok()
}

/// A short exact sequence `0 -> A -i-> B -p-> C -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub i: Morphism,
    pub p: Morphism,
}

impl ShortExactSequence {
    pub fn new(i: Morphism, p: Morphism) -> Result<Self> {
        if i.target() != p.source() {
            return Err(Error::Mismatch("inflation and deflation are not composable".into()));
        }
        if !p.after(&i).is_zero() {
            return Err(Error::Precondition("p ∘ i is not zero".into()));
        }
        if !is_mono(&i) || !is_epi(&p) {
            return Err(Error::Precondition("i must be mono and p epi".into()));
        }
        let b = i.target();
        let ok = (0..b.dims().len())
            .all(|v| b.dim_at(v) == i.source().dim_at(v) + p.target().dim_at(v));
        if !ok {
            return Err(Error::Precondition("image of i differs from kernel of p".into()));
        }
        Ok(ShortExactSequence { i, p })
    }

    pub fn left(&self) -> &Module {
        self.i.source()
    }

    pub fn middle(&self) -> &Module {
        self.i.target()
    }

    pub fn right(&self) -> &Module {
        self.p.target()
    }
}

/// Random-access helper: the zero vector of `Hom(x, y)` flattened.
pub fn zero_row(field: Field, x: &Module, y: &Module) -> Matrix {
    Matrix::zeros(field, 1, Morphism::flat_len(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    struct Pa2 {
        alg: Arc<Algebra>,
        s1: Module,
        s2: Module,
        p1: Module,
        p2: Module,
    }

    fn pa2() -> Pa2 {
        let alg = Algebra::preprojective(2, Field::prime(5).unwrap()).unwrap();
        Pa2 {
            s1: Module::simple(&alg, 0),
            s2: Module::simple(&alg, 1),
            p1: Module::projective(&alg, 0),
            p2: Module::projective(&alg, 1),
            alg,
        }
    }

    fn top_projection(m: &Pa2) -> Morphism {
        let hs = hom_basis(&m.p2, &m.s2);
        assert_eq!(hs.len(), 1);
        hs[0].clone()
    }

    #[test]
    fn hom_dimensions() {
        let m = pa2();
        assert!(hom_basis(&m.p1, &Module::zero(&m.alg)).is_empty());
        assert_eq!(hom_dim(&m.p1, &m.p2), 1);
        assert_eq!(hom_dim(&m.p1, &m.p1), 1);
        for x in [&m.s1, &m.s2, &m.p1, &m.p2] {
            assert_eq!(hom_dim(&m.p1, x), x.dim_at(0));
            assert_eq!(hom_dim(&m.p2, x), x.dim_at(1));
        }
    }

    #[test]
    fn kernel_and_cokernel() {
        let m = pa2();
        let (k, _) = kernel(&Morphism::identity(&m.p2));
        assert!(k.is_zero());
        let top = top_projection(&m);
        let (k, inc) = kernel(&top);
        assert_eq!(k, m.s1);
        assert!(is_mono(&inc) && !is_epi(&inc));
        assert!(is_epi(&top) && !is_mono(&top));
        let (c, proj) = cokernel(&inc);
        assert_eq!(c.dims(), m.s2.dims());
        assert!(is_epi(&proj));
    }

    #[test]
    fn sums_and_squares() {
        let m = pa2();
        let ds = direct_sum(&m.alg, &[m.s1.clone(), m.s2.clone()]);
        assert_eq!(ds.module.dims(), &[1, 1]);
        assert!(ds.module.action().iter().all(Matrix::is_zero));
        let total = ds
            .injections
            .iter()
            .zip(&ds.projections)
            .fold(Morphism::zero(&ds.module, &ds.module), |acc, (i, p)| acc.add(&i.after(p)));
        assert_eq!(total, Morphism::identity(&ds.module));
        assert!(direct_sum(&m.alg, &[]).module.is_zero());

        let id = Morphism::identity(&m.p2);
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.module.dims(), m.p2.dims());

        let top = top_projection(&m);
        let zero = Morphism::zero(&Module::zero(&m.alg), &m.s2);
        let pb = pullback(&top, &zero).unwrap();
        assert_eq!(pb.module.dims(), m.s1.dims());
    }

    #[test]
    fn ses_validation() {
        let m = pa2();
        let top = top_projection(&m);
        let (_, inc) = kernel(&top);
        assert!(ShortExactSequence::new(inc.clone(), top.clone()).is_ok());
        assert!(ShortExactSequence::new(Morphism::zero(&m.s1, &m.p2), top).is_err());
    }
}
