//! Projective covers, injective envelopes, syzygies, Ext¹, stable hom spaces
//! and the factors-through-add primitive.

use std::sync::Arc;

use crate::algebra::{
    direct_sum, hom_basis, kernel, cokernel, rows_of, Algebra, DirectSum, Module, Morphism,
    ShortExactSequence, express, column_map, row_map,
};
use crate::error::Result;
use crate::linalg::{Matrix, QuotientSpace, Scalar, Subspace};

pub fn indecomposable_projectives(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.num_vertices()).map(|i| Module::projective(alg, i)).collect()
}

pub fn indecomposable_injectives(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.num_vertices()).map(|j| Module::injective(alg, j)).collect()
}

/// Columns completing `rad_v X` (sum of images of incoming arrows) to `X_v`.
fn top_complement(x: &Module, v: usize) -> Matrix {
    let alg = x.algebra();
    let f = x.field();
    let incoming: Vec<&Matrix> = alg
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.target == v)
        .map(|(k, _)| x.arrow(k))
        .collect();
    let d = x.dim_at(v);
    let rad = Matrix::hstack(f, d, &incoming);
    let pivots = rad.transpose().rref().pivots;
    let free: Vec<Matrix> = (0..d)
        .filter(|c| !pivots.contains(c))
        .map(|c| Matrix::from_fn(f, d, 1, |i, _| if i == c { f.one() } else { f.zero() }))
        .collect();
    let refs: Vec<&Matrix> = free.iter().collect();
    Matrix::hstack(f, d, &refs)
}

/// Dimension of the top of `x` at each vertex.
pub fn top_dims(x: &Module) -> Vec<usize> {
    (0..x.dims().len()).map(|v| top_complement(x, v).cols()).collect()
}

/// Dimension of the socle of `x` at each vertex.
pub fn socle_dims(x: &Module) -> Vec<usize> {
    top_dims(&x.dual())
}

/// A projective cover `P -> X` with `P = ⊕ P_{vertex[k]}`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub sum: DirectSum,
    pub map: Morphism,
    pub vertices: Vec<usize>,
}

impl Cover {
    pub fn module(&self) -> &Module {
        &self.sum.module
    }
}

/// The evaluation map `P_j -> X` sending `e_j` to the column vector `x` at `j`.
pub fn evaluation_from_projective(p: &Module, j: usize, x: &Module, vec: &Matrix) -> Morphism {
    let alg = x.algebra();
    let f = x.field();
    let comps = (0..alg.num_vertices())
        .map(|v| {
            let paths = alg.paths_between(j, v);
            let cols: Vec<Matrix> =
                paths.iter().map(|&k| x.path_matrix(&alg.basis()[k]).mul(vec)).collect();
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(f, x.dim_at(v), &refs)
        })
        .collect();
    Morphism::new(p, x, comps).expect("evaluation from a projective is a module map")
}

/// Minimal projective cover, one summand `P_j` per basis vector of a top complement.
pub fn projective_cover(x: &Module) -> Cover {
    let alg = x.algebra();
    let mut vertices = Vec::new();
    let mut vecs = Vec::new();
    for v in 0..alg.num_vertices() {
        let comp = top_complement(x, v);
        for c in 0..comp.cols() {
            vertices.push(v);
            vecs.push(comp.column(c));
        }
    }
    let parts: Vec<Module> = vertices.iter().map(|&v| Module::projective(alg, v)).collect();
    let sum = direct_sum(alg, &parts);
    let maps: Vec<Morphism> = parts
        .iter()
        .zip(&vertices)
        .zip(&vecs)
        .map(|((p, &v), vec)| evaluation_from_projective(p, v, x, vec))
        .collect();
    let map = row_map(&sum, &maps, x);
    Cover { sum, map, vertices }
}

/// Dual of a morphism `f: X -> Y` over the opposite algebra, as `DY -> DX`,
/// with the given dual modules.
fn dual_morphism(f: &Morphism, dy: &Module, dx: &Module) -> Morphism {
    let comps = f.comps().iter().map(Matrix::transpose).collect();
    Morphism::new_unchecked(dy, dx, comps).expect("shapes are consistent")
}

/// Minimal injective envelope `X -> I`, dual to the projective cover of `DX`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub module: Module,
    pub map: Morphism,
    pub vertices: Vec<usize>,
}

pub fn injective_envelope(x: &Module) -> Envelope {
    let alg = x.algebra();
    let dx = x.dual();
    let cover = projective_cover(&dx);
    let module = cover.module().dual_over(alg);
    let map = dual_morphism(&cover.map, x, &module);
    Envelope { module, map, vertices: cover.vertices }
}

/// `0 -> ΩX -> P -> X -> 0` from the projective cover.
pub fn syzygy(x: &Module) -> ShortExactSequence {
    let cover = projective_cover(x);
    let (_, inc) = kernel(&cover.map);
    ShortExactSequence { i: inc, p: cover.map }
}

/// `0 -> X -> I -> ℧X -> 0` from the injective envelope.
pub fn cosyzygy(x: &Module) -> ShortExactSequence {
    let env = injective_envelope(x);
    let (_, proj) = cokernel(&env.map);
    ShortExactSequence { i: env.map, p: proj }
}

fn rank_of(x: &Module, y: &Module, ms: &[Morphism]) -> usize {
    if ms.is_empty() {
        0
    } else {
        rows_of(x, y, ms).rank()
    }
}

/// `dim Ext¹(X, Y) = dim coker(Hom(P0, Y) -> Hom(ΩX, Y))`.
pub fn ext1_dim(x: &Module, y: &Module) -> usize {
    let ses = syzygy(x);
    let omega = ses.left();
    let restricted: Vec<Morphism> = hom_basis(ses.middle(), y).iter().map(|h| h.after(&ses.i)).collect();
    hom_basis(omega, y).len() - rank_of(omega, y, &restricted)
}

/// `dim Ext¹(X, Y) = dim coker(Hom(X, I0) -> Hom(X, ℧Y))`.
pub fn ext1_dim_via_injectives(x: &Module, y: &Module) -> usize {
    let ses = cosyzygy(y);
    let mho = ses.right();
    let pushed: Vec<Morphism> = hom_basis(x, ses.middle()).iter().map(|h| ses.p.after(h)).collect();
    hom_basis(x, mho).len() - rank_of(x, mho, &pushed)
}

/// The subspace of `Hom(X, Y)` spanned by composites `X -> Z_k -> Y` over a
/// list of modules `Z_k`; it is the set of maps factoring through `add(⊕ Z_k)`.
#[derive(Clone, Debug)]
pub struct AddSubspace {
    pub x: Module,
    pub y: Module,
    pub z: Vec<Module>,
    /// Spanning composites as `(summand, a: X -> Z, b: Z -> Y)`.
    generators: Vec<(usize, Morphism, Morphism)>,
    subspace: Subspace,
}

impl AddSubspace {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn contains(&self, m: &Morphism) -> bool {
        self.subspace.contains(&m.to_row())
    }

    /// Basis morphisms of the subspace.
    pub fn basis(&self) -> Vec<Morphism> {
        self.subspace.basis().iter().map(|r| Morphism::from_row(&self.x, &self.y, r)).collect()
    }

    /// An explicit factorization `m = b ∘ a` through `⊕ Z_{k_i}`, when `m` lies
    /// in the subspace. Returns the middle sum and both maps.
    pub fn factorization(&self, m: &Morphism) -> Option<(DirectSum, Morphism, Morphism)> {
        let comps: Vec<Morphism> = self.generators.iter().map(|(_, a, b)| b.after(a)).collect();
        let coeffs = express(&comps, m)?;
        let alg = self.x.algebra();
        let used: Vec<usize> = (0..coeffs.len()).filter(|&i| !coeffs[i].is_zero()).collect();
        let parts: Vec<Module> = used.iter().map(|&i| self.z[self.generators[i].0].clone()).collect();
        let sum = direct_sum(alg, &parts);
        if used.is_empty() {
            return Some((sum.clone(), Morphism::zero(&self.x, &sum.module), Morphism::zero(&sum.module, &self.y)));
        }
        let left: Vec<Morphism> = used.iter().map(|&i| self.generators[i].1.scale(&coeffs[i])).collect();
        let right: Vec<Morphism> = used.iter().map(|&i| self.generators[i].2.clone()).collect();
        let a = column_map(&sum, &left);
        let b = row_map(&sum, &right, &self.y);
        Some((sum, a, b))
    }
}

pub fn factors_through_add(x: &Module, z: &[Module], y: &Module) -> AddSubspace {
    let f = x.field();
    let mut generators = Vec::new();
    for (k, zk) in z.iter().enumerate() {
        let hb = hom_basis(zk, y);
        if hb.is_empty() {
            continue;
        }
        for a in hom_basis(x, zk) {
            for b in &hb {
                generators.push((k, a.clone(), b.clone()));
            }
        }
    }
    let rows: Vec<Matrix> = generators.iter().map(|(_, a, b)| b.after(a).to_row()).collect();
    let subspace = Subspace::spanned_by(f, Morphism::flat_len(x, y), &rows);
    AddSubspace { x: x.clone(), y: y.clone(), z: z.to_vec(), generators, subspace }
}

/// Whether `X` is a summand of a finite power of `⊕ Z_k`.
pub fn in_add(x: &Module, z: &[Module]) -> bool {
    x.is_zero() || factors_through_add(x, z, x).contains(&Morphism::identity(x))
}

/// Quotient relation used by stable hom spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableKind {
    ModuloInjectives,
    ModuloProjectives,
}

/// `Hom(X, Y)` modulo maps factoring through injectives (or projectives).
#[derive(Clone, Debug)]
pub struct StableHomSpace {
    pub x: Module,
    pub y: Module,
    pub ambient: Vec<Morphism>,
    pub quotient: QuotientSpace,
}

impl StableHomSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn coordinates(&self, m: &Morphism) -> Vec<Scalar> {
        self.quotient.coordinates(&m.to_row()).expect("morphism lies in the ambient hom space")
    }

    pub fn is_zero_class(&self, m: &Morphism) -> bool {
        self.quotient.is_zero_class(&m.to_row())
    }

    pub fn canonical(&self, m: &Morphism) -> Morphism {
        Morphism::from_row(&self.x, &self.y, &self.quotient.canonical(&m.to_row()))
    }

    /// Canonical coset representatives forming a basis of the quotient.
    pub fn representatives(&self) -> Vec<Morphism> {
        self.quotient
            .representatives()
            .iter()
            .map(|r| Morphism::from_row(&self.x, &self.y, r))
            .collect()
    }
}

/// The quotient by maps factoring through injectives (resp. projectives). A
/// map factors through an injective iff it factors through the envelope of
/// its source, and through a projective iff through the cover of its target;
/// the subspace equals `factors_through_add` over all indecomposable injectives
/// (resp. projectives).
pub fn stable_hom(x: &Module, y: &Module, kind: StableKind) -> StableHomSpace {
    let sub = match kind {
        StableKind::ModuloInjectives => injective_factoring(x, y, &injective_envelope(x)),
        StableKind::ModuloProjectives => projective_factoring(x, y, &projective_cover(y)),
    };
    stable_hom_with(x, y, sub)
}

/// Maps `x -> y` of the form `g ∘ ι_x` with `ι_x` the given envelope.
pub fn injective_factoring(x: &Module, y: &Module, env: &Envelope) -> Subspace {
    let rows: Vec<Matrix> = hom_basis(&env.module, y).iter().map(|g| g.after(&env.map).to_row()).collect();
    Subspace::spanned_by(x.field(), Morphism::flat_len(x, y), &rows)
}

/// Maps `x -> y` of the form `π_y ∘ g` with `π_y` the given cover.
pub fn projective_factoring(x: &Module, y: &Module, cover: &Cover) -> Subspace {
    let rows: Vec<Matrix> =
        hom_basis(x, cover.module()).iter().map(|g| cover.map.after(g).to_row()).collect();
    Subspace::spanned_by(x.field(), Morphism::flat_len(x, y), &rows)
}

pub fn stable_hom_with(x: &Module, y: &Module, sub: Subspace) -> StableHomSpace {
    let ambient = hom_basis(x, y);
    let rows: Vec<Matrix> = ambient.iter().map(Morphism::to_row).collect();
    StableHomSpace { x: x.clone(), y: y.clone(), ambient, quotient: QuotientSpace::new(&rows, sub) }
}

/// `Hom(X, Y)` modulo maps factoring through `add(⊕ Z_k)`.
pub fn stable_hom_through(x: &Module, y: &Module, z: &[Module]) -> StableHomSpace {
    stable_hom_with(x, y, factors_through_add(x, z, y).subspace)
}

/// Every indecomposable projective is injective and conversely.
pub fn is_self_injective(alg: &Arc<Algebra>) -> bool {
    let ps = indecomposable_projectives(alg);
    let is = indecomposable_injectives(alg);
    ps.iter().all(|p| in_add(p, &is)) && is.iter().all(|i| in_add(i, &ps))
}

/// A section `s` of the deflation (`p ∘ s = id`), when the sequence splits.
pub fn ses_split(ses: &ShortExactSequence) -> Option<Morphism> {
    section(&ses.p)
}

/// Some `s` with `f ∘ s = id_Y` for `f: X -> Y`.
pub fn section(f: &Morphism) -> Option<Morphism> {
    let (x, y) = (f.source(), f.target());
    let basis = hom_basis(y, x);
    let composites: Vec<Morphism> = basis.iter().map(|s| f.after(s)).collect();
    let coeffs = express(&composites, &Morphism::identity(y))?;
    Some(Morphism::combination(y, x, &basis, &coeffs))
}

/// Some `r` with `r ∘ f = id_X` for `f: X -> Y`.
pub fn retraction(f: &Morphism) -> Option<Morphism> {
    let (x, y) = (f.source(), f.target());
    let basis = hom_basis(y, x);
    let composites: Vec<Morphism> = basis.iter().map(|r| r.after(f)).collect();
    let coeffs = express(&composites, &Morphism::identity(x))?;
    Some(Morphism::combination(y, x, &basis, &coeffs))
}

/// Some `h: A -> X` with `f ∘ h = g`, for `f: X -> Y` and `g: A -> Y`.
pub fn lift_through(f: &Morphism, g: &Morphism) -> Option<Morphism> {
    let (a, x) = (g.source(), f.source());
    let basis = hom_basis(a, x);
    let composites: Vec<Morphism> = basis.iter().map(|h| f.after(h)).collect();
    let coeffs = express(&composites, g)?;
    Some(Morphism::combination(a, x, &basis, &coeffs))
}

/// Some `h: Y -> B` with `h ∘ f = g`, for `f: X -> Y` and `g: X -> B`.
pub fn extend_along(f: &Morphism, g: &Morphism) -> Option<Morphism> {
    let (y, b) = (f.target(), g.target());
    let basis = hom_basis(y, b);
    let composites: Vec<Morphism> = basis.iter().map(|h| h.after(f)).collect();
    let coeffs = express(&composites, g)?;
    Some(Morphism::combination(y, b, &basis, &coeffs))
}

/// Dimension of the image of `Hom(W, X) -> Hom(W, Y)`, `h ↦ f ∘ h`.
pub fn postcomposition_rank(w: &Module, f: &Morphism) -> usize {
    let imgs: Vec<Morphism> = hom_basis(w, f.source()).iter().map(|h| f.after(h)).collect();
    rank_of(w, f.target(), &imgs)
}

/// Checks the SES shape of a syzygy or cosyzygy witness.
pub fn validate_ses(ses: &ShortExactSequence) -> Result<()> {
    ShortExactSequence::new(ses.i.clone(), ses.p.clone()).map(|_| ())
}
