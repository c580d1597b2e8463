//! The homotopy category: hom spaces between cofibrant replacements modulo
//! `add(U)`, right fractions, the functor `G` into modules over the stable
//! endomorphism algebra, and a two-sided check of `Ho E ≃ mod Ē`.

use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{hom_basis, Module, Morphism};
use crate::error::{Error, Result};
use crate::homological::{lift_through, StableHomSpace};
use crate::linalg::{Field, Matrix, QuotientSpace, Scalar};
use crate::rigid::{induced_map, Replacement, RigidContext};

/// Stable `End(M_gen)` modulo injectives, with `e_i e_j = Σ c_ij^k e_k` where
/// the product is composition `e_i ∘ e_j`.
#[derive(Clone, Debug)]
pub struct StableEndoAlgebra {
    pub space: StableHomSpace,
    pub basis: Vec<Morphism>,
    /// `constants[i][j]` holds the coordinates of `e_i ∘ e_j`.
    pub constants: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl StableEndoAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.space.x.field()
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let c = ai.mul(bj);
                for (k, ck) in self.constants[i][j].iter().enumerate() {
                    out[k] = out[k].add(&c.mul(ck));
                }
            }
        }
        out
    }

    fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let f = self.field();
        (0..self.dim()).map(|k| if k == i { f.one() } else { f.zero() }).collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (ei, ej, ek) = (self.unit_vector(i), self.unit_vector(j), self.unit_vector(k));
                    self.multiply(&self.multiply(&ei, &ej), &ek) == self.multiply(&ei, &self.multiply(&ej, &ek))
                })
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.unit_vector(i);
            self.multiply(&self.unit, &e) == e && self.multiply(&e, &self.unit) == e
        })
    }
}

pub fn stable_endo(ctx: &RigidContext) -> Result<StableEndoAlgebra> {
    let space = ctx.g_space(ctx.generator());
    let basis = space.representatives();
    let constants = basis
        .iter()
        .map(|a| basis.iter().map(|b| space.coordinates(&a.after(b))).collect())
        .collect();
    let unit = space.coordinates(&Morphism::identity(ctx.generator()));
    let e = StableEndoAlgebra { space, basis, constants, unit };
    if !e.is_associative() || !e.is_unital() {
        return Err(Error::Internal("stable endomorphism algebra is not unital associative".into()));
    }
    Ok(e)
}

/// A right `Ē`-module: `action[i]` is the matrix of `h ↦ h ∘ e_i`.
#[derive(Clone, Debug)]
pub struct EbarModule {
    pub space: StableHomSpace,
    pub action: Vec<Matrix>,
}

impl EbarModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The action matches the structure constants and the unit acts trivially.
    pub fn respects(&self, e: &StableEndoAlgebra) -> bool {
        let f = e.field();
        let d = self.dim();
        let combo = |coeffs: &[Scalar]| {
            coeffs.iter().zip(&self.action).fold(Matrix::zeros(f, d, d), |acc, (c, a)| acc.add(&a.scale(c)))
        };
        combo(&e.unit) == Matrix::identity(f, d)
            && (0..e.dim()).all(|i| {
                (0..e.dim()).all(|j| self.action[j].mul(&self.action[i]) == combo(&e.constants[i][j]))
            })
    }
}

pub fn g_object(ctx: &RigidContext, e: &StableEndoAlgebra, x: &Module) -> EbarModule {
    let space = ctx.g_space(x);
    let action = e
        .basis
        .iter()
        .map(|b| {
            let cols: Vec<Matrix> = space
                .representatives()
                .iter()
                .map(|r| Matrix::column_vector(x.field(), &space.coordinates(&r.after(b))))
                .collect();
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(x.field(), space.dim(), &refs)
        })
        .collect();
    EbarModule { space, action }
}

/// Matrix of `G f` between the carriers of `G X` and `G Y`.
pub fn g_morphism(gx: &EbarModule, gy: &EbarModule, f: &Morphism) -> Matrix {
    induced_map(&gx.space, &gy.space, f)
}

/// Basis of `Hom_Ē(GX, GY)` as `dim GY × dim GX` matrices `T` with
/// `T A_i = B_i T` for every basis element.
pub fn ebar_hom_basis(gx: &EbarModule, gy: &EbarModule, field: Field) -> Vec<Matrix> {
    let (dx, dy) = (gx.dim(), gy.dim());
    if dx == 0 || dy == 0 {
        return Vec::new();
    }
    let ix = Matrix::identity(field, dx);
    let iy = Matrix::identity(field, dy);
    let blocks: Vec<Matrix> = gx
        .action
        .iter()
        .zip(&gy.action)
        .map(|(a, b)| iy.kron(&a.transpose()).sub(&b.kron(&ix)))
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(field, dx * dy, &refs);
    system.kernel_basis().into_iter().map(|v| v.reshape(dy, dx)).collect()
}

/// A morphism of `Ho E` represented between the fixed cofibrant replacements,
/// compared by its canonical coset representative.
#[derive(Clone, Debug)]
pub struct HoClass {
    pub x: Module,
    pub y: Module,
    pub rep: Morphism,
    pub canonical: Matrix,
}

impl PartialEq for HoClass {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && self.canonical == other.canonical
    }
}

/// `Ho E(X, Y) = E(QX, QY) / add(U)`.
#[derive(Clone, Debug)]
pub struct HoHomSpace {
    pub x: Module,
    pub y: Module,
    pub qx: Arc<Replacement>,
    pub qy: Arc<Replacement>,
    pub quotient: QuotientSpace,
}

impl HoHomSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// The class of a morphism `QX -> QY`.
    pub fn class_of_rep(&self, m: &Morphism) -> HoClass {
        let canonical = self.quotient.canonical(&m.to_row());
        let rep = Morphism::from_row(&self.qx.a, &self.qy.a, &canonical);
        HoClass { x: self.x.clone(), y: self.y.clone(), rep, canonical }
    }

    pub fn basis(&self) -> Vec<HoClass> {
        self.quotient
            .representatives()
            .iter()
            .map(|r| self.class_of_rep(&Morphism::from_row(&self.qx.a, &self.qy.a, r)))
            .collect()
    }

    pub fn coordinates(&self, c: &HoClass) -> Vec<Scalar> {
        self.quotient.coordinates(&c.canonical).expect("class lies in the hom space")
    }

    pub fn zero(&self) -> HoClass {
        self.class_of_rep(&Morphism::zero(&self.qx.a, &self.qy.a))
    }

    /// `Ho f`: the class of a lift `r` with `φ_Y ∘ r = f ∘ φ_X`.
    pub fn class_of(&self, f: &Morphism) -> Result<HoClass> {
        if f.source() != &self.x || f.target() != &self.y {
            return Err(Error::Mismatch("morphism does not match the hom space".into()));
        }
        let r = lift_through(&self.qy.phi, &f.after(&self.qx.phi))
            .ok_or_else(|| Error::Internal("no lift between cofibrant replacements".into()))?;
        Ok(self.class_of_rep(&r))
    }
}

pub fn ho_hom(ctx: &RigidContext, x: &Module, y: &Module) -> Result<HoHomSpace> {
    let qx = ctx.cofibrant_replacement(x)?;
    let qy = ctx.cofibrant_replacement(y)?;
    let ambient: Vec<Matrix> = hom_basis(&qx.a, &qy.a).iter().map(Morphism::to_row).collect();
    let sub = ctx.homotopy_subspace(&qx.a, &qy.a);
    Ok(HoHomSpace { x: x.clone(), y: y.clone(), qx, qy, quotient: QuotientSpace::new(&ambient, sub) })
}

/// `a ∘ b` for `b: X -> Y` and `a: Y -> Z`.
pub fn ho_compose(ctx: &RigidContext, a: &HoClass, b: &HoClass) -> Result<HoClass> {
    if b.y != a.x {
        return Err(Error::Mismatch("Ho classes are not composable".into()));
    }
    Ok(ho_hom(ctx, &b.x, &a.y)?.class_of_rep(&a.rep.after(&b.rep)))
}

pub fn ho_identity(ctx: &RigidContext, x: &Module) -> Result<HoClass> {
    ho_hom(ctx, x, x)?.class_of(&Morphism::identity(x))
}

/// The inverse in `Ho E` of the class of a weak equivalence `s: A -> X`.
pub fn ho_inverse(ctx: &RigidContext, s: &Morphism) -> Result<HoClass> {
    if !ctx.is_weak_equivalence(s) {
        return Err(Error::NotWeakEquivalence);
    }
    let (a, x) = (s.source(), s.target());
    let hs = ho_hom(ctx, a, x)?.class_of(s)?;
    let back = ho_hom(ctx, x, a)?;
    let endo = ho_hom(ctx, x, x)?;
    let field = s.field();
    let reps = back.basis();
    let cols: Vec<Matrix> = reps
        .iter()
        .map(|t| Matrix::column_vector(field, &endo.coordinates(&endo.class_of_rep(&hs.rep.after(&t.rep)))))
        .collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let system = Matrix::hstack(field, endo.dim(), &refs);
    let id = endo.class_of(&Morphism::identity(x))?;
    let target = Matrix::column_vector(field, &endo.coordinates(&id));
    let coeffs = system
        .solve_right(&target)
        .ok_or_else(|| Error::Internal("weak equivalence is not invertible in Ho".into()))?;
    let t = reps.iter().enumerate().fold(Morphism::zero(&back.qx.a, &back.qy.a), |acc, (i, c)| {
        acc.add(&c.rep.scale(&coeffs.get(i, 0)))
    });
    let inv = back.class_of_rep(&t);
    let left = ho_hom(ctx, a, a)?;
    if left.class_of_rep(&inv.rep.after(&hs.rep)) != left.class_of(&Morphism::identity(a))? {
        return Err(Error::Internal("one-sided inverse in Ho".into()));
    }
    Ok(inv)
}

/// `Ho f ∘ (Ho s)⁻¹` for the span `X <-s- A' -f-> Y`.
pub fn fraction_to_ho(ctx: &RigidContext, f: &Morphism, s: &Morphism) -> Result<HoClass> {
    if f.source() != s.source() {
        return Err(Error::Mismatch("a fraction needs a common source".into()));
    }
    let inv = ho_inverse(ctx, s)?;
    let hf = ho_hom(ctx, f.source(), f.target())?.class_of(f)?;
    ho_compose(ctx, &hf, &inv)
}

pub fn fractions_equal(ctx: &RigidContext, fs: (&Morphism, &Morphism), gt: (&Morphism, &Morphism)) -> Result<bool> {
    Ok(fraction_to_ho(ctx, fs.0, fs.1)? == fraction_to_ho(ctx, gt.0, gt.1)?)
}

/// Outcome of comparing `Ho E(X, Y)` with `Hom_Ē(GX, GY)` for one pair.
#[derive(Clone, Debug, Serialize)]
pub struct DlReport {
    pub pair: (String, String),
    pub dim_ho: usize,
    pub dim_mod: usize,
    pub bijective: bool,
    pub compatible: bool,
    pub pass: bool,
    pub checksum: String,
}

fn checksum(ms: &[Matrix]) -> String {
    let mut h = Sha256::new();
    for m in ms {
        h.update(m.canonical_string().as_bytes());
        h.update(b";");
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// The functor `Ho E(X, Y) -> Hom_Ē(GX, GY)` on classes, through the
/// isomorphisms `G φ_X` and `G φ_Y`.
struct GOnHo {
    gx: EbarModule,
    gy: EbarModule,
    gqx: EbarModule,
    gqy: EbarModule,
    phi_x_inv: Matrix,
    phi_y: Matrix,
}

impl GOnHo {
    fn new(ctx: &RigidContext, e: &StableEndoAlgebra, ho: &HoHomSpace) -> Result<Self> {
        let gx = g_object(ctx, e, &ho.x);
        let gy = g_object(ctx, e, &ho.y);
        let gqx = g_object(ctx, e, &ho.qx.a);
        let gqy = g_object(ctx, e, &ho.qy.a);
        let phi_x_inv = g_morphism(&gqx, &gx, &ho.qx.phi)
            .inverse()
            .ok_or_else(|| Error::Internal("G of a replacement is not invertible".into()))?;
        let phi_y = g_morphism(&gqy, &gy, &ho.qy.phi);
        Ok(GOnHo { gx, gy, gqx, gqy, phi_x_inv, phi_y })
    }

    fn image(&self, c: &HoClass) -> Matrix {
        self.phi_y.mul(&g_morphism(&self.gqx, &self.gqy, &c.rep)).mul(&self.phi_x_inv)
    }
}

fn is_intertwiner(t: &Matrix, gx: &EbarModule, gy: &EbarModule) -> bool {
    gx.action.iter().zip(&gy.action).all(|(a, b)| t.mul(a) == b.mul(t))
}

pub fn dl_verify(ctx: &RigidContext, e: &StableEndoAlgebra, x: (&str, &Module), y: (&str, &Module)) -> Result<DlReport> {
    let field = x.1.field();
    let ho = ho_hom(ctx, x.1, y.1)?;
    let g = GOnHo::new(ctx, e, &ho)?;
    let mod_basis = ebar_hom_basis(&g.gx, &g.gy, field);
    let images: Vec<Matrix> = ho.basis().iter().map(|c| g.image(c)).collect();
    let rows: Vec<Matrix> = images.iter().map(|m| m.reshape(1, m.rows() * m.cols())).collect();
    let width = g.gx.dim() * g.gy.dim();
    let rank = if rows.is_empty() || width == 0 {
        0
    } else {
        let refs: Vec<&Matrix> = rows.iter().collect();
        Matrix::vstack(field, width, &refs).rank()
    };
    let bijective = images.iter().all(|m| is_intertwiner(m, &g.gx, &g.gy))
        && rank == ho.dim()
        && rank == mod_basis.len();

    // G(a ∘ b) = G(a) G(b) with b from End(X) and a from End(Y).
    let ex = ho_hom(ctx, x.1, x.1)?;
    let ey = ho_hom(ctx, y.1, y.1)?;
    let gex = GOnHo::new(ctx, e, &ex)?;
    let gey = GOnHo::new(ctx, e, &ey)?;
    let mut compatible = true;
    for c in ho.basis() {
        for b in ex.basis() {
            let ab = ho_compose(ctx, &c, &b)?;
            compatible &= g.image(&ab) == g.image(&c).mul(&gex.image(&b));
        }
        for a in ey.basis() {
            let ac = ho_compose(ctx, &a, &c)?;
            compatible &= g.image(&ac) == gey.image(&a).mul(&g.image(&c));
        }
    }
    let dim_ho = ho.dim();
    let dim_mod = mod_basis.len();
    Ok(DlReport {
        pair: (x.0.to_string(), y.0.to_string()),
        dim_ho,
        dim_mod,
        bijective,
        compatible,
        pass: dim_ho == dim_mod && bijective && compatible,
        checksum: checksum(&images),
    })
}
