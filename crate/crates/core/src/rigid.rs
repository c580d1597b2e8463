//! Rigid contexts `M = add(M_gen)` and the homotopical structure they induce:
//! weak equivalences, fibrations, cofibrant replacement, both factorizations,
//! path objects and the homotopy relation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{
    cokernel, column_map, direct_sum, factor_through_epi, hom_basis, hom_dim, is_epi, is_mono,
    kernel, pushout, row_map, Algebra, DirectSum, Module, Morphism, ShortExactSequence,
};
use crate::error::{Error, Result};
use crate::homological::{
    cosyzygy, ext1_dim, factors_through_add, in_add, indecomposable_injectives,
    indecomposable_projectives, injective_envelope, injective_factoring, is_self_injective,
    lift_through, postcomposition_rank, projective_cover, section, stable_hom_with, Envelope,
    StableHomSpace,
};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Frobenius,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Frobenius => "frobenius",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "frobenius" => Ok(Mode::Frobenius),
            other => Err(Error::Input(format!("unknown mode `{other}` (expected exact or frobenius)"))),
        }
    }
}

/// How approximations are assembled from hom bases.
///
/// `Full` uses `G^d` for the whole generator `G`, `PerSummand` one copy of a
/// summand per basis map from it, and `Trimmed` drops basis maps that already
/// factor through the others.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ApproxStrategy {
    Full,
    PerSummand,
    #[default]
    Trimmed,
}

/// A right approximation `⊕ parts -> X` by evaluation.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub sum: DirectSum,
    pub map: Morphism,
    /// Index of each source summand in the part list it was drawn from.
    pub parts: Vec<usize>,
}

impl Approximation {
    pub fn source(&self) -> &Module {
        &self.sum.module
    }
}

/// A list of nonzero modules with their pairwise hom bases.
#[derive(Clone, Debug)]
struct Parts {
    modules: Vec<Module>,
    /// `homs[k][j] = hom_basis(modules[k], modules[j])`.
    homs: Vec<Vec<Vec<Morphism>>>,
}

impl Parts {
    fn new(modules: Vec<Module>) -> Self {
        let homs = modules
            .iter()
            .map(|a| modules.iter().map(|b| hom_basis(a, b)).collect())
            .collect();
        Parts { modules, homs }
    }

    fn approximate(&self, alg: &Arc<Algebra>, x: &Module, trim: bool) -> Approximation {
        let mut cands: Vec<(usize, Morphism)> = Vec::new();
        for (k, n) in self.modules.iter().enumerate() {
            cands.extend(hom_basis(n, x).into_iter().map(|h| (k, h)));
        }
        let kept = if trim { self.trim(x, cands) } else { cands };
        let mods: Vec<Module> = kept.iter().map(|(k, _)| self.modules[*k].clone()).collect();
        let sum = direct_sum(alg, &mods);
        let maps: Vec<Morphism> = kept.iter().map(|(_, h)| h.clone()).collect();
        let map = row_map(&sum, &maps, x);
        Approximation { sum, map, parts: kept.iter().map(|(k, _)| *k).collect() }
    }

    /// Whether `h: N_k -> X` lies in the span of `g ∘ e` for kept `g: N_j -> X`
    /// (other than `skip`) and `e: N_k -> N_j`.
    fn generated(&self, x: &Module, k: usize, h: &Morphism, kept: &[(usize, Morphism)], skip: Option<usize>) -> bool {
        let rows: Vec<Matrix> = kept
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .flat_map(|(_, (j, g))| self.homs[k][*j].iter().map(move |e| g.after(e).to_row()))
            .collect();
        let n = Morphism::flat_len(&self.modules[k], x);
        Subspace::spanned_by(x.field(), n, &rows).contains(&h.to_row())
    }

    // Greedy keep, then drop anything generated by the rest. Both passes keep
    // the span of composites equal to every Hom(N_k, X).
    fn trim(&self, x: &Module, cands: Vec<(usize, Morphism)>) -> Vec<(usize, Morphism)> {
        let mut kept: Vec<(usize, Morphism)> = Vec::new();
        for (k, h) in cands {
            if !self.generated(x, k, &h, &kept, None) {
                kept.push((k, h));
            }
        }
        let mut i = 0;
        while i < kept.len() {
            let (k, h) = kept[i].clone();
            if self.generated(x, k, &h, &kept, Some(i)) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        kept
    }
}

/// A replacement `φ: A -> X` with `A ∈ pr M`, a trivial fibration.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub x: Module,
    pub a: Module,
    pub phi: Morphism,
    /// `0 -> M1 -> I_{M1} ⊕ M0 -> A -> 0`.
    pub witness: ShortExactSequence,
    pub m0: Approximation,
    pub m1: Approximation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    WeqThenFib,
    CofThenTrivfib,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub f: Morphism,
    pub left: Morphism,
    pub right: Morphism,
    pub flavor: Flavor,
}

impl Factorization {
    pub fn mid(&self) -> &Module {
        self.left.target()
    }
}

/// `w: Y -> Y'` and `q: Y' -> Y ⊕ Y` with `q ∘ w` the diagonal.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub w: Morphism,
    pub q: Morphism,
    pub diagonal: Morphism,
}

pub struct RigidContext {
    alg: Arc<Algebra>,
    mode: Mode,
    strategy: ApproxStrategy,
    generator: Module,
    m: Parts,
    m_envelopes: Vec<Envelope>,
    generator_envelope: Envelope,
    mho_generator: ShortExactSequence,
    u: Parts,
    u_envelopes: Vec<Envelope>,
    injectives: Vec<Module>,
    projectives: Vec<Module>,
    whole: OnceLock<(Parts, Parts)>,
    replacements: Mutex<HashMap<String, Arc<Replacement>>>,
}

impl fmt::Debug for RigidContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RigidContext")
            .field("mode", &self.mode)
            .field("strategy", &self.strategy)
            .field("generator_dims", &self.generator.dims())
            .field("summands", &self.m.modules.len())
            .field("u_parts", &self.u.modules.len())
            .finish()
    }
}

fn dedup(mods: impl IntoIterator<Item = Module>) -> Vec<Module> {
    let mut seen = HashSet::new();
    mods.into_iter()
        .filter(|m| !m.is_zero() && seen.insert(m.canonical_string()))
        .collect()
}

/// Builds `M = add(⊕ summands)` after checking rigidity, that `M` holds every
/// injective (and every projective in exact mode), and self-injectivity in
/// Frobenius mode. All violations are reported together.
pub fn build_context(alg: &Arc<Algebra>, summands: &[Module], mode: Mode) -> Result<RigidContext> {
    for s in summands {
        if !Algebra::same(s.algebra(), alg) {
            return Err(Error::Mismatch("generator summand over a different algebra".into()));
        }
        s.validate()?;
    }
    let parts = dedup(summands.iter().cloned());
    let generator = direct_sum(alg, summands).module;
    let mut problems = Vec::new();

    let ext: usize = parts.iter().flat_map(|a| parts.iter().map(move |b| ext1_dim(a, b))).sum();
    if ext != 0 {
        problems.push(format!("M_gen is not rigid: dim Ext1(M_gen, M_gen) = {ext}"));
    }
    let injectives = indecomposable_injectives(alg);
    let projectives = indecomposable_projectives(alg);
    let names = alg.vertices();
    for (j, inj) in injectives.iter().enumerate() {
        if !in_add(inj, &parts) {
            problems.push(format!("injective I_{} is not in add(M_gen)", names[j]));
        }
    }
    match mode {
        Mode::Exact => {
            for (i, p) in projectives.iter().enumerate() {
                if !in_add(p, &parts) {
                    problems.push(format!("projective P_{} is not in add(M_gen)", names[i]));
                }
            }
        }
        Mode::Frobenius => {
            if !is_self_injective(alg) {
                problems.push("frobenius mode needs a self-injective algebra".into());
            }
        }
    }
    if !problems.is_empty() {
        return Err(Error::Hypotheses(problems));
    }

    let m_envelopes = parts.iter().map(injective_envelope).collect();
    let generator_envelope = injective_envelope(&generator);
    let mho_generator = cosyzygy(&generator);
    let mhos = parts.iter().map(|n| cosyzygy(n).right().clone());
    let u_mods = dedup(mhos.chain(injectives.iter().cloned()));
    let u_envelopes = u_mods.iter().map(injective_envelope).collect();
    Ok(RigidContext {
        alg: alg.clone(),
        mode,
        strategy: ApproxStrategy::default(),
        generator,
        m: Parts::new(parts),
        m_envelopes,
        generator_envelope,
        mho_generator,
        u: Parts::new(u_mods),
        u_envelopes,
        injectives,
        projectives,
        whole: OnceLock::new(),
        replacements: Mutex::new(HashMap::new()),
    })
}

/// Matrix of `h ↦ f ∘ h` from `sx` to `sy` in their quotient bases
/// (column `j` holds the image of the `j`-th representative of `sx`).
pub fn induced_map(sx: &StableHomSpace, sy: &StableHomSpace, f: &Morphism) -> Matrix {
    let field = f.field();
    let cols: Vec<Matrix> = sx
        .representatives()
        .iter()
        .map(|r| Matrix::column_vector(field, &sy.coordinates(&f.after(r))))
        .collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    Matrix::hstack(field, sy.dim(), &refs)
}

impl RigidContext {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn strategy(&self) -> ApproxStrategy {
        self.strategy
    }

    /// The same context with another approximation strategy (and a fresh memo).
    pub fn with_strategy(mut self, strategy: ApproxStrategy) -> Self {
        self.strategy = strategy;
        self.replacements = Mutex::new(HashMap::new());
        self
    }

    pub fn generator(&self) -> &Module {
        &self.generator
    }

    /// Distinct nonzero summands of the generator.
    pub fn summands(&self) -> &[Module] {
        &self.m.modules
    }

    /// `0 -> M_gen -> I -> ℧M_gen -> 0` with a minimal envelope.
    pub fn mho_generator(&self) -> &ShortExactSequence {
        &self.mho_generator
    }

    /// Indecomposable parts of the generator `U` of `℧M`: the nonzero `℧N` for
    /// summands `N`, then the indecomposable injectives, without repeats.
    pub fn u_parts(&self) -> &[Module] {
        &self.u.modules
    }

    pub fn u_generator(&self) -> Module {
        direct_sum(&self.alg, &self.u.modules).module
    }

    pub fn injectives(&self) -> &[Module] {
        &self.injectives
    }

    pub fn projectives(&self) -> &[Module] {
        &self.projectives
    }

    fn whole(&self) -> &(Parts, Parts) {
        self.whole.get_or_init(|| {
            let u = self.u_generator();
            let u = if u.is_zero() { vec![] } else { vec![u] };
            let g = if self.generator.is_zero() { vec![] } else { vec![self.generator.clone()] };
            (Parts::new(g), Parts::new(u))
        })
    }

    fn approximate(&self, parts: &Parts, whole: &Parts, x: &Module) -> Approximation {
        match self.strategy {
            ApproxStrategy::Full => whole.approximate(&self.alg, x, false),
            ApproxStrategy::PerSummand => parts.approximate(&self.alg, x, false),
            ApproxStrategy::Trimmed => parts.approximate(&self.alg, x, true),
        }
    }

    /// Right `add(M_gen)`-approximation `M0 -> X`.
    pub fn right_m_approximation(&self, x: &Module) -> Approximation {
        self.approximate(&self.m, &self.whole().0, x)
    }

    /// Right `add(U)`-approximation `U' -> X`.
    pub fn mho_approximation(&self, x: &Module) -> Approximation {
        self.approximate(&self.u, &self.whole().1, x)
    }

    /// Stable `Hom(N_k, X)` modulo injectives for the `k`-th summand.
    pub fn stable_from_summand(&self, k: usize, x: &Module) -> StableHomSpace {
        let n = &self.m.modules[k];
        stable_hom_with(n, x, injective_factoring(n, x, &self.m_envelopes[k]))
    }

    /// `G X`: stable `Hom(M_gen, X)` modulo injectives.
    pub fn g_space(&self, x: &Module) -> StableHomSpace {
        let g = &self.generator;
        stable_hom_with(g, x, injective_factoring(g, x, &self.generator_envelope))
    }

    pub fn in_add_m(&self, x: &Module) -> bool {
        in_add(x, &self.m.modules)
    }

    pub fn in_mho_m(&self, x: &Module) -> bool {
        in_add(x, &self.u.modules)
    }

    /// `Gf` is invertible, tested summand by summand of the generator.
    pub fn is_weak_equivalence(&self, f: &Morphism) -> bool {
        (0..self.m.modules.len()).all(|k| {
            let sx = self.stable_from_summand(k, f.source());
            let sy = self.stable_from_summand(k, f.target());
            sx.dim() == sy.dim() && (sx.dim() == 0 || induced_map(&sx, &sy, f).rank() == sx.dim())
        })
    }

    /// Right lifting against `0 -> W` for every part `W` of `U`.
    pub fn is_fibration(&self, f: &Morphism) -> bool {
        self.u
            .modules
            .iter()
            .all(|w| postcomposition_rank(w, f) == hom_dim(w, f.target()))
    }

    pub fn is_trivial_fibration(&self, f: &Morphism) -> bool {
        self.is_fibration(f) && self.is_weak_equivalence(f)
    }

    fn require_frobenius(&self) -> Result<()> {
        match self.mode {
            Mode::Frobenius => Ok(()),
            Mode::Exact => Err(Error::ModeMismatch { expected: "frobenius" }),
        }
    }

    /// Fibrations as epis whose cone `Y -> Z` (pushout along `X -> I_X`) kills
    /// maps from `U` modulo injectives.
    pub fn fibration_via_cone(&self, f: &Morphism) -> Result<bool> {
        self.require_frobenius()?;
        if !is_epi(f) {
            return Ok(false);
        }
        let env = injective_envelope(f.source());
        let g = pushout(f, &env.map)?.from_b;
        let z = g.target();
        Ok(self.u.modules.iter().zip(&self.u_envelopes).all(|(w, ew)| {
            let sub = injective_factoring(w, z, ew);
            hom_basis(w, f.target()).iter().all(|b| sub.contains(&g.after(b).to_row()))
        }))
    }

    /// The two cone conditions characterizing weak equivalences, tested
    /// against maps out of the generator summands.
    pub fn weq_via_cone(&self, f: &Morphism) -> Result<bool> {
        self.require_frobenius()?;
        let (x, y) = (f.source(), f.target());
        let env = injective_envelope(x);
        let g = pushout(f, &env.map)?.from_b;
        let z = g.target();
        let cond1 = self.m.modules.iter().zip(&self.m_envelopes).all(|(n, en)| {
            let sub = injective_factoring(n, z, en);
            hom_basis(n, y).iter().all(|h| sub.contains(&g.after(h).to_row()))
        });
        if !cond1 {
            return Ok(false);
        }
        let cover = projective_cover(y);
        let sum = direct_sum(&self.alg, &[x.clone(), cover.module().clone()]);
        let out = row_map(&sum, &[f.clone(), cover.map.neg()], y);
        let (k, incl) = kernel(&out);
        Ok(self.m.modules.iter().zip(&self.m_envelopes).all(|(n, en)| {
            let sub = injective_factoring(n, &sum.module, en);
            hom_basis(n, &k).iter().all(|h| sub.contains(&incl.after(h).to_row()))
        }))
    }

    /// Cofibrant replacement: approximate `X` by `M0` with kernel `K0`,
    /// approximate `K0` by `M1`, and push `M1 -> M0` out along `M1 -> I_{M1}`.
    pub fn cofibrant_replacement(&self, x: &Module) -> Result<Arc<Replacement>> {
        let key = x.canonical_string();
        if let Some(r) = self.replacements.lock().expect("memo lock").get(&key) {
            return Ok(r.clone());
        }
        let m0 = self.right_m_approximation(x);
        let (k0, b) = kernel(&m0.map);
        let m1 = self.right_m_approximation(&k0);
        let env = injective_envelope(m1.source());
        let po = pushout(&env.map, &b.after(&m1.map))?;
        let target = row_map(&po.sum, &[Morphism::zero(&env.module, x), m0.map.clone()], x);
        let phi = factor_through_epi(&po.projection, &target)
            .ok_or_else(|| Error::Internal("replacement map does not descend to the pushout".into()))?;
        let witness = ShortExactSequence::new(po.into_sum.clone(), po.projection.clone())?;
        if !self.is_trivial_fibration(&phi) {
            return Err(Error::Internal("replacement map is not a trivial fibration".into()));
        }
        let rep = Arc::new(Replacement { x: x.clone(), a: po.module, phi, witness, m0, m1 });
        self.replacements.lock().expect("memo lock").insert(key, rep.clone());
        Ok(rep)
    }

    /// `X ∈ pr M`, decided by a section of the replacement map.
    pub fn is_cofibrant(&self, x: &Module) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        Ok(section(&self.cofibrant_replacement(x)?.phi).is_some())
    }

    pub fn in_pr_m(&self, x: &Module) -> Result<bool> {
        self.is_cofibrant(x)
    }

    /// Some `β: C -> X` with `f ∘ β = g`, for a trivial fibration `f: X -> Y`
    /// and cofibrant `C`.
    pub fn lift(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if g.target() != f.target() {
            return Err(Error::Mismatch("lift needs a common target".into()));
        }
        if !self.is_trivial_fibration(f) {
            return Err(Error::Precondition("the map to lift along is not a trivial fibration".into()));
        }
        let c = g.source();
        if !self.in_add_m(c) && !self.is_cofibrant(c)? {
            return Err(Error::Precondition("the domain of the lifted map is not cofibrant".into()));
        }
        lift_through(f, g).ok_or_else(|| Error::Internal("no lift along a trivial fibration".into()))
    }

    /// `X -> X ⊕ U' -> Y` with `(f, α)` for the `U`-approximation `α`.
    pub fn factorize1(&self, f: &Morphism) -> Result<Factorization> {
        let (x, y) = (f.source(), f.target());
        let alpha = self.mho_approximation(y);
        let sum = direct_sum(&self.alg, &[x.clone(), alpha.source().clone()]);
        let left = sum.injections[0].clone();
        let right = row_map(&sum, &[f.clone(), alpha.map.clone()], y);
        if !self.is_fibration(&right) || !self.is_weak_equivalence(&left) {
            return Err(Error::Internal("first factorization fails its class checks".into()));
        }
        Ok(Factorization { f: f.clone(), left, right, flavor: Flavor::WeqThenFib })
    }

    /// `X -> A ⊕ E -> Y` for cofibrant `X`, with `a: A -> Y` the replacement,
    /// `f = a ∘ r`, and `ε: X -> E` the pushout of a presentation
    /// `0 -> M1 -> M0 -> X -> 0` along the envelope of `M0`.
    pub fn factorize2(&self, f: &Morphism) -> Result<Factorization> {
        self.require_frobenius()?;
        let (x, y) = (f.source(), f.target());
        if !self.is_cofibrant(x)? {
            return Err(Error::NotCofibrant);
        }
        let rep = self.cofibrant_replacement(y)?;
        let a = &rep.phi;
        let r = lift_through(a, f).ok_or_else(|| Error::Internal("no lift of f along the replacement".into()))?;
        let c = self.right_m_approximation(x);
        let (m1, k) = kernel(&c.map);
        if !self.in_add_m(&m1) {
            return Err(Error::Internal("presentation kernel is not in add(M_gen)".into()));
        }
        let env0 = injective_envelope(c.source());
        let (e, q) = cokernel(&env0.map.after(&k));
        let eps = factor_through_epi(&c.map, &q.after(&env0.map))
            .ok_or_else(|| Error::Internal("ε does not descend to X".into()))?;
        let sum = direct_sum(&self.alg, &[rep.a.clone(), e.clone()]);
        let left = column_map(&sum, &[r, eps]);
        let right = row_map(&sum, &[a.clone(), Morphism::zero(&e, y)], y);
        if &right.after(&left) != f {
            return Err(Error::Internal("second factorization does not recompose".into()));
        }
        if !is_mono(&left) || !self.is_trivial_fibration(&right) {
            return Err(Error::Internal("second factorization fails its class checks".into()));
        }
        if !self.is_cofibrant(&cokernel(&left).0)? {
            return Err(Error::Internal("cokernel of the cofibration is not in pr M".into()));
        }
        Ok(Factorization { f: f.clone(), left, right, flavor: Flavor::CofThenTrivfib })
    }

    pub fn path_object(&self, y: &Module) -> Result<PathObject> {
        let yy = direct_sum(&self.alg, &[y.clone(), y.clone()]);
        let id = Morphism::identity(y);
        let diagonal = column_map(&yy, &[id.clone(), id]);
        let fac = self.factorize1(&diagonal)?;
        Ok(PathObject { w: fac.left, q: fac.right, diagonal })
    }

    /// Maps `X -> Y` factoring through `add(U)`.
    pub fn homotopy_subspace(&self, x: &Module, y: &Module) -> Subspace {
        factors_through_add(x, &self.u.modules, y).subspace().clone()
    }

    /// `f ~ g` iff `f - g` factors through `add(U)`; the domain must be cofibrant.
    pub fn are_homotopic(&self, f: &Morphism, g: &Morphism) -> Result<bool> {
        if f.source() != g.source() || f.target() != g.target() {
            return Err(Error::Mismatch("homotopy compares parallel morphisms".into()));
        }
        if !self.is_cofibrant(f.source())? {
            return Err(Error::NotCofibrant);
        }
        Ok(self.homotopy_subspace(f.source(), f.target()).contains(&f.sub(g).to_row()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_iso;
    use crate::homological::retraction;
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

    fn ctx(m: &Pa2) -> RigidContext {
        build_context(&m.alg, &[m.p1.clone(), m.p2.clone(), m.s1.clone()], Mode::Frobenius).unwrap()
    }

    fn top(m: &Pa2) -> Morphism {
        hom_basis(&m.p2, &m.s2)[0].clone()
    }

    #[test]
    fn accepts_and_rejects_contexts() {
        let m = pa2();
        let c = ctx(&m);
        let dims: Vec<Vec<usize>> = c.u_parts().iter().map(|u| u.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1], vec![1, 1]]);
        assert!(cosyzygy(&m.p1).right().is_zero());
        assert!(build_context(&m.alg, &[m.p1.clone(), m.p2.clone()], Mode::Frobenius).is_ok());
        match build_context(&m.alg, std::slice::from_ref(&m.s2), Mode::Frobenius) {
            Err(Error::Hypotheses(h)) => assert_eq!(h.len(), 2),
            other => panic!("expected rejection, got {other:?}"),
        }
        match build_context(&m.alg, &[m.s1.clone(), m.s2.clone()], Mode::Exact) {
            Err(Error::Hypotheses(h)) => assert!(h.iter().any(|s| s.contains("rigid"))),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn approximations_have_the_factoring_property() {
        let m = pa2();
        for strategy in [ApproxStrategy::Full, ApproxStrategy::PerSummand, ApproxStrategy::Trimmed] {
            let c = ctx(&m).with_strategy(strategy);
            for x in [&m.s1, &m.s2, &m.p1, &m.p2, &Module::zero(&m.alg)] {
                let a = c.right_m_approximation(x);
                assert!(x.is_zero() || is_epi(&a.map));
                for n in c.summands() {
                    for h in hom_basis(n, x) {
                        assert!(lift_through(&a.map, &h).is_some());
                    }
                }
                let u = c.mho_approximation(x);
                for w in c.u_parts() {
                    for h in hom_basis(w, x) {
                        assert!(lift_through(&u.map, &h).is_some());
                    }
                }
            }
        }
        let c = ctx(&m).with_strategy(ApproxStrategy::Full);
        let d = hom_dim(c.generator(), &m.s2);
        assert_eq!(c.right_m_approximation(&m.s2).source().total_dim(), d * c.generator().total_dim());
    }

    #[test]
    fn weak_equivalences_and_fibrations() {
        let m = pa2();
        let c = ctx(&m);
        let z = Module::zero(&m.alg);
        let to_s2 = Morphism::zero(&z, &m.s2);
        assert!(c.is_weak_equivalence(&to_s2));
        assert!(!c.is_fibration(&to_s2));
        assert!(!c.fibration_via_cone(&to_s2).unwrap());
        for x in [&m.s1, &m.s2, &m.p1, &m.p2] {
            let id = Morphism::identity(x);
            assert!(c.is_weak_equivalence(&id) && c.is_fibration(&id));
            assert!(c.fibration_via_cone(&id).unwrap());
            assert!(c.is_fibration(&Morphism::zero(x, &z)));
        }
        let t = top(&m);
        assert_eq!(c.is_fibration(&t), c.fibration_via_cone(&t).unwrap());
        assert_eq!(c.is_weak_equivalence(&t), c.weq_via_cone(&t).unwrap());
        assert!(!c.is_weak_equivalence(&Morphism::zero(&m.s1, &z)));
    }

    #[test]
    fn replacements_are_trivial_fibrations() {
        let m = pa2();
        for strategy in [ApproxStrategy::Full, ApproxStrategy::PerSummand, ApproxStrategy::Trimmed] {
            let c = ctx(&m).with_strategy(strategy);
            for x in [&m.s1, &m.s2, &m.p1, &m.p2, &Module::zero(&m.alg), c.generator()] {
                let r = c.cofibrant_replacement(x).unwrap();
                assert!(c.is_trivial_fibration(&r.phi));
                assert!(is_epi(&r.phi));
                assert!(c.is_cofibrant(x).unwrap());
            }
        }
    }

    #[test]
    fn mho_membership_and_homotopy() {
        let m = pa2();
        let c = ctx(&m);
        assert!(c.in_mho_m(&m.s2));
        assert!(!c.in_mho_m(&m.s1));
        assert!(c.in_mho_m(&m.p1));
        let id2 = Morphism::identity(&m.s2);
        assert!(c.are_homotopic(&id2, &Morphism::zero(&m.s2, &m.s2)).unwrap());
        let id1 = Morphism::identity(&m.s1);
        assert!(!c.are_homotopic(&id1, &Morphism::zero(&m.s1, &m.s1)).unwrap());
        assert!(c.are_homotopic(&id1, &id1).unwrap());
    }

    #[test]
    fn lifting_refuses_bad_inputs() {
        let m = pa2();
        let c = ctx(&m);
        let t = top(&m);
        let g = Morphism::identity(&m.s2);
        if !c.is_trivial_fibration(&t) {
            assert!(matches!(c.lift(&g, &t), Err(Error::Precondition(_))));
        }
        let r = c.cofibrant_replacement(&m.s2).unwrap();
        let b = c.lift(&g, &r.phi).unwrap();
        assert_eq!(r.phi.after(&b), g);
    }

    #[test]
    fn factorizations_recompose() {
        let m = pa2();
        let c = ctx(&m);
        let z = Module::zero(&m.alg);
        for f in [Morphism::zero(&z, &m.s1), top(&m), Morphism::identity(c.generator())] {
            let fac = c.factorize1(&f).unwrap();
            assert_eq!(fac.right.after(&fac.left), f);
            let fac = c.factorize2(&f).unwrap();
            assert_eq!(fac.right.after(&fac.left), f);
            assert!(is_mono(&fac.left));
        }
        let fac = c.factorize2(&Morphism::zero(&m.s2, &z)).unwrap();
        assert!(c.in_mho_m(fac.mid()));
        let id = Morphism::identity(c.generator());
        let fac = c.factorize2(&id).unwrap();
        assert!(retraction(&fac.left).is_some() && section(&fac.right).is_some());
        let exact = build_context(&m.alg, &[m.p1.clone(), m.p2.clone(), m.s1.clone()], Mode::Exact).unwrap();
        assert!(matches!(exact.factorize2(&id), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn path_objects() {
        let m = pa2();
        let c = ctx(&m);
        for y in [&Module::zero(&m.alg), &m.s1, &m.p2] {
            let p = c.path_object(y).unwrap();
            assert_eq!(p.q.after(&p.w), p.diagonal);
            assert!(c.is_weak_equivalence(&p.w));
        }
        let p = c.path_object(&Module::zero(&m.alg)).unwrap();
        assert!(is_iso(&p.w));
    }
}
