use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    column_map, cokernel, direct_sum, hom_basis, is_mono, kernel, pullback, pushout, row_map, sum_of_morphisms,
    Module, Morphism,
};
use crate::error::Result;
use crate::homological::{
    cosyzygy, injective_envelope, lift_through, projective_cover, stable_hom, syzygy, StableKind,
};
use crate::linalg::Matrix;
use crate::rigid::induced_map;

use super::{random_combination, Failure, Harness, Replay};

type Outcome = Result<Option<Failure>>;

fn fail(inputs: &[(&str, &Morphism)], expected: impl Into<String>, observed: impl Into<String>) -> Outcome {
    let inputs = inputs.iter().map(|(r, f)| Replay::new(r, f)).collect();
    Ok(Some(Failure::new(inputs, expected, observed)))
}

fn rank_of_rows(field: crate::linalg::Field, cols: usize, rows: &[Matrix]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    Matrix::vstack(field, cols, &refs).rank()
}

/// Whether `f` has the right lifting property against `i`: every square
/// `f ∘ a = b ∘ i` has a diagonal `d` with `d ∘ i = a` and `f ∘ d = b`.
/// Squares form a vector space and diagonals map linearly onto a subspace of
/// it, so this compares two dimensions.
pub fn has_lifting(i: &Morphism, f: &Morphism) -> bool {
    let (a, b) = (i.source(), i.target());
    let (x, y) = (f.source(), f.target());
    let field = f.field();
    let ha = hom_basis(a, x);
    let hb = hom_basis(b, y);
    let mut constraint: Vec<Matrix> = ha.iter().map(|p| f.after(p).to_row()).collect();
    constraint.extend(hb.iter().map(|q| q.after(i).neg().to_row()));
    let squares = ha.len() + hb.len() - rank_of_rows(field, Morphism::flat_len(a, y), &constraint);
    let (la, lb) = (Morphism::flat_len(a, x), Morphism::flat_len(b, y));
    let lifts: Vec<Matrix> = hom_basis(b, x)
        .iter()
        .map(|d| Matrix::hstack(field, 1, &[&d.after(i).to_row(), &f.after(d).to_row()]))
        .collect();
    rank_of_rows(field, la + lb, &lifts) == squares
}

fn random_between(x: &Module, y: &Module, rng: &mut ChaCha8Rng) -> Morphism {
    random_combination(x, y, &hom_basis(x, y), rng)
}

fn some_fibration(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Morphism> {
    for _ in 0..6 {
        let p = h.uni.random_map(rng);
        if h.ctx.is_fibration(&p) {
            return Ok(p);
        }
    }
    let f = h.uni.random_map(rng);
    Ok(h.ctx.factorize1(&f)?.right)
}

/// `W` has two-out-of-three; case `k` tests direction `k mod 3`.
pub(crate) fn two_out_of_three(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let (x, y, z) = (h.uni.pick(rng), h.uni.pick(rng), h.uni.pick(rng));
    let f = h.uni.map(x, y, rng);
    let g = h.uni.map(y, z, rng);
    let gf = g.after(&f);
    let (wf, wg, wgf) = (h.weq(&f), h.weq(&g), h.weq(&gf));
    let (premise, conclusion, what) = match k % 3 {
        0 => (wf && wg, wgf, "g∘f in W"),
        1 => (wgf && wg, wf, "f in W"),
        _ => (wgf && wf, wg, "g in W"),
    };
    if premise && !conclusion {
        return fail(&[("f", &f), ("g", &g)], what, "not in W");
    }
    Ok(None)
}

/// `W` and `Fib` are closed under retracts; `f` is cut out of `f ⊕ h`.
pub(crate) fn retract_stability(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let f = h.uni.random_map(rng);
    let pad = if k.is_multiple_of(2) {
        Morphism::identity(h.uni.module(h.uni.pick(rng)))
    } else {
        h.uni.random_map(rng)
    };
    let (src, tgt, w) = sum_of_morphisms(&[f.clone(), pad.clone()]);
    let cut = tgt.projections[0].after(&w).after(&src.injections[0]);
    if cut != f {
        return fail(&[("f", &f), ("pad", &pad)], "retract recovers f", "mismatch");
    }
    if h.weq(&w) && !h.weq(&f) {
        return fail(&[("f", &f), ("pad", &pad)], "f in W", "not in W");
    }
    if h.fib(&w) && !h.fib(&f) {
        return fail(&[("f", &f), ("pad", &pad)], "f in Fib", "not in Fib");
    }
    Ok(None)
}

/// Pullbacks of fibrations are fibrations. Pulling a trivial fibration back
/// along a deflation `p` whose kernel inclusion `i` has `Gi` mono gives a
/// trivial fibration.
pub(crate) fn pullback_fibration(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let (b0, y) = (h.uni.pick(rng), h.uni.pick(rng));
    let ym = h.uni.module(y).clone();
    if k.is_multiple_of(2) {
        let phi = h.ctx.cofibrant_replacement(&ym)?.phi.clone();
        let r = h.uni.map(b0, y, rng);
        let cover = projective_cover(&ym);
        let sum = direct_sum(h.ctx.algebra(), &[h.uni.module(b0).clone(), cover.module().clone()]);
        let p = row_map(&sum, &[r, cover.map.clone()], &ym);
        let pb = pullback(&phi, &p)?;
        let g_mono = {
            let (kk, i) = kernel(&p);
            let (gk, gb) = (h.ctx.g_space(&kk), h.ctx.g_space(&sum.module));
            gk.dim() == 0 || induced_map(&gk, &gb, &i).rank() == gk.dim()
        };
        if !h.fib(&pb.to_c) {
            return fail(&[("phi", &phi), ("p", &p)], "pullback in Fib", "not in Fib");
        }
        if g_mono && !h.trivfib(&pb.to_c) {
            return fail(&[("phi", &phi), ("p", &p)], "pullback in Fib ∩ W", "not a trivial fibration");
        }
    } else {
        let f = h.uni.map(h.uni.pick(rng), y, rng);
        let f = if h.ctx.is_fibration(&f) { f } else { h.ctx.factorize1(&f)?.right };
        let p = h.uni.map(b0, y, rng);
        let pb = pullback(&f, &p)?;
        if h.fib(&f) && !h.fib(&pb.to_c) {
            return fail(&[("f", &f), ("p", &p)], "pullback in Fib", "not in Fib");
        }
    }
    Ok(None)
}

/// `f = right ∘ left` with `left ∈ W` having the left lifting property against
/// fibrations and `right ∈ Fib`.
pub(crate) fn factorization1(h: &Harness, rng: &mut ChaCha8Rng, _k: usize) -> Outcome {
    let f = h.uni.random_map(rng);
    let fac = h.ctx.factorize1(&f)?;
    if fac.right.after(&fac.left) != f {
        return fail(&[("f", &f)], "right ∘ left = f", "mismatch");
    }
    if !h.weq(&fac.left) || !h.fib(&fac.right) {
        return fail(&[("f", &f)], "left in W, right in Fib", "class check failed");
    }
    let p = some_fibration(h, rng)?;
    if !has_lifting(&fac.left, &p) {
        return fail(&[("f", &f), ("p", &p)], "left lifts against p", "no lift");
    }
    Ok(None)
}

/// For cofibrant domains, `f = right ∘ left` with `left` an inflation with
/// cofibrant cokernel lifting against trivial fibrations and `right ∈ Fib ∩ W`.
pub(crate) fn factorization2(h: &Harness, rng: &mut ChaCha8Rng, _k: usize) -> Outcome {
    let cof = h.uni.cofibrant(h.ctx);
    if cof.is_empty() {
        return Ok(None);
    }
    let x = cof[rng.gen_range(0..cof.len())];
    let f = h.uni.map(x, h.uni.pick(rng), rng);
    let fac = h.ctx.factorize2(&f)?;
    if fac.right.after(&fac.left) != f {
        return fail(&[("f", &f)], "right ∘ left = f", "mismatch");
    }
    if !is_mono(&fac.left) || !h.cofibrant(&cokernel(&fac.left).0)? {
        return fail(&[("f", &f)], "left mono with cofibrant cokernel", "class check failed");
    }
    if !h.trivfib(&fac.right) {
        return fail(&[("f", &f)], "right in Fib ∩ W", "class check failed");
    }
    let z = h.uni.module(h.uni.pick(rng)).clone();
    let phi = h.ctx.cofibrant_replacement(&z)?.phi.clone();
    if !has_lifting(&fac.left, &phi) {
        return fail(&[("f", &f), ("phi", &phi)], "left lifts against phi", "no lift");
    }
    Ok(None)
}

/// `(c, ι0): M0 -> C ⊕ I0` for an approximation `c` of `C` and the envelope `ι0`.
fn presentation_element(h: &Harness, c: &Module) -> Morphism {
    let approx = h.ctx.right_m_approximation(c);
    let env = injective_envelope(approx.source());
    let sum = direct_sum(h.ctx.algebra(), &[c.clone(), env.module.clone()]);
    if approx.source().is_zero() {
        return Morphism::zero(approx.source(), &sum.module);
    }
    column_map(&sum, &[approx.map.clone(), env.map])
}

/// The elements used to show `I□ ⊆ W`: for `b: M -> ker f` and an
/// approximation `a: N -> X`, `h: M -> N` lifts `b`, `C = coker (h, ι_M)` and
/// the element is the presentation `N ⊕ I_M -> C ⊕ J` of `C`.
fn adapted_elements(h: &Harness, f: &Morphism) -> Vec<Morphism> {
    let alg = h.ctx.algebra();
    let (kk, incl) = kernel(f);
    let a = h.ctx.right_m_approximation(f.source());
    let mut out = Vec::new();
    for m in h.ctx.summands() {
        for b in hom_basis(m, &kk) {
            let Some(lift) = lift_through(&a.map, &incl.after(&b)) else { continue };
            let env = injective_envelope(m);
            let s = direct_sum(alg, &[a.source().clone(), env.module.clone()]);
            let i0 = column_map(&s, &[lift, env.map]);
            let (c, q) = cokernel(&i0);
            let j = injective_envelope(&s.module);
            let t = direct_sum(alg, &[c, j.module.clone()]);
            out.push(column_map(&t, &[q, j.map]));
        }
    }
    out
}

/// `Fib ∩ W = I□` for `I` = presentation inflations of cofibrant objects and
/// `0 -> N` for generator summands `N`.
pub(crate) fn lifting_i_eq_jw(h: &Harness, rng: &mut ChaCha8Rng, _k: usize) -> Outcome {
    let f = h.uni.random_map(rng);
    let mut elements: Vec<Morphism> =
        h.ctx.summands().iter().map(|n| Morphism::zero(&Module::zero(h.ctx.algebra()), n)).collect();
    let cof = h.uni.cofibrant(h.ctx);
    for &c in cof.iter().filter(|&&c| c < h.uni.base_len()) {
        elements.push(presentation_element(h, h.uni.module(c)));
    }
    if !cof.is_empty() {
        elements.push(presentation_element(h, h.uni.module(cof[rng.gen_range(0..cof.len())])));
    }
    if crate::algebra::is_epi(&f) {
        elements.extend(adapted_elements(h, &f));
    }
    let lifts = elements.iter().all(|i| has_lifting(i, &f));
    let tf = h.trivfib(&f);
    if tf != lifts {
        return fail(&[("f", &f)], format!("lifting against I = {tf}"), format!("{lifts}"));
    }
    Ok(None)
}

/// Maps with the left lifting property against fibrations (canonical
/// injections `X -> X ⊕ U'` and `0 -> W`) are weak equivalences.
pub(crate) fn sq_j_in_w(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let i = if k.is_multiple_of(2) || h.ctx.u_parts().is_empty() {
        h.ctx.factorize1(&h.uni.random_map(rng))?.left
    } else {
        let parts = h.ctx.u_parts();
        let w = &parts[rng.gen_range(0..parts.len())];
        Morphism::zero(&Module::zero(h.ctx.algebra()), w)
    };
    let p = some_fibration(h, rng)?;
    if !has_lifting(&i, &p) {
        return fail(&[("i", &i), ("p", &p)], "i lifts against p", "no lift");
    }
    if !h.weq(&i) {
        return fail(&[("i", &i)], "i in W", "not in W");
    }
    Ok(None)
}

pub(crate) fn weq_cone(h: &Harness, rng: &mut ChaCha8Rng, _k: usize) -> Outcome {
    let f = h.uni.random_map(rng);
    let (direct, cone) = (h.weq(&f), h.ctx.weq_via_cone(&f)?);
    if direct != cone {
        return fail(&[("f", &f)], format!("cone conditions = {cone}"), format!("weq = {direct}"));
    }
    Ok(None)
}

pub(crate) fn fib_cone(h: &Harness, rng: &mut ChaCha8Rng, _k: usize) -> Outcome {
    let f = h.uni.random_map(rng);
    let (direct, cone) = (h.fib(&f), h.ctx.fibration_via_cone(&f)?);
    if direct != cone {
        return fail(&[("f", &f)], format!("cone conditions = {cone}"), format!("fibration = {direct}"));
    }
    Ok(None)
}

/// `X ∈ pr M` iff `X` has an inflation into `add U` with cokernel in `add U`.
/// Since `add U` is rigid and contains the injectives, the left
/// `add U`-approximation is such an inflation whenever one exists.
pub(crate) fn copr_eq_pr(h: &Harness, _rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let x = h.uni.module(k % h.uni.len()).clone();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for w in h.ctx.u_parts() {
        for e in hom_basis(&x, w) {
            parts.push(w.clone());
            maps.push(e);
        }
    }
    let copr = if maps.is_empty() {
        x.is_zero()
    } else {
        let e = column_map(&direct_sum(h.ctx.algebra(), &parts), &maps);
        is_mono(&e) && h.ctx.in_mho_m(&cokernel(&e).0)
    };
    let pr = h.cofibrant(&x)?;
    if pr != copr {
        let id = Morphism::identity(&x);
        return fail(&[("X", &id)], format!("in copr U = {copr}"), format!("in pr M = {pr}"));
    }
    Ok(None)
}

/// `Ext¹(U, U) = 0`, also read as stable `Hom(W, ℧W') = 0` modulo injectives.
pub(crate) fn mho_rigid(h: &Harness, _rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let parts = h.ctx.u_parts();
    if parts.is_empty() {
        return Ok(None);
    }
    let (a, b) = (&parts[k % parts.len()], &parts[(k / parts.len()) % parts.len()]);
    let ext = h.ext1(a, b);
    let stable = stable_hom(a, cosyzygy(b).right(), StableKind::ModuloInjectives).dim();
    if ext != 0 || stable != 0 {
        let (ia, ib) = (Morphism::identity(a), Morphism::identity(b));
        return fail(&[("W", &ia), ("W'", &ib)], "0", format!("ext1 = {ext}, stable = {stable}"));
    }
    Ok(None)
}

/// For `0 -> A -> C -> ℧N -> 0` and `0 -> N -> C -> A -> 0` with `N` a
/// generator summand, `C ∈ pr M` iff `A ∈ pr M`.
pub(crate) fn pr_extension_closure(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let a = h.uni.module(h.uni.pick(rng)).clone();
    let (inclusion, what) = if k.is_multiple_of(2) {
        let parts = h.ctx.u_parts();
        if parts.is_empty() {
            return Ok(None);
        }
        let w = &parts[rng.gen_range(0..parts.len())];
        let ses = syzygy(w);
        let t = random_between(ses.left(), &a, rng);
        (pushout(&ses.i, &t)?.from_c, "0 -> A -> C -> W -> 0")
    } else {
        let ns = h.ctx.summands();
        let n = &ns[rng.gen_range(0..ns.len())];
        let ses = syzygy(&a);
        let t = random_between(ses.left(), n, rng);
        (pushout(&ses.i, &t)?.from_c, "0 -> N -> C -> A -> 0")
    };
    let c = inclusion.target().clone();
    let (pa, pc) = (h.cofibrant(&a)?, h.cofibrant(&c)?);
    if pa != pc {
        return fail(&[(what, &inclusion)], format!("C in pr M = {pa}"), format!("{pc}"));
    }
    Ok(None)
}

/// On cofibrant domains, `f ~ g` iff `Gf = Gg`.
pub(crate) fn homotopy_g_agreement(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let cof = h.uni.cofibrant(h.ctx);
    if cof.is_empty() {
        return Ok(None);
    }
    let x = cof[rng.gen_range(0..cof.len())];
    let y = h.uni.pick(rng);
    let f = h.uni.map(x, y, rng);
    let g = if k.is_multiple_of(2) {
        let alpha = h.ctx.mho_approximation(h.uni.module(y));
        let t = random_between(h.uni.module(x), alpha.source(), rng);
        f.add(&alpha.map.after(&t))
    } else {
        h.uni.map(x, y, rng)
    };
    let (gx, gy) = (h.ctx.g_space(f.source()), h.ctx.g_space(f.target()));
    let same_g = gx.dim() == 0 || gy.dim() == 0 || induced_map(&gx, &gy, &f) == induced_map(&gx, &gy, &g);
    let homotopic = h.homotopic(&f, &g)?;
    if homotopic != same_g {
        return fail(&[("f", &f), ("g", &g)], format!("Gf = Gg is {same_g}"), format!("homotopic = {homotopic}"));
    }
    Ok(None)
}

/// If `g ∘ f` is a deflation then so is `g`.
pub(crate) fn wic_deflation(h: &Harness, rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let (y, z) = (h.uni.pick(rng), h.uni.pick(rng));
    let g = h.uni.map(y, z, rng);
    let f = if k.is_multiple_of(2) {
        let x0 = h.uni.pick(rng);
        let sum = direct_sum(h.ctx.algebra(), &[h.uni.module(y).clone(), h.uni.module(x0).clone()]);
        let t = h.uni.map(x0, y, rng);
        row_map(&sum, &[Morphism::identity(h.uni.module(y)), t], h.uni.module(y))
    } else {
        h.uni.map(h.uni.pick(rng), y, rng)
    };
    if h.epi(&g.after(&f)) && !h.epi(&g) {
        return fail(&[("f", &f), ("g", &g)], "g deflation", "not a deflation");
    }
    Ok(None)
}
