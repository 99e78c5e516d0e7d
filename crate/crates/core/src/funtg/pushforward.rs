//! The monoidal pushforward along a finite covering with ordered fibers, and
//! the norm `N_K^H = p^⊗_* ∘ r^* : KC -> HC`.

use crate::fincat::{FiniteCategory, NormedSmc};
use crate::groups::{Permutation, Subgroup};

use super::choices::ChoiceContext;
use super::shapes::{CatFunctor, Diagram, DiagramCategory, TranslationCategory};
use super::FuntgError;

/// A finite covering `p: I -> J` with a linear order on every fiber.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub p: CatFunctor,
    /// `fibers[j]` lists the objects over j in their chosen order.
    pub fibers: Vec<Vec<usize>>,
    /// `lifts[f][k]`: the lift of f starting at `fibers[dom f][k]`.
    lifts: Vec<Vec<usize>>,
}

/// The violated covering condition, if any: unique lifts with a given
/// domain and unique lifts with a given codomain.
pub fn covering_errors(i: &FiniteCategory, j: &FiniteCategory, p: &CatFunctor) -> Option<String> {
    if let Some(e) = p.errors(i, j) {
        return Some(format!("p is not a functor: {e}"));
    }
    for f in 0..j.morphism_count() {
        for x in 0..i.object_count() {
            if p.ob[x] == j.dom(f) {
                let n = (0..i.morphism_count()).filter(|&m| i.dom(m) == x && p.mor[m] == f).count();
                if n != 1 {
                    return Some(format!("{n} lifts of {} start at {}", j.describe_morphism(f), i.objects[x]));
                }
            }
            if p.ob[x] == j.cod(f) {
                let n = (0..i.morphism_count()).filter(|&m| i.cod(m) == x && p.mor[m] == f).count();
                if n != 1 {
                    return Some(format!("{n} lifts of {} end at {}", j.describe_morphism(f), i.objects[x]));
                }
            }
        }
    }
    None
}

impl Pushforward {
    /// Validates the covering; `fibers = None` orders each fiber by object
    /// index.
    pub fn new(i: &FiniteCategory, j: &FiniteCategory, p: CatFunctor, fibers: Option<Vec<Vec<usize>>>) -> Result<Self, FuntgError> {
        if let Some(e) = covering_errors(i, j, &p) {
            return Err(FuntgError::NotACovering(e));
        }
        let fibers = fibers.unwrap_or_else(|| (0..j.object_count()).map(|y| (0..i.object_count()).filter(|&x| p.ob[x] == y).collect()).collect());
        for (y, fiber) in fibers.iter().enumerate() {
            let mut sorted = fiber.clone();
            sorted.sort_unstable();
            let expected: Vec<usize> = (0..i.object_count()).filter(|&x| p.ob[x] == y).collect();
            if sorted != expected {
                return Err(FuntgError::Invalid(format!("the order on the fiber over {} is not a permutation of it", j.objects[y])));
            }
        }
        let lifts = (0..j.morphism_count())
            .map(|f| {
                fibers[j.dom(f)]
                    .iter()
                    .map(|&x| (0..i.morphism_count()).find(|&m| i.dom(m) == x && p.mor[m] == f).expect("validated covering"))
                    .collect()
            })
            .collect();
        Ok(Pushforward { p, fibers, lifts })
    }

    /// `(p^⊗_* X)(j) = ⊗(X_i)` over the ordered fiber; on `f: j -> j'` the
    /// tensor of the lifted arrows followed by the coherence that puts the
    /// factors `X_{f·i}` back in the order of the fiber over j'.
    pub fn on_diagram(&self, base: &NormedSmc, i: &FiniteCategory, j: &FiniteCategory, x: &Diagram) -> Diagram {
        let c = base.cat();
        let ob = self.fibers.iter().map(|fib| base.tensor_n_ob(&fib.iter().map(|&a| x.ob[a]).collect::<Vec<_>>())).collect();
        let mor = (0..j.morphism_count())
            .map(|f| {
                let lifts = &self.lifts[f];
                let arrows = base.tensor_n_mor(&lifts.iter().map(|&m| x.mor[m]).collect::<Vec<_>>());
                let moved: Vec<usize> = lifts.iter().map(|&m| i.cod(m)).collect();
                let target = &self.fibers[j.cod(f)];
                let tau = Permutation::from_images(moved.iter().map(|a| target.iter().position(|b| b == a).expect("lift lands in the fiber")).collect())
                    .expect("f· is a bijection of fibers");
                let ys: Vec<usize> = moved.iter().map(|&a| x.ob[a]).collect();
                c.comp(base.permutation_coherence(&ys, &tau), arrows)
            })
            .collect();
        Diagram { ob, mor }
    }

    /// `(p^⊗_* η)_j = ⊗(η_i)` over the ordered fiber.
    pub fn on_components(&self, base: &NormedSmc, comps: &[usize]) -> Vec<usize> {
        self.fibers.iter().map(|fib| base.tensor_n_mor(&fib.iter().map(|&a| comps[a]).collect::<Vec<_>>())).collect()
    }

    /// The pushforward as a functor `Fun(I, C) -> Fun(J, C)`.
    pub fn functor(&self, base: &NormedSmc, i: &TranslationCategory, j: &TranslationCategory, src: &DiagramCategory, tgt: &DiagramCategory) -> Result<CatFunctor, String> {
        src.map_to(tgt, |_, d| self.on_diagram(base, &i.cat, &j.cat, d), |f| self.on_components(base, &src.components[f]))
    }
}

/// `p^⊗_* X` for a covering between translation categories, with fibers in
/// object order unless given.
pub fn monoidal_pushforward(
    base: &NormedSmc,
    i: &TranslationCategory,
    j: &TranslationCategory,
    points: &[usize],
    fibers: Option<Vec<Vec<usize>>>,
    x: &Diagram,
) -> Result<Diagram, FuntgError> {
    let push = Pushforward::new(&i.cat, &j.cat, i.induced(j, points), fibers)?;
    Ok(push.on_diagram(base, &i.cat, &j.cat, x))
}

/// `N_K^H : KC -> HC` with its source and target categories.
#[derive(Clone, Debug)]
pub struct HhrNorm {
    pub kc: DiagramCategory,
    pub hc: DiagramCategory,
    pub functor: CatFunctor,
}

/// The norm `p^⊗_* ∘ r^*`, through `Fun(T_H(H/K), C)` with the H/K
/// representatives of `ctx` defining both r and the fiber order.
pub fn hhr_norm(base: &NormedSmc, ctx: &ChoiceContext, h: &Subgroup, k: &Subgroup) -> Result<HhrNorm, FuntgError> {
    let g = &ctx.group;
    let c = base.cat();
    let hk_reps = ctx.reps(h, k);
    let shape_k = TranslationCategory::point(g, k);
    let shape_h = TranslationCategory::point(g, h);
    let shape_hk = TranslationCategory::of_cosets(g, h, k, &hk_reps);
    let kc = DiagramCategory::build(&shape_k, c, true)?;
    let hc = DiagramCategory::build(&shape_h, c, true)?;
    let mid = DiagramCategory::build(&shape_hk, c, true)?;
    let r_star = kc.precompose(&mid, &shape_hk.retraction(&hk_reps, &shape_k)).map_err(FuntgError::Invalid)?;
    let push = Pushforward::new(&shape_hk.cat, &shape_h.cat, shape_hk.induced(&shape_h, &vec![0; hk_reps.len()]), None)?;
    let p_star = push.functor(base, &shape_hk, &shape_h, &mid, &hc).map_err(FuntgError::Invalid)?;
    Ok(HhrNorm { functor: p_star.after(&r_star), kc, hc })
}
