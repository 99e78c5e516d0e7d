//! `Fun(TG, C)` as a finite G-category with its normed symmetric monoidal
//! structure: levelwise ⊗, the S-norms twisted by the coset decomposition
//! `x = g_i h`, and the untwistors given by permutation coherences of C.

use crate::fincat::{all_tuples, tuple_index, FiniteCategory, FiniteGCategory, FunctorTable, NormTables, NormedSmc};
use crate::groups::Permutation;
use crate::gsets::Exponent;
use crate::report::{Check, Report};
use crate::smn::{ExponentSet, Smn};

use super::choices::ChoiceContext;
use super::shapes::{Diagram, DiagramCategory, TranslationCategory};
use super::FuntgError;

/// `Fun(TG, C)` together with its shape and G-action.
#[derive(Clone, Debug)]
pub struct FunTG {
    pub shape: TranslationCategory,
    pub diagrams: DiagramCategory,
    pub carrier: FiniteGCategory,
    /// Whether C itself carries the trivial action.
    pub trivial_base_action: bool,
}

impl FunTG {
    pub fn cat(&self) -> &FiniteCategory {
        &self.carrier.cat
    }

    /// The object whose value at every x is `f(values of ds at x)` and whose
    /// value on every arrow is `m(values of ds on the arrow)`.
    fn levelwise(&self, ds: &[usize], f: impl Fn(&[usize]) -> usize, m: impl Fn(&[usize]) -> usize) -> usize {
        let dg = &self.diagrams.diagrams;
        let ob = (0..self.shape.points()).map(|x| f(&ds.iter().map(|&d| dg[d].ob[x]).collect::<Vec<_>>())).collect();
        let mor = (0..self.shape.cat.morphism_count()).map(|a| m(&ds.iter().map(|&d| dg[d].mor[a]).collect::<Vec<_>>())).collect();
        self.diagrams.object_of(&Diagram { ob, mor }).expect("levelwise construction yields a functor")
    }

    fn morphism(&self, dom: usize, cod: usize, comps: &[usize]) -> usize {
        self.diagrams.morphism_of(dom, cod, comps).unwrap_or_else(|| panic!("components {comps:?} do not form a transformation {dom} -> {cod}"))
    }

    /// Componentwise transformation between two levelwise objects.
    fn componentwise(&self, dom: usize, cod: usize, ds: &[usize], f: impl Fn(&[usize]) -> usize) -> usize {
        let dg = &self.diagrams.diagrams;
        let comps: Vec<usize> = (0..self.shape.points()).map(|x| f(&ds.iter().map(|&d| dg[d].ob[x]).collect::<Vec<_>>())).collect();
        self.morphism(dom, cod, &comps)
    }
}

/// Materializes `Fun(TG, C)` for the group acting on C; the action is
/// `(g·D)_x = g(D_{xg})` on values, arrows and components.
pub fn build_funtg(c: &FiniteGCategory) -> Result<FunTG, FuntgError> {
    let g = &c.group;
    let shape = TranslationCategory::of_group(g);
    let diagrams = DiagramCategory::build(&shape, &c.cat, true)?;
    let trivial_base_action = c.act_ob.iter().all(|row| row.iter().enumerate().all(|(i, &x)| i == x))
        && c.act_mor.iter().all(|row| row.iter().enumerate().all(|(i, &x)| i == x));
    let n = g.order();
    let mut act_ob = Vec::with_capacity(n);
    let mut act_mor = Vec::with_capacity(n);
    for h in g.elements() {
        let row: Vec<usize> = diagrams
            .diagrams
            .iter()
            .map(|d| {
                let ob = (0..n).map(|x| c.ob(h, d.ob[g.mul(x, h)])).collect();
                let mor = (0..shape.cat.morphism_count())
                    .map(|a| {
                        let (k, x) = shape.arrow_parts(a);
                        c.mor(h, d.mor[shape.arrow(k, g.mul(x, h))])
                    })
                    .collect();
                diagrams.object_of(&Diagram { ob, mor }).ok_or_else(|| FuntgError::Invalid("the action does not preserve functors".into()))
            })
            .collect::<Result<_, _>>()?;
        let mrow: Vec<usize> = (0..diagrams.components.len())
            .map(|f| {
                let comps: Vec<usize> = (0..n).map(|x| c.mor(h, diagrams.components[f][g.mul(x, h)])).collect();
                let (a, b) = (row[diagrams.cat.dom(f)], row[diagrams.cat.cod(f)]);
                diagrams.morphism_of(a, b, &comps).ok_or_else(|| FuntgError::Invalid("the action does not preserve transformations".into()))
            })
            .collect::<Result<_, _>>()?;
        act_ob.push(row);
        act_mor.push(mrow);
    }
    let carrier = FiniteGCategory { cat: diagrams.cat.clone(), group: g.clone(), act_ob, act_mor };
    Ok(FunTG { shape, diagrams, carrier, trivial_base_action })
}

/// The S-norm and its untwistor on `Fun(TG, C)`, for `x = g_i h`:
/// `⊗_S(C)_x = ⊗_n(C^{σ(h)⁻¹1}_x, …)`, on `x -> y = g_j h'` the factors'
/// arrows followed by the coherence `σ(h'h⁻¹)`, and `υ_x = σ(h)⁻¹`.
pub fn funtg_norm(fun: &FunTG, base: &NormedSmc, s: &Exponent, g_reps: &[usize]) -> NormTables {
    let g = fun.shape.group();
    let n = s.size();
    let decompose = |x: usize| g.coset_decompose(g_reps, &s.subgroup, x).1;
    let inv_sigma = |h: usize| s.sigma(h).inverse();
    let dg = &fun.diagrams.diagrams;
    let c = base.cat();
    let norm_ob = |ds: &[usize]| -> usize {
        let ob: Vec<usize> = (0..fun.shape.points())
            .map(|x| {
                let w = inv_sigma(decompose(x));
                base.tensor_n_ob(&(0..n).map(|j| dg[ds[w.apply(j)]].ob[x]).collect::<Vec<_>>())
            })
            .collect();
        let mor: Vec<usize> = (0..fun.shape.cat.morphism_count())
            .map(|a| {
                let (k, x) = fun.shape.arrow_parts(a);
                let y = g.mul(k, x);
                let (h, h2) = (decompose(x), decompose(y));
                let w = inv_sigma(h);
                let arrows = base.tensor_n_mor(&(0..n).map(|j| dg[ds[w.apply(j)]].mor[a]).collect::<Vec<_>>());
                let at_y: Vec<usize> = (0..n).map(|j| dg[ds[w.apply(j)]].ob[y]).collect();
                c.comp(base.permutation_coherence(&at_y, &s.sigma(g.mul(h2, g.inv(h)))), arrows)
            })
            .collect();
        fun.diagrams.object_of(&Diagram { ob, mor }).expect("the norm of functors is a functor")
    };
    let functor = FunctorTable::from_fn_with_ends(fun.cat(), n, norm_ob, |fs, dom, cod| {
        let comps: Vec<usize> = (0..fun.shape.points())
            .map(|x| {
                let w = inv_sigma(decompose(x));
                base.tensor_n_mor(&(0..n).map(|j| fun.diagrams.components[fs[w.apply(j)]][x]).collect::<Vec<_>>())
            })
            .collect();
        fun.morphism(dom, cod, &comps)
    });
    let upsilon = all_tuples(fun.cat().object_count(), n)
        .iter()
        .map(|ds| {
            let comps: Vec<usize> = (0..fun.shape.points())
                .map(|x| {
                    let w = inv_sigma(decompose(x));
                    base.permutation_coherence(&(0..n).map(|j| dg[ds[w.apply(j)]].ob[x]).collect::<Vec<_>>(), &w)
                })
                .collect();
            let cod = fun.levelwise(ds, |v| base.tensor_n_ob(v), |v| base.tensor_n_mor(v));
            fun.morphism(functor.on_ob(fun.cat(), ds), cod, &comps)
        })
        .collect();
    NormTables { functor, upsilon }
}

/// The levelwise symmetric monoidal structure, with norms supplied per
/// exponent.
fn with_norms(base: &NormedSmc, smn: &Smn, norms: impl Fn(&FunTG, &Exponent) -> NormTables) -> Result<(FunTG, NormedSmc), FuntgError> {
    if base.carrier.group != *smn.group() {
        return Err(FuntgError::Invalid("the base carrier and the exponents use different groups".into()));
    }
    let fun = build_funtg(&base.carrier)?;
    let c = base.cat();
    let nob = fun.cat().object_count();
    let unit = fun.levelwise(&[], |_| base.unit, |_| c.id(base.unit));
    let tensor = FunctorTable::from_fn_with_ends(
        fun.cat(),
        2,
        |ds| fun.levelwise(ds, |v| base.t_ob(v[0], v[1]), |v| base.t_mor(v[0], v[1])),
        |fs, dom, cod| {
            let comps: Vec<usize> =
                (0..fun.shape.points()).map(|x| base.t_mor(fun.diagrams.components[fs[0]][x], fun.diagrams.components[fs[1]][x])).collect();
            fun.morphism(dom, cod, &comps)
        },
    );
    let t = |a: usize, b: usize| tensor.ob[a * nob + b];
    let alpha = all_tuples(nob, 3).iter().map(|v| fun.componentwise(t(t(v[0], v[1]), v[2]), t(v[0], t(v[1], v[2])), v, |w| base.alpha_at(w[0], w[1], w[2]))).collect();
    let lambda = (0..nob).map(|x| fun.componentwise(t(unit, x), x, &[x], |w| base.lambda[w[0]])).collect();
    let rho = (0..nob).map(|x| fun.componentwise(t(x, unit), x, &[x], |w| base.rho[w[0]])).collect();
    let beta = all_tuples(nob, 2).iter().map(|v| fun.componentwise(t(v[0], v[1]), t(v[1], v[0]), v, |w| base.beta_at(w[0], w[1]))).collect();
    let tables = smn.exponents.norms.iter().map(|spec| norms(&fun, &spec.exponent)).collect();
    let d = NormedSmc { carrier: fun.carrier.clone(), smn: smn.clone(), unit, tensor, alpha, lambda, rho, beta, norms: tables };
    Ok((fun, d))
}

/// `Fun(TG, C)` with the norms of every exponent in `smn`, built from the
/// representatives in `ctx`.
pub fn funtg_nsmc(base: &NormedSmc, smn: &Smn, ctx: &ChoiceContext) -> Result<(FunTG, NormedSmc), FuntgError> {
    with_norms(base, smn, |fun, s| funtg_norm(fun, base, s, &ctx.g_reps(&s.subgroup)))
}

/// The same structure obtained by pulling the `Fun(TG, SM)`-action back
/// along a free map. The image of `⊗_S` is a Γ_S-fixed assignment of
/// words `w_x` (the order in which the inputs are tensored at x); fixedness
/// forces `w_{xh} = σ(h)⁻¹ ∘ w_x`, so choosing `w = id` at the least element
/// of each orbit of the right H-action determines it. Arrows and the
/// untwistor are the interpretations of the unique morphisms between words.
pub fn operad_pullback_nsmc(base: &NormedSmc, smn: &Smn) -> Result<(FunTG, NormedSmc), FuntgError> {
    with_norms(base, smn, |fun, s| {
        let g = fun.shape.group();
        let n = s.size();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        for x in g.elements() {
            if words[x].is_some() {
                continue;
            }
            words[x] = Some((0..n).collect());
            let mut frontier = vec![x];
            while let Some(y) = frontier.pop() {
                for &h in &s.subgroup.elements {
                    let z = g.mul(y, h);
                    if words[z].is_none() {
                        let sh = s.sigma(h).inverse();
                        words[z] = Some(words[y].as_ref().unwrap().iter().map(|&p| sh.apply(p)).collect());
                        frontier.push(z);
                    }
                }
            }
        }
        let words: Vec<Vec<usize>> = words.into_iter().map(|w| w.expect("every element lies in an orbit")).collect();
        // position p of word `from` moves to the position of the same input in `to`
        let between = |from: &[usize], to: &[usize]| {
            Permutation::from_images((0..n).map(|p| to.iter().position(|&q| q == from[p]).unwrap()).collect()).expect("words are bijections")
        };
        let dg = &fun.diagrams.diagrams;
        let c = base.cat();
        let norm_ob = |ds: &[usize]| -> usize {
            let ob = (0..g.order()).map(|x| base.tensor_n_ob(&words[x].iter().map(|&i| dg[ds[i]].ob[x]).collect::<Vec<_>>())).collect();
            let mor = (0..fun.shape.cat.morphism_count())
                .map(|a| {
                    let (k, x) = fun.shape.arrow_parts(a);
                    let y = g.mul(k, x);
                    let moved = base.tensor_n_mor(&words[x].iter().map(|&i| dg[ds[i]].mor[a]).collect::<Vec<_>>());
                    let at_y: Vec<usize> = words[x].iter().map(|&i| dg[ds[i]].ob[y]).collect();
                    c.comp(base.permutation_coherence(&at_y, &between(&words[x], &words[y])), moved)
                })
                .collect();
            fun.diagrams.object_of(&Diagram { ob, mor }).expect("pulled-back norm is a functor")
        };
        let identity: Vec<usize> = (0..n).collect();
        let functor = FunctorTable::from_fn_with_ends(fun.cat(), n, norm_ob, |fs, dom, cod| {
            let comps: Vec<usize> =
                (0..g.order()).map(|x| base.tensor_n_mor(&words[x].iter().map(|&i| fun.diagrams.components[fs[i]][x]).collect::<Vec<_>>())).collect();
            fun.morphism(dom, cod, &comps)
        });
        let upsilon = all_tuples(fun.cat().object_count(), n)
            .iter()
            .map(|ds| {
                let comps: Vec<usize> = (0..g.order())
                    .map(|x| base.permutation_coherence(&words[x].iter().map(|&i| dg[ds[i]].ob[x]).collect::<Vec<_>>(), &between(&words[x], &identity)))
                    .collect();
                let cod = fun.levelwise(ds, |v| base.tensor_n_ob(v), |v| base.tensor_n_mor(v));
                fun.morphism(functor.ob[tuple_index(ds, fun.cat().object_count())], cod, &comps)
            })
            .collect();
        NormTables { functor, upsilon }
    })
}

/// Bound on object maps examined by the exhaustive equivalence search.
const MAX_OBJECT_MAPS: usize = 1 << 16;

/// Why `Fun(TG, C)` is not G-equivalent to a discrete G-category with a
/// moving object: every object of `Fun(TG, C)` is isomorphic to all of its
/// translates, via `η_x = D(xg -> x)`, while `Set(G, Z/m)^disc` has an
/// object not fixed by some g. A search over object maps confirms that no
/// G-equivariant, isomorphism-invariant map hits every object.
pub fn discrete_obstruction(c: &FiniteCategory, group: &crate::groups::FiniteGroup, m: usize) -> Result<Report, FuntgError> {
    let mut report = Report::new("Fun(TG, C) is not equivalent to Set(G, N)^disc", format!("|G| = {}, N = Z/{m}", group.order()));
    let fun = build_funtg(&FiniteGCategory::trivial(c.clone(), group))?;
    let fc = fun.cat();
    let mut translates = Check::new("objects-isomorphic-to-translates");
    for d in 0..fc.object_count() {
        for g in group.elements() {
            let gd = fun.carrier.ob(g, d);
            let diag = &fun.diagrams.diagrams[d];
            let comps: Vec<usize> = group.elements().map(|x| diag.mor[fun.shape.arrow(group.mul(x, group.inv(group.mul(x, g))), group.mul(x, g))]).collect();
            let ok = fun.diagrams.morphism_of(gd, d, &comps).is_some_and(|f| fc.is_iso(f));
            translates.test(ok, || format!("no isomorphism g·D -> D for g = {g} at {}", fc.objects[d]));
        }
    }
    report.push(translates);

    let target = crate::fincat::builtins::discrete_functions(Smn::build(ExponentSet::empty(group)), m);
    let dc = target.cat();
    let mut moving = Check::new("discrete-target-has-moving-object");
    let witness = (0..dc.object_count()).find_map(|x| group.elements().find(|&g| target.carrier.ob(g, x) != x).map(|g| (x, g)));
    match witness {
        Some((x, g)) => {
            report.push(moving.with_note(format!("g = {g} moves {}; the category is discrete, so they are not isomorphic", dc.objects[x])));
        }
        None => {
            moving.fail("the action on Set(G, N)^disc is trivial (G or N is trivial)");
            report.push(moving);
        }
    }

    let mut search = Check::new("no-equivariant-essentially-surjective-map");
    let maps = dc.object_count().checked_pow(fc.object_count() as u32).unwrap_or(usize::MAX);
    if maps > MAX_OBJECT_MAPS {
        report.push(search.with_note(format!("skipped: {maps} object maps exceed {MAX_OBJECT_MAPS}")));
        return Ok(report);
    }
    let mut found = 0;
    for phi in all_tuples(dc.object_count(), fc.object_count()) {
        search.instances += 1;
        let equivariant = group.elements().all(|g| (0..fc.object_count()).all(|d| phi[fun.carrier.ob(g, d)] == target.carrier.ob(g, phi[d])));
        // a functor to a discrete category is constant on isomorphism classes
        let invariant = (0..fc.morphism_count()).all(|f| phi[fc.dom(f)] == phi[fc.cod(f)]);
        let surjective = (0..dc.object_count()).all(|y| phi.contains(&y));
        if equivariant && invariant && surjective {
            found += 1;
        }
    }
    if found > 0 {
        search.fail(format!("{found} object maps are equivariant, invariant and surjective"));
    }
    report.push(search);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins::{chaotic_z2, discrete_functions, sign_z2};
    use crate::fincat::validate_nsmc;
    use crate::groups::FiniteGroup;

    fn c2_free() -> Smn {
        let g = FiniteGroup::cyclic(2);
        Smn::build(ExponentSet::new(&g, vec![("free".into(), Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup()))]).unwrap())
    }

    #[test]
    fn discrete_base_gives_constant_functors() {
        let g = FiniteGroup::s3();
        let c = FiniteCategory::discrete(vec!["a".into(), "b".into(), "c".into()]);
        let fun = build_funtg(&FiniteGCategory::trivial(c, &g)).unwrap();
        // morphisms of TG go to identities, so every functor is constant
        assert_eq!(fun.cat().object_count(), 3);
        assert!(fun.diagrams.diagrams.iter().all(|d| d.ob.iter().all(|&x| x == d.ob[0])));
        assert!(fun.carrier.act_ob.iter().all(|row| row == &vec![0, 1, 2]), "the action is trivial");
    }

    #[test]
    fn chaotic_base_has_swap_action() {
        let g = FiniteGroup::cyclic(2);
        let c = FiniteCategory::chaotic(vec!["0".into(), "1".into()]);
        let fun = build_funtg(&FiniteGCategory::trivial(c, &g)).unwrap();
        // arbitrary value pairs with unique fillers
        assert_eq!(fun.cat().object_count(), 4);
        for (i, d) in fun.diagrams.diagrams.iter().enumerate() {
            let swapped = fun.carrier.ob(1, i);
            assert_eq!(fun.diagrams.diagrams[swapped].ob, vec![d.ob[1], d.ob[0]], "(gC)_x = C_(xg)");
        }
        assert!(fun.carrier.action_errors().is_none());
    }

    #[test]
    fn trivial_group_recovers_the_base() {
        let g = FiniteGroup::trivial();
        let base = sign_z2(Smn::build(ExponentSet::empty(&g)));
        let fun = build_funtg(&base.carrier).unwrap();
        assert_eq!(fun.cat().object_count(), base.cat().object_count());
        assert_eq!(fun.cat().morphism_count(), base.cat().morphism_count());
    }

    #[test]
    fn free_norm_on_chaotic_z2() {
        let smn = c2_free();
        let base = chaotic_z2(Smn::build(ExponentSet::empty(smn.group())));
        let (fun, d) = funtg_nsmc(&base, &smn, &ChoiceContext::canonical(smn.group())).unwrap();
        let dg = &fun.diagrams.diagrams;
        for a in 0..4 {
            for b in 0..4 {
                let out = &dg[d.norms[0].functor.on_ob(d.cat(), &[a, b])];
                // at x = e: C_e + D_e; at x = g = e·g: σ(g)⁻¹ swaps the order
                assert_eq!(out.ob[0], (dg[a].ob[0] + dg[b].ob[0]) % 2);
                assert_eq!(out.ob[1], (dg[b].ob[1] + dg[a].ob[1]) % 2);
            }
        }
        let r = validate_nsmc(&d);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn untwistor_at_g_is_the_braiding() {
        let smn = c2_free();
        let base = sign_z2(Smn::build(ExponentSet::empty(smn.group())));
        let (fun, d) = funtg_nsmc(&base, &smn, &ChoiceContext::canonical(smn.group())).unwrap();
        let dg = &fun.diagrams.diagrams;
        for (k, xs) in all_tuples(d.nob(), 2).iter().enumerate() {
            let comps = &fun.diagrams.components[d.norms[0].upsilon[k]];
            let (a, b) = (dg[xs[0]].ob[1], dg[xs[1]].ob[1]);
            assert_eq!(comps[1], base.beta_at(b, a), "υ at g is (12) on (C^2_g, C^1_g)");
            assert!(base.cat().is_identity(comps[0]), "υ at e is the identity");
        }
        let r = validate_nsmc(&d);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn trivial_exponent_gives_levelwise_tensor() {
        let g = FiniteGroup::cyclic(2);
        let smn = Smn::build(ExponentSet::new(&g, vec![("triv".into(), Exponent::trivial(&g, g.whole(), 2))]).unwrap());
        let base = sign_z2(Smn::build(ExponentSet::empty(&g)));
        let (_, d) = funtg_nsmc(&base, &smn, &ChoiceContext::canonical(&g)).unwrap();
        assert_eq!(d.norms[0].functor, d.tensor, "σ is trivial, so ⊗_S = ⊗_2");
        assert!(d.norms[0].upsilon.iter().all(|&f| d.cat().is_identity(f)));
    }

    #[test]
    fn operad_route_agrees_with_direct_formulas() {
        let smn = c2_free();
        let base = sign_z2(Smn::build(ExponentSet::empty(smn.group())));
        let (_, direct) = funtg_nsmc(&base, &smn, &ChoiceContext::canonical(smn.group())).unwrap();
        let (_, pulled) = operad_pullback_nsmc(&base, &smn).unwrap();
        assert!(validate_nsmc(&pulled).passed());
        assert_eq!(direct, pulled, "with least-element representatives the two routes coincide");
    }

    #[test]
    fn discrete_target_is_never_equivalent() {
        let g = FiniteGroup::cyclic(2);
        for c in [FiniteCategory::discrete(vec!["0".into(), "1".into()]), FiniteCategory::chaotic(vec!["0".into(), "1".into()])] {
            let r = discrete_obstruction(&c, &g, 2).unwrap();
            assert!(r.passed(), "{r}");
        }
        // the discrete target itself: a moving object exists
        let d = discrete_functions(Smn::build(ExponentSet::empty(&g)), 2);
        assert!((0..4).any(|x| d.carrier.ob(1, x) != x));
    }
}
