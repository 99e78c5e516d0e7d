//! Fixed points of `Fun(TG, C)` and the comparison with categories of
//! H-actions: the functors `ev_e`, `(-)^`, `r^*`, `s^*`, `Tπ^*`, `q`, the
//! twisted diagonal, and exhaustive checks of the two comparison diagrams
//! (H-fixed points, and norms versus `N_K^H`).

use std::collections::HashMap;

use crate::fincat::{FiniteCategory, Morphism, NormedSmc};
use crate::groups::Subgroup;
use crate::gsets::Exponent;
use crate::report::{Check, Report};

use super::choices::ChoiceContext;
use super::pushforward::{hhr_norm, Pushforward};
use super::shapes::{natural_iso_errors, CatFunctor, Diagram, DiagramCategory, TranslationCategory, MAX_MORPHISMS, MAX_OBJECT_TUPLES};
use super::structure::{build_funtg, funtg_norm, FunTG};
use super::FuntgError;

/// Every category and functor of the H-fixed-point comparison, built from
/// one set of G/H representatives.
#[derive(Clone, Debug)]
pub struct FixedPointBundle {
    pub h: Subgroup,
    pub g_reps: Vec<usize>,
    pub point_shape: TranslationCategory,
    pub coset_shape: TranslationCategory,
    /// `C_H`: H-actions in C and all maps.
    pub actions: DiagramCategory,
    /// `HC`: H-actions and H-maps.
    pub equivariant: DiagramCategory,
    /// `⟨HC = C⟩`: the full subcategory on H-fixed functors.
    pub full: DiagramCategory,
    /// `Fun(TG, C)^H`.
    pub fixed: DiagramCategory,
    /// `Fun(T(G/H), C)`.
    pub cosets: DiagramCategory,
    pub ev_e: CatFunctor,
    pub ev_e_fixed: CatFunctor,
    pub hat: CatFunctor,
    pub hat_fixed: CatFunctor,
    /// `(-)^ : C_H -> Fun(TG, C)`.
    pub hat_total: CatFunctor,
    pub r_star: CatFunctor,
    pub s_star: CatFunctor,
    pub tpi_star: CatFunctor,
    pub q: CatFunctor,
    pub full_in_fun: CatFunctor,
    pub fixed_in_full: CatFunctor,
    pub equivariant_in_actions: CatFunctor,
}

fn invalid(e: String) -> FuntgError {
    FuntgError::Invalid(e)
}

/// `Ĉ = C ∘ r ∘ Tπ`: value `C(*)` everywhere, `k: x -> kx` goes to
/// `C(g_j⁻¹ k g_i)`; on maps `f^_x = D(h) ∘ f ∘ C(h)⁻¹` for `x = g_i h`.
fn hat_functor(fun: &FunTG, c: &FiniteCategory, h: &Subgroup, reps: &[usize], point: &TranslationCategory, src: &DiagramCategory, tgt: &DiagramCategory) -> Result<CatFunctor, String> {
    let g = fun.shape.group();
    let split = |x: usize| g.coset_decompose(reps, h, x);
    src.map_to(
        tgt,
        |_, a| Diagram {
            ob: vec![a.ob[0]; g.order()],
            mor: (0..fun.shape.cat.morphism_count())
                .map(|m| {
                    let (k, x) = fun.shape.arrow_parts(m);
                    let (i, j) = (split(x).0, split(g.mul(k, x)).0);
                    a.mor[point.arrow(g.mul(g.inv(reps[j]), g.mul(k, reps[i])), 0)]
                })
                .collect(),
        },
        |f| {
            let (a, b) = (&src.diagrams[src.cat.dom(f)], &src.diagrams[src.cat.cod(f)]);
            g.elements()
                .map(|x| {
                    let arrow = point.arrow(split(x).1, 0);
                    c.chain(&[c.inverse(a.mor[arrow]).expect("actions are by isomorphisms"), src.components[f][0], b.mor[arrow]])
                })
                .collect()
        },
    )
}

/// Builds the bundle for `H ≤ G` from the G/H representatives in `ctx`.
pub fn fixed_point_functors(fun: &FunTG, c: &FiniteCategory, h: &Subgroup, ctx: &ChoiceContext) -> Result<FixedPointBundle, FuntgError> {
    let g = fun.shape.group().clone();
    let reps = ctx.g_reps(h);
    let point = TranslationCategory::point(&g, h);
    let coset_shape = TranslationCategory::of_cosets(&g, &g.whole(), h, &reps);
    let actions = DiagramCategory::build(&point, c, false)?;
    let equivariant = DiagramCategory::build(&point, c, true)?;
    let cosets = DiagramCategory::build(&coset_shape, c, true)?;
    let fixed_ob = |d: usize| h.elements.iter().all(|&x| fun.carrier.ob(x, d) == d);
    let fixed_mor = |f: usize| h.elements.iter().all(|&x| fun.carrier.mor(x, f) == f);
    let full = fun.diagrams.restrict(c, fixed_ob, |_| true);
    let fixed = fun.diagrams.restrict(c, fixed_ob, fixed_mor);
    let full_in_fun = full.inclusion_into(&fun.diagrams);
    let fixed_in_full = fixed.inclusion_into(&full);
    let equivariant_in_actions = equivariant.inclusion_into(&actions);

    let tg = &fun.shape;
    let ev = |src: &DiagramCategory, tgt: &DiagramCategory| {
        src.map_to(
            tgt,
            |_, d| Diagram { ob: vec![d.ob[0]], mor: h.elements.iter().map(|&k| d.mor[tg.arrow(k, 0)]).collect() },
            |f| vec![src.components[f][0]],
        )
    };
    let ev_e = ev(&full, &actions).map_err(invalid)?;
    let ev_e_fixed = ev(&fixed, &equivariant).map_err(invalid)?;
    let hat = hat_functor(fun, c, h, &reps, &point, &actions, &full).map_err(invalid)?;
    let hat_fixed = hat_functor(fun, c, h, &reps, &point, &equivariant, &fixed).map_err(invalid)?;
    let hat_total = hat_functor(fun, c, h, &reps, &point, &actions, &fun.diagrams).map_err(invalid)?;

    let r_star = equivariant.precompose(&cosets, &coset_shape.retraction(&reps, &point)).map_err(invalid)?;
    let base_point = g.coset_decompose(&reps, h, g.identity()).0;
    let s_star = cosets.precompose(&equivariant, &point.stabilizer_inclusion(&coset_shape, base_point)).map_err(invalid)?;
    let pi: Vec<usize> = g.elements().map(|x| g.coset_decompose(&reps, h, x).0).collect();
    let tpi_star = cosets.precompose(&fixed, &tg.induced(&coset_shape, &pi)).map_err(invalid)?;
    // q factors an H-fixed functor through Tπ, evaluating at the representatives
    let q = fixed
        .map_to(
            &cosets,
            |_, d| Diagram {
                ob: reps.iter().map(|&r| d.ob[r]).collect(),
                mor: (0..coset_shape.cat.morphism_count())
                    .map(|m| {
                        let (k, i) = coset_shape.arrow_parts(m);
                        d.mor[tg.arrow(k, reps[i])]
                    })
                    .collect(),
            },
            |f| reps.iter().map(|&r| fixed.components[f][r]).collect(),
        )
        .map_err(invalid)?;
    Ok(FixedPointBundle {
        h: h.clone(),
        g_reps: reps,
        point_shape: point,
        coset_shape,
        actions,
        equivariant,
        full,
        fixed,
        cosets,
        ev_e,
        ev_e_fixed,
        hat,
        hat_fixed,
        hat_total,
        r_star,
        s_star,
        tpi_star,
        q,
        full_in_fun,
        fixed_in_full,
        equivariant_in_actions,
    })
}

fn equal(check: &mut Check, left: &CatFunctor, right: &CatFunctor, src: &FiniteCategory, what: &str) {
    let diff = left.difference(right, src);
    check.test(diff.is_none(), || format!("{what}: {}", diff.unwrap_or_default()));
}

fn iso(check: &mut Check, src: &FiniteCategory, tgt: &FiniteCategory, f: &CatFunctor, g: &CatFunctor, theta: Option<Vec<usize>>, what: &str) {
    match theta {
        None => check.fail(format!("{what}: a component is not a morphism of the target")),
        Some(theta) => {
            let e = natural_iso_errors(src, tgt, f, g, &theta);
            check.test(e.is_none(), || format!("{what}: {}", e.unwrap_or_default()));
        }
    }
}

/// Components `θ_D : (ev_e D)^ -> D` with `θ_x = D(e -> g_i)` for
/// `x ∈ g_i H`, looked up in `target` (whose objects are indexed by `obs`).
fn theta(fun: &FunTG, b: &FixedPointBundle, src: &DiagramCategory, target: &DiagramCategory, from: &CatFunctor, to: &CatFunctor) -> Option<Vec<usize>> {
    let g = fun.shape.group();
    (0..src.diagrams.len())
        .map(|d| {
            let diag = &src.diagrams[d];
            let comps: Vec<usize> = g.elements().map(|x| diag.mor[fun.shape.arrow(b.g_reps[g.coset_decompose(&b.g_reps, &b.h, x).0], 0)]).collect();
            target.morphism_of(from.ob[d], to.ob[d], &comps)
        })
        .collect()
}

/// The H-fixed-point comparison: strict triangles and squares, the stated
/// identities, and the stated isomorphisms with exhibited components.
pub fn verify_fixed_points(fun: &FunTG, b: &FixedPointBundle, tag: &str) -> Report {
    let mut report = Report::new("H-fixed points of Fun(TG, C) are H-actions in C", format!("exhaustive, H = {:?}", b.h.elements));
    let id = |s: &str| format!("{s}[{tag}]");
    let mut functors = Check::new(id("functors"));
    let fcat = &fun.diagrams.cat;
    for (name, f, src, tgt) in [
        ("ev_e", &b.ev_e, &b.full.cat, &b.actions.cat),
        ("ev_e on fixed points", &b.ev_e_fixed, &b.fixed.cat, &b.equivariant.cat),
        ("hat", &b.hat, &b.actions.cat, &b.full.cat),
        ("hat on HC", &b.hat_fixed, &b.equivariant.cat, &b.fixed.cat),
        ("hat into Fun", &b.hat_total, &b.actions.cat, fcat),
        ("r*", &b.r_star, &b.equivariant.cat, &b.cosets.cat),
        ("s*", &b.s_star, &b.cosets.cat, &b.equivariant.cat),
        ("Tπ*", &b.tpi_star, &b.cosets.cat, &b.fixed.cat),
        ("q", &b.q, &b.fixed.cat, &b.cosets.cat),
    ] {
        let e = f.errors(src, tgt);
        functors.test(e.is_none(), || format!("{name}: {}", e.unwrap_or_default()));
    }
    report.push(functors);

    let mut lower_hat = Check::new(id("lower-triangle-hat"));
    equal(&mut lower_hat, &b.hat_fixed, &b.tpi_star.after(&b.r_star), &b.equivariant.cat, "hat vs Tπ*∘r*");
    report.push(lower_hat);
    let mut lower_ev = Check::new(id("lower-triangle-ev"));
    equal(&mut lower_ev, &b.ev_e_fixed, &b.s_star.after(&b.q), &b.fixed.cat, "ev_e vs s*∘q");
    report.push(lower_ev);
    let mut middle = Check::new(id("middle-squares"));
    equal(&mut middle, &b.fixed_in_full.after(&b.hat_fixed), &b.hat.after(&b.equivariant_in_actions), &b.equivariant.cat, "hat square");
    equal(&mut middle, &b.equivariant_in_actions.after(&b.ev_e_fixed), &b.ev_e.after(&b.fixed_in_full), &b.fixed.cat, "ev_e square");
    report.push(middle);
    let mut top = Check::new(id("top-triangle-hat"));
    equal(&mut top, &b.hat_total, &b.full_in_fun.after(&b.hat), &b.actions.cat, "hat into Fun vs inclusion∘hat");
    report.push(top);

    let mut top_iso = Check::new(id("top-triangle-ev-iso"));
    let around = b.hat_total.after(&b.ev_e);
    iso(&mut top_iso, &b.full.cat, fcat, &around, &b.full_in_fun, theta(fun, b, &b.full, &fun.diagrams, &around, &b.full_in_fun), "hat∘ev_e ≅ inclusion");
    report.push(top_iso.with_note("θ_x = D(e -> g_i) for x in g_i H"));

    let mut ev_hat = Check::new(id("ev-hat-identity"));
    equal(&mut ev_hat, &b.ev_e.after(&b.hat), &CatFunctor::identity(&b.actions.cat), &b.actions.cat, "on C_H");
    equal(&mut ev_hat, &b.ev_e_fixed.after(&b.hat_fixed), &CatFunctor::identity(&b.equivariant.cat), &b.equivariant.cat, "on HC");
    report.push(ev_hat);

    let mut hat_ev = Check::new(id("hat-ev-iso"));
    let he = b.hat.after(&b.ev_e);
    let idf = CatFunctor::identity(&b.full.cat);
    iso(&mut hat_ev, &b.full.cat, &b.full.cat, &he, &idf, theta(fun, b, &b.full, &b.full, &he, &idf), "on the full subcategory");
    let he = b.hat_fixed.after(&b.ev_e_fixed);
    let idx = CatFunctor::identity(&b.fixed.cat);
    iso(&mut hat_ev, &b.fixed.cat, &b.fixed.cat, &he, &idx, theta(fun, b, &b.fixed, &b.fixed, &he, &idx), "on the fixed points");
    report.push(hat_ev);

    let mut sr = Check::new(id("s-r-identity"));
    equal(&mut sr, &b.s_star.after(&b.r_star), &CatFunctor::identity(&b.equivariant.cat), &b.equivariant.cat, "s*∘r*");
    report.push(sr);
    let mut rs = Check::new(id("r-s-iso"));
    let g = fun.shape.group();
    let base_point = g.coset_decompose(&b.g_reps, &b.h, g.identity()).0;
    let rs_f = b.r_star.after(&b.s_star);
    let idc = CatFunctor::identity(&b.cosets.cat);
    // ψ_i = X(g_i: eH -> g_i H)
    let psi: Option<Vec<usize>> = (0..b.cosets.diagrams.len())
        .map(|x| {
            let d = &b.cosets.diagrams[x];
            let comps: Vec<usize> = b.g_reps.iter().map(|&r| d.mor[b.coset_shape.arrow(r, base_point)]).collect();
            b.cosets.morphism_of(rs_f.ob[x], x, &comps)
        })
        .collect();
    iso(&mut rs, &b.cosets.cat, &b.cosets.cat, &rs_f, &idc, psi, "r*∘s* ≅ id");
    report.push(rs.with_note("ψ_i = X(g_i: eH -> g_i H)"));

    let mut qt = Check::new(id("q-tpi-inverse"));
    equal(&mut qt, &b.q.after(&b.tpi_star), &idc, &b.cosets.cat, "q∘Tπ*");
    equal(&mut qt, &b.tpi_star.after(&b.q), &CatFunctor::identity(&b.fixed.cat), &b.fixed.cat, "Tπ*∘q");
    report.push(qt);
    report
}

/// `(Fun(TG, C)^{×H/K})^H` for the twisted diagonal action
/// `h·(C^1, …) = (h C^{σ(h)⁻¹1}, …)`.
#[derive(Clone, Debug)]
pub struct TwistedPower {
    pub cat: FiniteCategory,
    pub objects: Vec<Vec<usize>>,
    pub morphisms: Vec<Vec<usize>>,
    ob_index: HashMap<Vec<usize>, usize>,
    mor_index: HashMap<Vec<usize>, usize>,
}

impl TwistedPower {
    pub fn build(fun: &FunTG, s: &Exponent) -> Result<Self, FuntgError> {
        let fc = fun.cat();
        let n = s.size();
        let tuples = fc.object_count().checked_pow(n as u32).unwrap_or(usize::MAX);
        if tuples > MAX_OBJECT_TUPLES {
            return Err(FuntgError::TooLarge { what: "object tuples of the power".into(), size: tuples, limit: MAX_OBJECT_TUPLES });
        }
        let fixed = |t: &[usize], act: &dyn Fn(usize, usize) -> usize| {
            s.subgroup.elements.iter().all(|&h| {
                let si = s.sigma(h).inverse();
                (0..n).all(|j| act(h, t[si.apply(j)]) == t[j])
            })
        };
        let objects: Vec<Vec<usize>> = crate::fincat::all_tuples(fc.object_count(), n).into_iter().filter(|t| fixed(t, &|h, x| fun.carrier.ob(h, x))).collect();
        let ob_index: HashMap<Vec<usize>, usize> = objects.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut morphisms = Vec::new();
        let mut arrows = Vec::new();
        for (a, src) in objects.iter().enumerate() {
            for (b, tgt) in objects.iter().enumerate() {
                let homs: Vec<&[usize]> = (0..n).map(|j| fc.hom(src[j], tgt[j])).collect();
                let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
                for hs in &homs {
                    partial = partial.into_iter().flat_map(|p| hs.iter().map(move |&f| [p.clone(), vec![f]].concat())).collect();
                }
                for t in partial {
                    if fixed(&t, &|h, f| fun.carrier.mor(h, f)) {
                        arrows.push(Morphism { name: format!("{t:?}"), dom: a, cod: b });
                        morphisms.push(t);
                        if morphisms.len() > MAX_MORPHISMS {
                            return Err(FuntgError::TooLarge { what: "morphisms of the power".into(), size: morphisms.len(), limit: MAX_MORPHISMS });
                        }
                    }
                }
            }
        }
        let mor_index: HashMap<Vec<usize>, usize> = morphisms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let identities = objects.iter().map(|t| mor_index[&t.iter().map(|&x| fc.id(x)).collect::<Vec<_>>()]).collect();
        let mut composition = HashMap::new();
        for (f, tf) in morphisms.iter().enumerate() {
            for (g, tg) in morphisms.iter().enumerate() {
                if arrows[g].dom == arrows[f].cod {
                    let comp: Vec<usize> = tg.iter().zip(tf).map(|(&y, &x)| fc.comp(y, x)).collect();
                    composition.insert((g, f), mor_index[&comp]);
                }
            }
        }
        let names = objects.iter().map(|t| format!("{:?}", t.iter().map(|&x| fc.objects[x].as_str()).collect::<Vec<_>>())).collect();
        let cat = FiniteCategory::new_unchecked(names, arrows, identities, composition).map_err(|e| FuntgError::Invalid(e.to_string()))?;
        Ok(TwistedPower { cat, objects, morphisms, ob_index, mor_index })
    }

    pub fn object_of(&self, t: &[usize]) -> Option<usize> {
        self.ob_index.get(t).copied()
    }

    pub fn morphism_of(&self, t: &[usize]) -> Option<usize> {
        self.mor_index.get(t).copied()
    }
}

/// The comparison between `⊗_{H/K}` on fixed points and `N_K^H`.
pub fn verify_norm_square(base: &NormedSmc, fun: &FunTG, k: &Subgroup, h: &Subgroup, ctx: &ChoiceContext) -> Result<Report, FuntgError> {
    let mut report = Report::new("norms on Fun(TG, C) restrict to the norms N_K^H", format!("exhaustive, K = {:?}, H = {:?}", k.elements, h.elements));
    let g = fun.shape.group().clone();
    let c = base.cat();
    let hk_reps = ctx.reps(h, k);
    let ctx_k = ctx.clone().with_reps(&g.whole(), k, ctx.lex_reps(h, k))?;
    let bh = fixed_point_functors(fun, c, h, ctx)?;
    let bk = fixed_point_functors(fun, c, k, &ctx_k)?;
    let s = Exponent::coset_space_with_reps(&g, h, k, &hk_reps);
    let power = TwistedPower::build(fun, &s)?;
    let dg = &fun.diagrams;

    let mut functors = Check::new("functors");
    let ev_k = {
        let ob: Option<Vec<usize>> = power.objects.iter().map(|t| bk.fixed.object_of(&dg.diagrams[t[0]])).collect();
        let ob = ob.ok_or_else(|| invalid("the first coordinate of a fixed tuple is not K-fixed".into()))?;
        let mor: Option<Vec<usize>> = (0..power.morphisms.len())
            .map(|f| bk.fixed.morphism_of(ob[power.cat.dom(f)], ob[power.cat.cod(f)], &dg.components[power.morphisms[f][0]]))
            .collect();
        CatFunctor { ob, mor: mor.ok_or_else(|| invalid("the first coordinate of a fixed morphism is not K-fixed".into()))? }
    };
    let fixed_k_in_fun = bk.full_in_fun.after(&bk.fixed_in_full);
    let delta = {
        let ob: Option<Vec<usize>> =
            fixed_k_in_fun.ob.iter().map(|&x| power.object_of(&hk_reps.iter().map(|&r| fun.carrier.ob(r, x)).collect::<Vec<_>>())).collect();
        let mor: Option<Vec<usize>> =
            fixed_k_in_fun.mor.iter().map(|&f| power.morphism_of(&hk_reps.iter().map(|&r| fun.carrier.mor(r, f)).collect::<Vec<_>>())).collect();
        match (ob, mor) {
            (Some(ob), Some(mor)) => Some(CatFunctor { ob, mor }),
            _ => None,
        }
    };
    let tables = funtg_norm(fun, base, &s, &ctx.g_reps(h));
    let fh_in_fun = bh.full_in_fun.after(&bh.fixed_in_full);
    let back: HashMap<usize, usize> = fh_in_fun.ob.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let norm_h = {
        let ob: Option<Vec<usize>> = power.objects.iter().map(|t| back.get(&tables.functor.on_ob(fun.cat(), t)).copied()).collect();
        ob.and_then(|ob| {
            let mor: Option<Vec<usize>> = power
                .morphisms
                .iter()
                .enumerate()
                .map(|(f, t)| {
                    let m = tables.functor.on_mor(fun.cat(), t);
                    bh.fixed.morphism_of(ob[power.cat.dom(f)], ob[power.cat.cod(f)], &dg.components[m])
                })
                .collect();
            mor.map(|mor| CatFunctor { ob, mor })
        })
    };
    let coset_of_h: Vec<usize> = ctx_k.g_reps(k).iter().map(|&x| g.coset_decompose(&bh.g_reps, h, x).0).collect();
    let push = Pushforward::new(&bk.coset_shape.cat, &bh.coset_shape.cat, bk.coset_shape.induced(&bh.coset_shape, &coset_of_h), None)?;
    let p_star = push.functor(base, &bk.coset_shape, &bh.coset_shape, &bk.cosets, &bh.cosets).map_err(invalid)?;
    let n = hhr_norm(base, ctx, h, k)?;
    if n.kc.diagrams != bk.equivariant.diagrams || n.hc.diagrams != bh.equivariant.diagrams {
        return Err(invalid("categories of actions were enumerated inconsistently".into()));
    }
    for (name, f, src, tgt) in [("ev_K", Some(&ev_k), &power.cat, &bk.fixed.cat), ("p⊗", Some(&p_star), &bk.cosets.cat, &bh.cosets.cat), ("N_K^H", Some(&n.functor), &bk.equivariant.cat, &bh.equivariant.cat)] {
        let e = f.and_then(|f| f.errors(src, tgt));
        functors.test(e.is_none(), || format!("{name}: {}", e.unwrap_or_default()));
    }
    let mut lands = Check::new("twisted-diagonal-lands-in-fixed-tuples");
    lands.test(delta.is_some(), || "some Δtw(C) is not a fixed tuple".into());
    report.push(functors);
    report.push(lands);
    let mut lands_h = Check::new("norm-preserves-fixed-points");
    lands_h.test(norm_h.is_some(), || "⊗_{H/K} of a fixed tuple is not H-fixed".into());
    report.push(lands_h);
    let (Some(delta), Some(norm_h)) = (delta, norm_h) else {
        return Ok(report);
    };

    let mut inverse = Check::new("twisted-diagonal-inverse");
    equal(&mut inverse, &ev_k.after(&delta), &CatFunctor::identity(&bk.fixed.cat), &bk.fixed.cat, "ev_K∘Δtw");
    equal(&mut inverse, &delta.after(&ev_k), &CatFunctor::identity(&power.cat), &power.cat, "Δtw∘ev_K");
    report.push(inverse);
    for (tag, b) in [("K", &bk), ("H", &bh)] {
        let mut qt = Check::new(format!("tpi-q-inverse[{tag}]"));
        let idc = CatFunctor::identity(&b.cosets.cat);
        equal(&mut qt, &b.q.after(&b.tpi_star), &idc, &b.cosets.cat, "q∘Tπ*");
        equal(&mut qt, &b.tpi_star.after(&b.q), &CatFunctor::identity(&b.fixed.cat), &b.fixed.cat, "Tπ*∘q");
        report.push(qt);
        let mut rs = Check::new(format!("r-s-equivalence[{tag}]"));
        equal(&mut rs, &b.s_star.after(&b.r_star), &CatFunctor::identity(&b.equivariant.cat), &b.equivariant.cat, "s*∘r*");
        report.push(rs);
    }
    let mut top = Check::new("top-square");
    equal(&mut top, &bh.q.after(&norm_h), &p_star.after(&bk.q).after(&ev_k), &power.cat, "q∘⊗ vs p⊗∘q∘ev_K");
    report.push(top);
    let mut top_pull = Check::new("top-square-pullbacks");
    equal(&mut top_pull, &norm_h.after(&delta).after(&bk.tpi_star), &bh.tpi_star.after(&p_star), &bk.cosets.cat, "⊗∘Δtw∘Tπ* vs Tπ*∘p⊗");
    report.push(top_pull);
    let mut bottom = Check::new("bottom-square");
    equal(&mut bottom, &bh.s_star.after(&p_star).after(&bk.r_star), &n.functor, &bk.equivariant.cat, "s*∘p⊗∘r* vs N_K^H");
    report.push(bottom);
    let mut around = Check::new("norm-restricts-to-hhr-norm");
    let loop_f = bh.s_star.after(&bh.q).after(&norm_h).after(&delta).after(&bk.tpi_star).after(&bk.r_star);
    equal(&mut around, &loop_f, &n.functor, &bk.equivariant.cat, "s*∘q∘⊗∘Δtw∘Tπ*∘r* vs N_K^H");
    report.push(around);
    Ok(report)
}

/// Both comparison theorems for `K ≤ H ≤ G`, with the representative
/// choices of `ctx`. Skipped, with a note, when C has a nontrivial action.
pub fn verify_funtg_theorems(base: &NormedSmc, k: &Subgroup, h: &Subgroup, ctx: &ChoiceContext) -> Result<Report, FuntgError> {
    if !k.is_subset_of(h) {
        return Err(FuntgError::Invalid("K must be contained in H".into()));
    }
    let fun = build_funtg(&base.carrier)?;
    let mut report = Report::new("fixed points and norms of Fun(TG, C)", format!("|G| = {}, exhaustive", fun.shape.group().order()));
    if !fun.trivial_base_action {
        let skipped = Check::new("fixed-point-theorems").with_note("skipped: C carries a nontrivial action, so fixed points are not categories of actions");
        report.push(skipped);
        return Ok(report);
    }
    let c = base.cat();
    report.extend(verify_fixed_points(&fun, &fixed_point_functors(&fun, c, h, ctx)?, "H"));
    let ctx_k = ctx.clone().with_reps(&ctx.group.whole(), k, ctx.lex_reps(h, k))?;
    report.extend(verify_fixed_points(&fun, &fixed_point_functors(&fun, c, k, &ctx_k)?, "K"));
    report.extend(verify_norm_square(base, &fun, k, h, ctx)?);
    Ok(report)
}

/// Builds `r` from `ctx_r` and `(-)^` from `ctx_hat`: the strict triangle
/// `(-)^ = Tπ^* ∘ r^*` holds only when the choices agree, while the natural
/// isomorphism `φ_x = C(g'⁻¹ g)` (g, g' the two representatives of xH)
/// always exists.
pub fn choice_sensitivity(base: &NormedSmc, h: &Subgroup, ctx_r: &ChoiceContext, ctx_hat: &ChoiceContext) -> Result<Report, FuntgError> {
    let fun = build_funtg(&base.carrier)?;
    let c = base.cat();
    let g = fun.shape.group();
    let b = fixed_point_functors(&fun, c, h, ctx_r)?;
    let reps2 = ctx_hat.g_reps(h);
    let hat2 = hat_functor(&fun, c, h, &reps2, &b.point_shape, &b.equivariant, &b.fixed).map_err(invalid)?;
    let mut report = Report::new("coset choices for r and the hat functor", format!("G/H representatives {:?} and {:?}", b.g_reps, reps2));
    let pulled = b.tpi_star.after(&b.r_star);
    let mut strict = Check::new("strict-lower-triangle");
    equal(&mut strict, &hat2, &pulled, &b.equivariant.cat, "hat vs Tπ*∘r*");
    report.push(strict);
    let mut up_to_iso = Check::new("lower-triangle-up-to-iso");
    let phi: Option<Vec<usize>> = (0..b.equivariant.diagrams.len())
        .map(|a| {
            let d = &b.equivariant.diagrams[a];
            let comps: Vec<usize> = g
                .elements()
                .map(|x| {
                    let (r1, r2) = (b.g_reps[g.coset_decompose(&b.g_reps, h, x).0], reps2[g.coset_decompose(&reps2, h, x).0]);
                    d.mor[b.point_shape.arrow(g.mul(g.inv(r2), r1), 0)]
                })
                .collect();
            b.fixed.morphism_of(pulled.ob[a], hat2.ob[a], &comps)
        })
        .collect();
    iso(&mut up_to_iso, &b.equivariant.cat, &b.fixed.cat, &pulled, &hat2, phi, "Tπ*∘r* ≅ hat");
    report.push(up_to_iso);
    Ok(report)
}
