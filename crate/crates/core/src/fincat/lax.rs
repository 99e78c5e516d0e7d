//! Lax, strong and strict normed functors, their unique extension to lax
//! morphisms of SM_N-algebras, and monoidal transformations checked both
//! through the comparison squares and through the operad-side condition.
//!
//! A functor `F: C -> D` is stored as tables over C. Comparison maps are
//! morphisms of D indexed by object tuples of C:
//! `F_e: e -> F e`, `F_⊗(x, y): Fx ⊗ Fy -> F(x ⊗ y)` at `x·|Ob C| + y`,
//! and `F_T(X): ⊗_T(FX) -> F ⊗_T(X)` at the big-endian index of X.

use std::fmt;

use crate::free_operad::{act, enumerate_trees_bounded, gamma, Tree};
use crate::groups::Permutation;
use crate::report::{Check, Report};
use crate::smn::{standard_tensor, steps_from, GeneratorLabel, Smn};

use super::category::{all_tuples, tuple_index, FiniteCategory};
use super::coherence::Bounds;
use super::nsmc::{Components, NormedSmc};

/// Trees on which operad-side conditions are checked: arity ≤ 3, depth ≤ 2.
pub const OPERAD_BOUNDS: Bounds = Bounds { depth: 2, arity: 3, path_len: 1 };

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LaxFunctor {
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
    pub f_e: usize,
    pub f_tensor: Vec<usize>,
    /// One table per exponent, in the order of `smn.exponents.norms`.
    pub f_norms: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorClass {
    Lax,
    Strong,
    Strict,
}

impl fmt::Display for FunctorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorClass::Lax => "lax",
            FunctorClass::Strong => "strong",
            FunctorClass::Strict => "strict",
        })
    }
}

impl LaxFunctor {
    /// The identity functor with identity comparison data.
    pub fn identity(c: &NormedSmc) -> Self {
        let cat = c.cat();
        let n = c.nob();
        LaxFunctor {
            ob: (0..n).collect(),
            mor: (0..cat.morphism_count()).collect(),
            f_e: cat.id(c.unit),
            f_tensor: all_tuples(n, 2).iter().map(|v| cat.id(c.t_ob(v[0], v[1]))).collect(),
            f_norms: c
                .smn
                .exponents
                .norms
                .iter()
                .enumerate()
                .map(|(k, spec)| all_tuples(n, spec.exponent.size()).iter().map(|xs| cat.id(c.norms[k].functor.on_ob(cat, xs))).collect())
                .collect(),
        }
    }

    /// The functor between thin carriers with the given object map; every
    /// other table entry is the unique arrow (or `usize::MAX` when there is
    /// none, which validation then reports).
    pub fn thin(c: &NormedSmc, d: &NormedSmc, ob: impl Fn(usize) -> usize) -> LaxFunctor {
        let (cc, dc) = (c.cat(), d.cat());
        let arrow = |x: usize, y: usize| dc.hom(x, y).first().copied().unwrap_or(usize::MAX);
        let obs: Vec<usize> = (0..c.nob()).map(&ob).collect();
        let mor = (0..cc.morphism_count()).map(|m| arrow(obs[cc.dom(m)], obs[cc.cod(m)])).collect();
        let f_tensor = all_tuples(c.nob(), 2).iter().map(|v| arrow(d.t_ob(obs[v[0]], obs[v[1]]), obs[c.t_ob(v[0], v[1])])).collect();
        let f_norms = c
            .smn
            .exponents
            .norms
            .iter()
            .enumerate()
            .map(|(k, spec)| {
                all_tuples(c.nob(), spec.exponent.size())
                    .iter()
                    .map(|xs| {
                        let fx: Vec<usize> = xs.iter().map(|&x| obs[x]).collect();
                        arrow(d.norms[k].functor.on_ob(dc, &fx), obs[c.norms[k].functor.on_ob(cc, xs)])
                    })
                    .collect()
            })
            .collect();
        LaxFunctor { f_e: arrow(d.unit, obs[c.unit]), ob: obs, mor, f_tensor, f_norms }
    }

    /// Completes strong data by solving the untwistor square for the norm
    /// comparisons: `F_T = F(υ^C)⁻¹ ∘ F_{⊗n} ∘ υ^D`.
    pub fn strong_with_derived_norms(c: &NormedSmc, d: &NormedSmc, ob: Vec<usize>, mor: Vec<usize>, f_e: usize, f_tensor: Vec<usize>) -> Self {
        let mut f = LaxFunctor { ob, mor, f_e, f_tensor, f_norms: Vec::new() };
        let dc = d.cat();
        for (k, spec) in c.smn.exponents.norms.iter().enumerate() {
            let table = all_tuples(c.nob(), spec.exponent.size())
                .iter()
                .map(|xs| {
                    let fx = f.on_obs(xs);
                    let ups_d = d.norms[k].upsilon[tuple_index(&fx, d.nob())];
                    let ups_c = f.mor[c.norms[k].upsilon[tuple_index(xs, c.nob())]];
                    dc.chain(&[ups_d, f.tensor_n(c, d, xs), d.inv(ups_c)])
                })
                .collect();
            f.f_norms.push(table);
        }
        f
    }

    pub fn on_obs(&self, xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|&x| self.ob[x]).collect()
    }

    pub fn tensor_at(&self, c: &NormedSmc, x: usize, y: usize) -> usize {
        self.f_tensor[x * c.nob() + y]
    }

    pub fn norm_at(&self, c: &NormedSmc, k: usize, xs: &[usize]) -> usize {
        self.f_norms[k][tuple_index(xs, c.nob())]
    }

    /// `F_{⊗n}(X): ⊗_n(FX) -> F ⊗_n(X)`: `F_e` for n = 0, the identity for
    /// n = 1, then `F_⊗(⊗_n X, X_{n+1}) ∘ (F_{⊗n} ⊗ id)`.
    pub fn tensor_n(&self, c: &NormedSmc, d: &NormedSmc, xs: &[usize]) -> usize {
        let dc = d.cat();
        match xs.len() {
            0 => self.f_e,
            1 => dc.id(self.ob[xs[0]]),
            n => {
                let (init, last) = (&xs[..n - 1], xs[n - 1]);
                let inner = d.t_mor(self.tensor_n(c, d, init), dc.id(self.ob[last]));
                dc.comp(self.tensor_at(c, c.tensor_n_ob(init), last), inner)
            }
        }
    }

    fn comparisons(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.f_e).chain(self.f_tensor.iter().copied()).chain(self.f_norms.iter().flatten().copied())
    }

    pub fn classify(&self, d: &NormedSmc) -> FunctorClass {
        let dc = d.cat();
        if self.comparisons().all(|f| dc.is_identity(f)) {
            FunctorClass::Strict
        } else if self.comparisons().all(|f| dc.is_iso(f)) {
            FunctorClass::Strong
        } else {
            FunctorClass::Lax
        }
    }
}

fn show(xs: &[usize], c: &FiniteCategory) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| c.describe_object(x)).collect();
    format!("({})", names.join(", "))
}

type ObFn<'a> = &'a dyn Fn(&[usize]) -> usize;

/// Typing and naturality of a transformation between functors `C^n -> D`.
#[allow(clippy::too_many_arguments)]
fn check_natural(check: &mut Check, c: &FiniteCategory, d: &FiniteCategory, n: usize, src_ob: ObFn, tgt_ob: ObFn, src_mor: ObFn, tgt_mor: ObFn, comp: ObFn) {
    for xs in all_tuples(c.object_count(), n) {
        let f = comp(&xs);
        let ok = f < d.morphism_count() && d.dom(f) == src_ob(&xs) && d.cod(f) == tgt_ob(&xs);
        if !check.test(ok, || format!("component at {} has the wrong type", show(&xs, c))) {
            return;
        }
    }
    for fs in all_tuples(c.morphism_count(), n) {
        let dom: Vec<usize> = fs.iter().map(|&f| c.dom(f)).collect();
        let cod: Vec<usize> = fs.iter().map(|&f| c.cod(f)).collect();
        let ok = d.comp(tgt_mor(&fs), comp(&dom)) == d.comp(comp(&cod), src_mor(&fs));
        if !check.test(ok, || format!("naturality square fails at morphisms {fs:?}")) {
            return;
        }
    }
}

/// Exhaustive check of the lax normed functor axioms, ending with the
/// classification as a note.
pub fn validate_lax_functor(c: &NormedSmc, d: &NormedSmc, f: &LaxFunctor) -> Report {
    let mut report = Report::new("lax normed functor axioms", "exhaustive over all objects and morphisms");
    let (cc, dc) = (c.cat(), d.cat());
    let (gc, gd) = (&c.carrier, &d.carrier);
    let group = &gc.group;
    let n = c.nob();

    let mut functor = Check::new("functor");
    if f.ob.len() != n || f.mor.len() != cc.morphism_count() || f.ob.iter().any(|&y| y >= d.nob()) || f.mor.iter().any(|&m| m >= dc.morphism_count()) {
        functor.fail("object or morphism table has the wrong shape");
    } else {
        for m in 0..cc.morphism_count() {
            let ok = dc.dom(f.mor[m]) == f.ob[cc.dom(m)] && dc.cod(f.mor[m]) == f.ob[cc.cod(m)];
            functor.test(ok, || format!("F({}) has the wrong endpoints", cc.describe_morphism(m)));
        }
        for x in 0..n {
            functor.test(f.mor[cc.id(x)] == dc.id(f.ob[x]), || format!("F does not preserve the identity of {}", cc.objects[x]));
        }
        for (a, b) in cc.composable_pairs() {
            functor.test(f.mor[cc.comp(a, b)] == dc.comp(f.mor[a], f.mor[b]), || format!("F does not preserve {} after {}", cc.describe_morphism(a), cc.describe_morphism(b)));
        }
    }
    let functor_ok = functor.passed;
    report.push(functor);
    let shapes_ok = f.f_e < dc.morphism_count()
        && f.f_tensor.len() == n * n
        && f.f_norms.len() == c.norms.len()
        && f.f_norms.iter().zip(&c.smn.exponents.norms).all(|(t, spec)| t.len() == n.pow(spec.exponent.size() as u32))
        && f.comparisons().all(|m| m < dc.morphism_count());
    if !functor_ok || !shapes_ok {
        if !shapes_ok {
            let mut shapes = Check::new("comparison-shapes");
            shapes.fail("comparison tables have the wrong shape");
            report.push(shapes);
        }
        return report;
    }

    let mut gfun = Check::new("g-functor");
    for g in group.elements() {
        for x in 0..n {
            gfun.test(f.ob[gc.ob(g, x)] == gd.ob(g, f.ob[x]), || format!("F(g·{}) ≠ g·F({}) for g={g}", cc.objects[x], cc.objects[x]));
        }
        for m in 0..cc.morphism_count() {
            gfun.test(f.mor[gc.mor(g, m)] == gd.mor(g, f.mor[m]), || format!("F(g·{}) ≠ g·F for g={g}", cc.describe_morphism(m)));
        }
    }
    report.push(gfun);

    let mut unit = Check::new("unit-comparison-g-fixed");
    unit.test(dc.dom(f.f_e) == d.unit && dc.cod(f.f_e) == f.ob[c.unit], || "F_e is not a morphism e -> F e".into());
    for g in group.elements() {
        unit.test(gd.mor(g, f.f_e) == f.f_e, || format!("g={g} moves F_e = {}", dc.describe_morphism(f.f_e)));
    }
    report.push(unit);

    let mut tnat = Check::new("tensor-comparison-natural");
    check_natural(
        &mut tnat,
        cc,
        dc,
        2,
        &|xs| d.t_ob(f.ob[xs[0]], f.ob[xs[1]]),
        &|xs| f.ob[c.t_ob(xs[0], xs[1])],
        &|fs| d.t_mor(f.mor[fs[0]], f.mor[fs[1]]),
        &|fs| f.mor[c.t_mor(fs[0], fs[1])],
        &|xs| f.tensor_at(c, xs[0], xs[1]),
    );
    let tnat_ok = tnat.passed;
    report.push(tnat);

    let mut tg = Check::new("tensor-comparison-g-natural");
    for g in group.elements() {
        for v in all_tuples(n, 2) {
            let ok = gd.mor(g, f.tensor_at(c, v[0], v[1])) == f.tensor_at(c, gc.ob(g, v[0]), gc.ob(g, v[1]));
            tg.test(ok, || format!("g={g} at {}", show(&v, cc)));
        }
    }
    report.push(tg);

    let mut norms_ok = true;
    for (k, spec) in c.smn.exponents.norms.iter().enumerate() {
        let t = &spec.exponent;
        let size = t.size();
        let (nc, nd) = (&c.norms[k].functor, &d.norms[k].functor);
        let mut nat = Check::new(format!("norm-comparison-natural[{}]", spec.id));
        check_natural(
            &mut nat,
            cc,
            dc,
            size,
            &|xs| nd.on_ob(dc, &f.on_obs(xs)),
            &|xs| f.ob[nc.on_ob(cc, xs)],
            &|fs| nd.on_mor(dc, &fs.iter().map(|&m| f.mor[m]).collect::<Vec<_>>()),
            &|fs| f.mor[nc.on_mor(cc, fs)],
            &|xs| f.norm_at(c, k, xs),
        );
        norms_ok &= nat.passed;
        report.push(nat);

        // h F_T(X) = F_T(h X_{σ(h)⁻¹ •}): fixed under the graph subgroup
        let mut fixed = Check::new(format!("norm-comparison-gamma-fixed[{}]", spec.id));
        for &h in &t.subgroup.elements {
            let s = t.sigma(h).inverse();
            for xs in all_tuples(n, size) {
                let moved: Vec<usize> = (0..size).map(|j| gc.ob(h, xs[s.apply(j)])).collect();
                let ok = gd.mor(h, f.norm_at(c, k, &xs)) == f.norm_at(c, k, &moved);
                fixed.test(ok, || format!("h={h} at {}", show(&xs, cc)));
            }
        }
        report.push(fixed);
    }
    if !tnat_ok || !norms_ok {
        return report;
    }

    let fid = |x: usize| dc.id(f.ob[x]);
    let mut assoc = Check::new("associativity");
    for v in all_tuples(n, 3) {
        let (x, y, z) = (v[0], v[1], v[2]);
        let lhs = dc.chain(&[d.t_mor(f.tensor_at(c, x, y), fid(z)), f.tensor_at(c, c.t_ob(x, y), z), f.mor[c.alpha_at(x, y, z)]]);
        let rhs = dc.chain(&[d.alpha_at(f.ob[x], f.ob[y], f.ob[z]), d.t_mor(fid(x), f.tensor_at(c, y, z)), f.tensor_at(c, x, c.t_ob(y, z))]);
        if !assoc.test(lhs == rhs, || format!("at {}", show(&v, cc))) {
            break;
        }
    }
    report.push(assoc);

    let mut left = Check::new("left-unit");
    let mut right = Check::new("right-unit");
    for x in 0..n {
        let l = dc.chain(&[d.t_mor(f.f_e, fid(x)), f.tensor_at(c, c.unit, x), f.mor[c.lambda[x]]]);
        left.test(l == d.lambda[f.ob[x]], || format!("F(λ) ∘ F_⊗ ∘ (F_e ⊗ id) ≠ λ at {}", cc.objects[x]));
        let r = dc.chain(&[d.t_mor(fid(x), f.f_e), f.tensor_at(c, x, c.unit), f.mor[c.rho[x]]]);
        right.test(r == d.rho[f.ob[x]], || format!("F(ρ) ∘ F_⊗ ∘ (id ⊗ F_e) ≠ ρ at {}", cc.objects[x]));
    }
    report.push(left);
    report.push(right);

    let mut braid = Check::new("braiding");
    for v in all_tuples(n, 2) {
        let (x, y) = (v[0], v[1]);
        let lhs = dc.comp(f.mor[c.beta_at(x, y)], f.tensor_at(c, x, y));
        let rhs = dc.comp(f.tensor_at(c, y, x), d.beta_at(f.ob[x], f.ob[y]));
        braid.test(lhs == rhs, || format!("at {}", show(&v, cc)));
    }
    report.push(braid);

    for (k, spec) in c.smn.exponents.norms.iter().enumerate() {
        let mut square = Check::new(format!("untwistor-square[{}]", spec.id));
        for xs in all_tuples(n, spec.exponent.size()) {
            let fx = f.on_obs(&xs);
            let lhs = dc.comp(f.mor[c.norms[k].upsilon[tuple_index(&xs, n)]], f.norm_at(c, k, &xs));
            let rhs = dc.comp(f.tensor_n(c, d, &xs), d.norms[k].upsilon[tuple_index(&fx, d.nob())]);
            if !square.test(lhs == rhs, || format!("F(υ) ∘ F_T ≠ F_⊗n ∘ υ at {}", show(&xs, cc))) {
                break;
            }
        }
        report.push(square);
    }

    if report.passed() {
        let mut class = Check::new("classification");
        class.instances = 1;
        report.push(class.with_note(format!("class={}", f.classify(d))));
    }
    report
}

/// The lax SM_N-algebra morphism determined by a lax normed functor:
/// `(∂_n)_x: |x|_D ∘ F^n => F ∘ |x|_C`, defined on trees by the free
/// extension of the generator values.
pub struct OperadMorphism<'a> {
    pub c: &'a NormedSmc,
    pub d: &'a NormedSmc,
    pub f: &'a LaxFunctor,
}

impl<'a> OperadMorphism<'a> {
    pub fn new(c: &'a NormedSmc, d: &'a NormedSmc, f: &'a LaxFunctor) -> Self {
        OperadMorphism { c, d, f }
    }

    /// `(∂_n)_t` at the object tuple X of C.
    pub fn component(&self, t: &Tree, xs: &[usize]) -> usize {
        let (c, d, f) = (self.c, self.d, self.f);
        let dc = d.cat();
        match t {
            Tree::Leaf(i) => dc.id(f.ob[xs[i - 1]]),
            Tree::Node(l, cs) => {
                let inner: Vec<usize> = cs.iter().map(|u| self.component(u, xs)).collect();
                let ys: Vec<usize> = cs.iter().map(|u| c.eval_ob(u, xs)).collect();
                match c.smn.kinds[*l] {
                    GeneratorLabel::Unit => f.f_e,
                    GeneratorLabel::Tensor => dc.comp(f.tensor_at(c, ys[0], ys[1]), d.t_mor(inner[0], inner[1])),
                    GeneratorLabel::Norm { norm, rep } => {
                        // g_i F_T(g_i⁻¹ Y) ∘ g_i ⊗_T(g_i⁻¹ ∂)
                        let g = c.smn.exponents.norms[norm].reps[rep];
                        let gi = c.carrier.group.inv(g);
                        let moved: Vec<usize> = ys.iter().map(|&y| c.carrier.ob(gi, y)).collect();
                        let outer = d.carrier.mor(g, f.norm_at(c, norm, &moved));
                        dc.comp(outer, d.label_mor(*l, &inner))
                    }
                }
            }
        }
    }

    pub fn table(&self, t: &Tree) -> Components {
        all_tuples(self.c.nob(), t.arity()).iter().map(|xs| self.component(t, xs)).collect()
    }

    /// Evaluation at e, ⊗ and the norms `⊗_T` (identity coset representative).
    pub fn evaluate_at_generators(&self) -> LaxFunctor {
        let smn = &self.c.smn;
        let n = self.c.nob();
        let f_norms = smn
            .exponents
            .norms
            .iter()
            .enumerate()
            .map(|(k, spec)| {
                let rep = spec.reps.iter().position(|&g| g == smn.group().identity()).expect("a representative of the trivial coset");
                self.table(&Tree::corolla(smn.norm_label(k, rep), spec.exponent.size()))
            })
            .collect();
        LaxFunctor {
            ob: self.f.ob.clone(),
            mor: self.f.mor.clone(),
            f_e: self.component(&Tree::corolla(crate::smn::UNIT, 0), &[]),
            f_tensor: all_tuples(n, 2).iter().map(|xs| self.component(&Tree::corolla(crate::smn::TENSOR, 2), xs)).collect(),
            f_norms,
        }
    }

    /// `((g,σ)·θ)_X = g θ_{g⁻¹(X∘σ)}` on components indexed over C.
    fn act_table(&self, g: usize, sigma: &Permutation, theta: &Components, n: usize) -> Components {
        let (c, d) = (self.c, self.d);
        let gi = c.carrier.group.inv(g);
        all_tuples(c.nob(), n)
            .iter()
            .map(|xs| {
                let ys: Vec<usize> = (0..n).map(|j| c.carrier.ob(gi, xs[sigma.apply(j)])).collect();
                d.carrier.mor(g, theta[tuple_index(&ys, c.nob())])
            })
            .collect()
    }
}

fn universe(smn: &Smn, bounds: Bounds) -> Vec<Vec<Tree>> {
    (0..=bounds.arity).map(|n| enumerate_trees_bounded(&smn.gens, n, bounds.depth).expect("depth within the enumeration guard")).collect()
}

/// Extends a lax normed functor to the operad side and checks the result:
/// agreement on generators, conditions (identity, equivariance,
/// composition) of a lax algebra morphism, naturality in the tree along
/// every basic edge, and `∂_{⊗n} = F_{⊗n}`.
pub fn extend_lax_to_operad<'a>(c: &'a NormedSmc, d: &'a NormedSmc, f: &'a LaxFunctor, bounds: Bounds) -> (OperadMorphism<'a>, Report) {
    let m = OperadMorphism::new(c, d, f);
    let mut report = Report::new("lax functors extend uniquely to lax algebra morphisms", bounds.to_string());
    let (cc, dc) = (c.cat(), d.cat());
    let smn = &c.smn;
    let trees = universe(smn, bounds);

    let mut gens = Check::new("generator-values");
    let back = m.evaluate_at_generators();
    gens.test(back == *f, || "evaluation at generators does not return the comparison data".into());
    report.push(gens);

    let mut ident = Check::new("identity");
    ident.test(m.table(&Tree::Leaf(1)) == (0..c.nob()).map(|x| dc.id(f.ob[x])).collect::<Vec<_>>(), || "∂ at the unit tree is not the identity".into());
    report.push(ident);

    let mut typing = Check::new("component-typing");
    let mut equiv = Check::new("equivariance");
    let mut natural = Check::new("edge-naturality");
    for (n, level) in trees.iter().enumerate() {
        let tuples = all_tuples(c.nob(), n);
        for t in level {
            let table = m.table(t);
            for (xs, &phi) in tuples.iter().zip(&table) {
                let ok = dc.dom(phi) == d.eval_ob(t, &f.on_obs(xs)) && dc.cod(phi) == f.ob[c.eval_ob(t, xs)];
                typing.test(ok, || format!("∂ at {} and {} has the wrong type", smn.show(t), show(xs, cc)));
            }
            for g in smn.group().elements() {
                for sigma in Permutation::all(n) {
                    let moved = act(&smn.gens, g, &sigma, t).expect("degree matches");
                    let ok = m.table(&moved) == m.act_table(g, &sigma, &table, n);
                    equiv.test(ok, || format!("∂ at ({g}, {sigma})·{} differs from the acted component", smn.show(t)));
                }
            }
            for step in steps_from(smn, t) {
                for xs in &tuples {
                    let fx = f.on_obs(xs);
                    let lhs = dc.comp(f.mor[c.step_component(&step, xs)], m.component(t, xs));
                    let rhs = dc.comp(m.component(&step.target, xs), d.step_component(&step, &fx));
                    natural.test(lhs == rhs, || format!("{} at {} -> {}, {}", step.kind.name(smn), smn.show(t), smn.show(&step.target), show(xs, cc)));
                }
            }
        }
    }
    report.push(typing);
    report.push(equiv);
    report.push(natural);

    // γ(y; x_1, …, x_m) against |y|_D(∂_{x_i}) followed by ∂_y(|x_i|_C)
    let mut comp = Check::new("composition");
    for (my, ys) in trees.iter().enumerate().skip(1).take(2) {
        for y in ys.iter().take(12) {
            let choices: Vec<&Tree> = trees.iter().take(3).flatten().filter(|x| x.depth() <= 1).collect();
            for xs_trees in choose(&choices, my) {
                let total: usize = xs_trees.iter().map(|x| x.arity()).sum();
                if total > bounds.arity {
                    continue;
                }
                let owned: Vec<Tree> = xs_trees.iter().map(|&x| x.clone()).collect();
                let composite = gamma(y, &owned).expect("arity matches");
                for xs in all_tuples(c.nob(), total) {
                    let mut off = 0;
                    let mut inner = Vec::new();
                    let mut vals = Vec::new();
                    for x in &owned {
                        let block = &xs[off..off + x.arity()];
                        inner.push(m.component(x, block));
                        vals.push(c.eval_ob(x, block));
                        off += x.arity();
                    }
                    let rhs = dc.comp(m.component(y, &vals), d.eval_mor(y, &inner));
                    comp.test(m.component(&composite, &xs) == rhs, || format!("γ({}; …) at {}", smn.show(y), show(&xs, cc)));
                }
            }
        }
    }
    report.push(comp);

    let mut iterated = Check::new("iterated-tensor-comparison");
    for n in 0..=3 {
        let t = standard_tensor(n);
        for xs in all_tuples(c.nob(), n) {
            iterated.test(m.component(&t, &xs) == f.tensor_n(c, d, &xs), || format!("∂ at ⊗_{n} differs from F_⊗{n} at {}", show(&xs, cc)));
        }
    }
    report.push(iterated);
    (m, report)
}

/// All `k`-tuples drawn from `items` with repetition.
fn choose<'t>(items: &[&'t Tree], k: usize) -> Vec<Vec<&'t Tree>> {
    all_tuples(items.len(), k).into_iter().map(|ix| ix.into_iter().map(|i| items[i]).collect()).collect()
}

/// Verdicts of the two characterizations of a monoidal transformation.
#[derive(Clone, Debug)]
pub struct TransformationVerdict {
    pub report: Report,
    /// The comparison squares for e, ⊗ and every ⊗_T.
    pub monoidal: bool,
    /// `∂'_x ∘ |x|_D(ω) = ω ∘ ∂_x` on every tree in the bounds.
    pub operadic: bool,
}

/// Checks `ω: F => F'` as a normed monoidal transformation and, separately,
/// as a transformation of lax algebra morphisms; the verdicts must agree.
pub fn validate_monoidal_transformation(c: &NormedSmc, d: &NormedSmc, f: &LaxFunctor, f2: &LaxFunctor, omega: &[usize], bounds: Bounds) -> TransformationVerdict {
    let mut report = Report::new("monoidal transformations are algebra transformations", bounds.to_string());
    let (cc, dc) = (c.cat(), d.cat());
    let n = c.nob();

    let mut gnat = Check::new("omega-g-natural");
    if omega.len() != n || omega.iter().any(|&w| w >= dc.morphism_count()) {
        gnat.fail("ω needs one morphism of D per object of C");
        report.push(gnat);
        return TransformationVerdict { report, monoidal: false, operadic: false };
    }
    check_natural(&mut gnat, cc, dc, 1, &|xs| f.ob[xs[0]], &|xs| f2.ob[xs[0]], &|fs| f.mor[fs[0]], &|fs| f2.mor[fs[0]], &|xs| omega[xs[0]]);
    for g in c.carrier.group.elements() {
        for x in 0..n {
            gnat.test(d.carrier.mor(g, omega[x]) == omega[c.carrier.ob(g, x)], || format!("g·ω ≠ ω at g={g}, {}", cc.objects[x]));
        }
    }
    let gnat_ok = gnat.passed;
    report.push(gnat);

    let mut squares = Vec::new();
    let mut unit = Check::new("unit-square");
    unit.test(dc.comp(omega[c.unit], f.f_e) == f2.f_e, || "ω_e ∘ F_e ≠ F'_e".into());
    squares.push(unit);
    let mut tensor = Check::new("tensor-square");
    for v in all_tuples(n, 2) {
        let (x, y) = (v[0], v[1]);
        let lhs = dc.comp(omega[c.t_ob(x, y)], f.tensor_at(c, x, y));
        let rhs = dc.comp(f2.tensor_at(c, x, y), d.t_mor(omega[x], omega[y]));
        tensor.test(lhs == rhs, || format!("at {}", show(&v, cc)));
    }
    squares.push(tensor);
    for (k, spec) in c.smn.exponents.norms.iter().enumerate() {
        let mut sq = Check::new(format!("norm-square[{}]", spec.id));
        for xs in all_tuples(n, spec.exponent.size()) {
            let ws: Vec<usize> = xs.iter().map(|&x| omega[x]).collect();
            let lhs = dc.comp(omega[c.norms[k].functor.on_ob(cc, &xs)], f.norm_at(c, k, &xs));
            let rhs = dc.comp(f2.norm_at(c, k, &xs), d.norms[k].functor.on_mor(dc, &ws));
            sq.test(lhs == rhs, || format!("at {}", show(&xs, cc)));
        }
        squares.push(sq);
    }
    let monoidal = gnat_ok && squares.iter().all(|s| s.passed);
    for s in squares {
        report.push(s);
    }

    let (m, m2) = (OperadMorphism::new(c, d, f), OperadMorphism::new(c, d, f2));
    let mut operad = Check::new("operad-condition");
    for (arity, level) in universe(&c.smn, bounds).iter().enumerate() {
        for t in level {
            for xs in all_tuples(n, arity) {
                let ws: Vec<usize> = xs.iter().map(|&x| omega[x]).collect();
                let lhs = dc.comp(m2.component(t, &xs), d.eval_mor(t, &ws));
                let rhs = dc.comp(omega[c.eval_ob(t, &xs)], m.component(t, &xs));
                operad.test(lhs == rhs, || format!("at {} and {}", c.smn.show(t), show(&xs, cc)));
            }
        }
    }
    let operadic = gnat_ok && operad.passed;
    report.push(operad);

    let mut agree = Check::new("verdicts-agree");
    agree.test(monoidal == operadic, || format!("monoidal verdict {monoidal} but operad verdict {operadic}"));
    report.push(agree.with_note(format!("monoidal={monoidal} operadic={operadic}")));
    TransformationVerdict { report, monoidal, operadic }
}
