//! Instance verification of the coherence theorem: every basic-edge path
//! between two trees interprets as the canonical morphism, together with the
//! lemmas that make interpretation an operad map.
//!
//! Value of a path is checked through a potential: for every basic edge
//! `X -> Y` out of the tree universe, `|d(Y)| ∘ |e| = |d(X)|` where `d` is
//! the υ-directed normalization. A path then interprets as
//! `|d(end)|⁻¹ ∘ |d(start)|`, so parallel paths agree. A literal layered
//! enumeration of paths inside the universe cross-checks this.

use std::collections::{HashMap, HashSet};

use crate::free_operad::{act, enumerate_trees_bounded, gamma, Tree};
use crate::groups::Permutation;
use crate::report::{Check, Report};
use crate::smn::{
    canonical_path, interchange, sm_operad_compose, standard_tensor, steps_from, upsilon_directed_path,
    upsilon_directed_path_with, NormOrder, PathStep, TENSOR, UNIT,
};

use super::category::all_tuples;
use super::nsmc::{validate_nsmc, Components, NormTables, NormedSmc};

/// Verification bounds: tree arity and depth, and path length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub depth: usize,
    pub arity: usize,
    pub path_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { depth: 2, arity: 4, path_len: 4 }
    }
}

impl std::fmt::Display for Bounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "depth<={} arity<={} path_len<={}", self.depth, self.arity, self.path_len)
    }
}

/// Memoized normal-form values `|d(t)|`.
pub struct Normalizer<'a> {
    pub d: &'a NormedSmc,
    memo: HashMap<Tree, Components>,
    tuples: HashMap<usize, Vec<Vec<usize>>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(d: &'a NormedSmc) -> Self {
        Normalizer { d, memo: HashMap::new(), tuples: HashMap::new() }
    }

    pub fn tuples(&mut self, n: usize) -> Vec<Vec<usize>> {
        let nob = self.d.nob();
        self.tuples.entry(n).or_insert_with(|| all_tuples(nob, n)).clone()
    }

    pub fn normal(&mut self, t: &Tree) -> Components {
        if let Some(v) = self.memo.get(t) {
            return v.clone();
        }
        let path = upsilon_directed_path(&self.d.smn, t);
        let v = self.d.interpret_path(&path);
        self.memo.insert(t.clone(), v.clone());
        v
    }

    /// Value of the unique morphism `a -> b`: `|d(b)|⁻¹ ∘ |d(a)|`.
    pub fn canonical(&mut self, a: &Tree, b: &Tree) -> Components {
        let da = self.normal(a);
        let db = self.normal(b);
        let c = self.d.cat();
        da.iter().zip(&db).map(|(&f, &g)| c.comp(self.d.inv(g), f)).collect()
    }

    pub fn step(&mut self, s: &PathStep) -> Components {
        let n = s.source.arity();
        self.tuples(n).iter().map(|xs| self.d.step_component(s, xs)).collect()
    }
}

/// `((g,σ)·θ)_X = g θ_{g⁻¹(X∘σ)}` with `(X∘σ)_j = X_{σ(j)}`.
pub fn act_components(d: &NormedSmc, g: usize, sigma: &Permutation, theta: &Components, n: usize) -> Components {
    let nob = d.nob();
    let gi = d.carrier.group.inv(g);
    all_tuples(nob, n)
        .iter()
        .map(|xs| {
            let ys: Vec<usize> = (0..n).map(|j| d.carrier.ob(gi, xs[sigma.apply(j)])).collect();
            d.carrier.mor(g, theta[super::category::tuple_index(&ys, nob)])
        })
        .collect()
}

fn show_tree(d: &NormedSmc, t: &Tree) -> String {
    d.smn.show(t)
}

/// Exhaustive coherence check on the trees of arity ≤ `bounds.arity` and
/// depth ≤ `bounds.depth`.
pub fn verify_coherence_instance(d: &NormedSmc, bounds: Bounds) -> Report {
    let mut report = Report::new("coherence theorem", bounds.to_string());
    let smn = &d.smn;
    let c = d.cat();
    let mut nz = Normalizer::new(d);
    let universe: Vec<Vec<Tree>> = (0..=bounds.arity)
        .map(|n| enumerate_trees_bounded(&smn.gens, n, bounds.depth).expect("depth within the enumeration guard"))
        .collect();

    let mut endpoint = Check::new("normal-form-target");
    let mut identity = Check::new("canonical-identity");
    let mut potential = Check::new("parallel-paths");
    let mut reversal = Check::new("edge-reversal");
    let mut tuple_form = Check::new("tuple-form");
    let mut order = Check::new("upsilon-order-independence");
    let mut inter = Check::new("interchange");
    let mut tree_eq = Check::new("tree-equivariance");
    let mut edge_eq = Check::new("edge-equivariance");

    for (n, trees) in universe.iter().enumerate() {
        let tuples = nz.tuples(n);
        let sigmas = Permutation::all(n);
        for t in trees {
            endpoint.test(upsilon_directed_path(smn, t).end() == &standard_tensor(n), || show_tree(d, t));
            let canon = canonical_path(smn, t, t).expect("equal arity");
            let value = d.interpret_path(&canon);
            identity.test(value.iter().zip(&tuples).all(|(&f, xs)| f == c.id(d.eval_ob(t, xs))), || show_tree(d, t));
            let alt = d.interpret_path(&upsilon_directed_path_with(smn, t, NormOrder::InnermostLast));
            let dx = nz.normal(t);
            order.test(alt == dx, || show_tree(d, t));

            for g in d.carrier.group.elements() {
                for sigma in &sigmas {
                    let moved = act(&smn.gens, g, sigma, t).expect("degree matches arity");
                    let ok = tuples.iter().all(|xs| {
                        let ys: Vec<usize> = (0..n).map(|j| d.carrier.ob(d.carrier.group.inv(g), xs[sigma.apply(j)])).collect();
                        d.eval_ob(&moved, xs) == d.carrier.ob(g, d.eval_ob(t, &ys))
                    });
                    tree_eq.test(ok, || format!("g={g}, σ={sigma}, t={}", show_tree(d, t)));
                }
            }

            for step in steps_from(smn, t) {
                let value = nz.step(&step);
                let dy = nz.normal(&step.target);
                let ok = (0..tuples.len()).all(|i| c.comp(dy[i], value[i]) == dx[i]);
                potential.test(ok, || {
                    format!("edge {} at {:?}: {} -> {} disagrees with the canonical morphism", step.kind.name(smn), step.pos, show_tree(d, t), show_tree(d, &step.target))
                });
                let back = nz.step(&step.reversed(smn));
                reversal.test(back.iter().zip(&value).all(|(&b, &f)| c.comp(b, f) == c.id(c.dom(f))), || {
                    format!("reverse of {} at {:?} on {}", step.kind.name(smn), step.pos, show_tree(d, t))
                });
                let edge = step.edge(smn);
                tuple_form.test(tuples.iter().zip(&value).all(|(xs, &f)| d.edge_component(&edge, xs) == f), || {
                    format!("{} at {:?} on {}", step.kind.name(smn), step.pos, show_tree(d, t))
                });
                for g in d.carrier.group.elements() {
                    for sigma in &sigmas {
                        let a = act(&smn.gens, g, sigma, &step.source).unwrap();
                        let b = act(&smn.gens, g, sigma, &step.target).unwrap();
                        let lhs = nz.canonical(&a, &b);
                        let rhs = act_components(d, g, sigma, &value, n);
                        edge_eq.test(lhs == rhs, || format!("g={g}, σ={sigma}, edge {} at {:?} on {}", step.kind.name(smn), step.pos, show_tree(d, t)));
                    }
                }
                if !step.kind.is_upsilon() {
                    for u in steps_from(smn, &step.target).into_iter().filter(|s| matches!(s.kind, crate::smn::EdgeKind::Upsilon(_))) {
                        match interchange(smn, &step, &u) {
                            Some((u2, e2)) => {
                                let (vu, ve2, vu2) = (nz.step(&u), nz.step(&e2), nz.step(&u2));
                                let ok = (0..tuples.len()).all(|i| c.comp(vu[i], value[i]) == c.comp(ve2[i], vu2[i]));
                                inter.test(ok, || format!("{} then {} on {}", step.kind.name(smn), u.kind.name(smn), show_tree(d, t)));
                            }
                            None => inter.fail(format!("no interchange for {} then {} on {}", step.kind.name(smn), u.kind.name(smn), show_tree(d, t))),
                        }
                    }
                }
            }
        }
    }
    for ch in [endpoint, identity, potential, reversal, tuple_form, order, inter, tree_eq, edge_eq] {
        report.push(ch);
    }
    report.push(enumerate_parallel_paths(d, &mut nz, &universe, bounds.path_len));
    report.push(composition_check(d, &mut nz, &universe));
    report
}

/// Literal enumeration of all paths of length ≤ `len` that stay inside the
/// universe, deduplicated by (endpoint, value); every value must equal the
/// canonical morphism between the endpoints.
fn enumerate_parallel_paths(d: &NormedSmc, nz: &mut Normalizer, universe: &[Vec<Tree>], len: usize) -> Check {
    let smn = &d.smn;
    let c = d.cat();
    let mut check = Check::new("path-enumeration");
    let mut distinct_paths = 0usize;
    for (n, trees) in universe.iter().enumerate() {
        let inside: HashSet<&Tree> = trees.iter().collect();
        let mut out: HashMap<Tree, Vec<(PathStep, Components)>> = HashMap::new();
        for t in trees {
            let steps = steps_from(smn, t).into_iter().filter(|s| inside.contains(&s.target)).collect::<Vec<_>>();
            let valued = steps.into_iter().map(|s| {
                let v = nz.step(&s);
                (s, v)
            });
            out.insert(t.clone(), valued.collect());
        }
        let tuples = nz.tuples(n);
        for start in trees {
            let id: Components = tuples.iter().map(|xs| c.id(d.eval_ob(start, xs))).collect();
            let mut layer: HashSet<(Tree, Components)> = HashSet::from([(start.clone(), id)]);
            let mut seen = layer.clone();
            for _ in 0..len {
                let mut next = HashSet::new();
                for (t, v) in &layer {
                    for (s, sv) in &out[t] {
                        let nv: Components = v.iter().zip(sv).map(|(&a, &b)| c.comp(b, a)).collect();
                        let state = (s.target.clone(), nv);
                        if seen.insert(state.clone()) {
                            next.insert(state);
                        }
                    }
                }
                layer = next;
            }
            for (end, value) in &seen {
                distinct_paths += 1;
                let canon = nz.canonical(start, end);
                check.test(&canon == value, || format!("a path {} -> {} differs from the canonical morphism", smn.show(start), smn.show(end)));
            }
        }
    }
    check.with_note(format!("distinct (endpoint, value) states={distinct_paths}"))
}

/// `|γ(p; q_•)| = δ(|p|; |q_•|)` on sampled single-edge morphisms.
fn composition_check(d: &NormedSmc, nz: &mut Normalizer, universe: &[Vec<Tree>]) -> Check {
    let smn = &d.smn;
    let c = d.cat();
    let mut check = Check::new("composition");
    if universe.len() < 3 {
        return check.with_note("arity bound below 2, nothing sampled");
    }
    // morphisms of arity ≤ 1: identities and single edges
    let mut small: Vec<(Tree, Tree)> = Vec::new();
    for t in universe[0].iter().chain(&universe[1]) {
        small.push((t.clone(), t.clone()));
        for s in steps_from(smn, t).into_iter().take(3) {
            small.push((s.source, s.target));
        }
    }
    small.truncate(12);
    let outer: Vec<PathStep> = universe[2].iter().flat_map(|t| steps_from(smn, t)).step_by(7).take(16).collect();
    for p in &outer {
        let theta = nz.step(p);
        for q1 in &small {
            for q2 in &small {
                let total = q1.0.arity() + q2.0.arity();
                if total >= universe.len() {
                    continue;
                }
                let composed = sm_operad_compose(smn, (&p.source, &p.target), &[q1.clone(), q2.clone()]).expect("arities match");
                let lhs = d.interpret_path(&composed);
                let (phi1, phi2) = (nz.canonical(&q1.0, &q1.1), nz.canonical(&q2.0, &q2.1));
                let nob = d.nob();
                let ok = all_tuples(nob, total).iter().zip(&lhs).all(|(zs, &l)| {
                    let (z1, z2) = zs.split_at(q1.0.arity());
                    let i1 = super::category::tuple_index(z1, nob);
                    let i2 = super::category::tuple_index(z2, nob);
                    let t1 = d.eval_ob(&q1.1, z1);
                    let t2 = d.eval_ob(&q2.1, z2);
                    let whisker = d.eval_mor(&p.source, &[phi1[i1], phi2[i2]]);
                    let outer = theta[super::category::tuple_index(&[t1, t2], nob)];
                    l == c.comp(outer, whisker)
                });
                check.test(ok, || format!("p = {} -> {}, q = ({}, {})", smn.show(&p.source), smn.show(&p.target), smn.show(&q1.0), smn.show(&q2.0)));
            }
        }
    }
    check
}

/// Reads the structure back from the operad action and compares it with the
/// input tables; the read-back must itself validate.
pub fn roundtrip_algebra_nsmc(d: &NormedSmc) -> Report {
    let mut report = Report::new("algebras are normed symmetric monoidal categories", "exact table equality");
    let smn = &d.smn;
    let c = d.cat();
    let ox = Tree::corolla(TENSOR, 2);
    let u = Tree::unit();
    let e = Tree::Node(UNIT, Vec::new());
    let value = |a: &Tree, b: &Tree| -> Components { d.interpret_path(&canonical_path(smn, a, b).expect("equal arity")) };

    let unit = d.eval_ob(&e, &[]);
    let tensor = d.interpret_tree(&ox);
    let alpha = value(&standard_tensor(3), &gamma(&ox, &[u.clone(), ox.clone()]).unwrap());
    let lambda = value(&gamma(&ox, &[e.clone(), u.clone()]).unwrap(), &u);
    let rho = value(&gamma(&ox, &[u.clone(), e.clone()]).unwrap(), &u);
    let beta = value(&ox, &Tree::Node(TENSOR, vec![Tree::Leaf(2), Tree::Leaf(1)]));
    let norms: Vec<NormTables> = (0..smn.exponents.norms.len())
        .map(|k| {
            let l = smn.norm_label(k, 0);
            let corolla = Tree::corolla(l, smn.gens.arity(l));
            NormTables { functor: d.interpret_tree(&corolla), upsilon: value(&corolla, &standard_tensor(smn.gens.arity(l))) }
        })
        .collect();

    let mut checks: Vec<(String, bool)> = vec![
        ("readback-unit".into(), unit == d.unit),
        ("readback-tensor".into(), tensor == d.tensor),
        ("readback-alpha".into(), alpha == d.alpha),
        ("readback-lambda".into(), lambda == d.lambda),
        ("readback-rho".into(), rho == d.rho),
        ("readback-beta".into(), beta == d.beta),
    ];
    for (k, t) in norms.iter().enumerate() {
        let id = &smn.exponents.norms[k].id;
        checks.push((format!("readback-norm[{id}]"), t.functor == d.norms[k].functor));
        checks.push((format!("readback-untwistor[{id}]"), t.upsilon == d.norms[k].upsilon));
    }
    for (id, ok) in checks {
        let mut ch = Check::new(id);
        ch.test(ok, || format!("read-back table differs from the input over {} objects", c.object_count()));
        report.push(ch);
    }
    let rebuilt = NormedSmc { unit, tensor, alpha, lambda, rho, beta, norms, ..d.clone() };
    let revalidated = validate_nsmc(&rebuilt);
    let mut again = Check::new("readback-validates");
    again.test(revalidated.passed(), || revalidated.first_failure().map(|f| f.to_string()).unwrap_or_default());
    report.push(again);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins::{chaotic_z2, discrete_functions, sign_z2};
    use crate::groups::FiniteGroup;
    use crate::gsets::Exponent;
    use crate::smn::{ExponentSet, Smn};

    fn c2_smn(with_norm: bool) -> Smn {
        let g = FiniteGroup::cyclic(2);
        let mut ex = Vec::new();
        if with_norm {
            ex.push(("t1".to_string(), Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup())));
        }
        Smn::build(ExponentSet::new(&g, ex).unwrap())
    }

    const SMALL: Bounds = Bounds { depth: 2, arity: 3, path_len: 3 };

    #[test]
    fn strict_and_chaotic_carriers_are_coherent() {
        for d in [discrete_functions(c2_smn(true), 2), chaotic_z2(c2_smn(true))] {
            let r = verify_coherence_instance(&d, SMALL);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn sign_carrier_without_norms_is_coherent() {
        let r = verify_coherence_instance(&sign_z2(c2_smn(false)), SMALL);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_braiding_is_pinpointed() {
        let d = sign_z2(c2_smn(false));
        let broken = d.with_beta(vec![0, 3, 2, 1]); // β_{0,1} = -1 but β_{1,0} = +1
        let v = validate_nsmc(&broken);
        assert!(!v.passed());
        assert!(!v.check("symmetry").unwrap().passed || !v.check("hexagon").unwrap().passed, "{v}");
        let r = verify_coherence_instance(&broken, SMALL);
        assert!(!r.check("parallel-paths").unwrap().passed, "{r}");
    }

    #[test]
    fn roundtrip_reads_back_the_structure() {
        for d in [discrete_functions(c2_smn(true), 2), chaotic_z2(c2_smn(true)), sign_z2(c2_smn(false))] {
            let r = roundtrip_algebra_nsmc(&d);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn permutation_coherence_matches_canonical_paths() {
        let d = sign_z2(c2_smn(false));
        let smn = &d.smn;
        for n in 0..=4 {
            for pi in Permutation::all(n) {
                // π⁻¹·⊗_n has leaf π⁻¹(i) at position i, i.e. reads Y_{π⁻¹(i)}
                let target = crate::free_operad::act_sigma(&pi.inverse(), &standard_tensor(n)).unwrap();
                let path = canonical_path(smn, &standard_tensor(n), &target).unwrap();
                for ys in all_tuples(2, n) {
                    assert_eq!(d.path_component(&path, &ys), d.permutation_coherence(&ys, &pi), "π={pi}, Y={ys:?}");
                }
            }
        }
    }
}
