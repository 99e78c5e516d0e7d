//! Change of norms: for disjoint N and M generating the same indexing
//! system, the inclusion `i: F(S_N) -> F(S_{N∪M})` and the retraction `r`
//! that sends each M-generator to a chosen Γ_T-fixed tree `c(T)`, with
//! `E = r^*` and `R = i^*` on an algebra instance.

use crate::fincat::coherence::Normalizer;
use crate::fincat::{validate_lax_functor, validate_nsmc, FunctorClass, LaxFunctor, NormTables, NormedSmc};
use crate::free_operad::{act, act_g, act_sigma, enumerate_trees_bounded, find_fixed_tree, gamma, Tree};
use crate::groups::Permutation;
use crate::gsets::Exponent;
use crate::indexing::{IndexingSystem, SubgroupLattice};
use crate::report::{Check, Report};
use crate::smn::{comb, standard_tensor, ExponentSet, GeneratorLabel, Smn};

use super::{is_fixed, ZooError, SAMPLE_TREES, WITNESS_DEPTH};

/// How a witness `c(T)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// A comb over the orbits of T, each orbit a relabeled generator.
    Targeted,
    /// The bounded fixed-tree search, at the recorded depth.
    Search(usize),
}

/// A Γ_T-fixed tree of arity |T| in `F(S_N)`.
///
/// Each orbit of T is matched with a relabeled corolla fixed by the graph of
/// that orbit (a single point is a bare leaf); the pieces are joined by the
/// left comb of ⊗, which is G-fixed. When some orbit has no such corolla,
/// the general search runs at depth 3 and then once more at depth 4.
pub fn fixed_witness(smn: &Smn, id: &str, t: &Exponent) -> Result<(Tree, WitnessSource), ZooError> {
    let gens = &smn.gens;
    let graph = t.graph();
    let targeted = || -> Option<Tree> {
        let mut pieces = Vec::new();
        for orbit in t.orbit_decompose() {
            let relabel = |tree: &Tree| tree.map_leaves(&|i| orbit.points[i - 1] + 1);
            if orbit.points.len() == 1 {
                pieces.push(Tree::Leaf(orbit.points[0] + 1));
                continue;
            }
            let o = t.orbit_exponent(&orbit);
            let k = o.size();
            let og = o.graph();
            let piece = (0..gens.labels.len()).filter(|&l| gens.arity(l) == k).find_map(|l| {
                Permutation::all(k).into_iter().map(|s| act_sigma(&s, &Tree::corolla(l, k)).expect("degree k")).find(|c| is_fixed(gens, &og, c))
            })?;
            pieces.push(relabel(&piece));
        }
        let tree = comb(pieces);
        is_fixed(gens, &graph, &tree).then_some(tree)
    };
    if let Some(tree) = targeted() {
        return Ok((tree, WitnessSource::Targeted));
    }
    for depth in [WITNESS_DEPTH, WITNESS_DEPTH + 1] {
        if let Some(tree) = find_fixed_tree(gens, &graph, t.size(), depth) {
            return Ok((tree, WitnessSource::Search(depth)));
        }
    }
    Err(ZooError::NoFixedWitness { id: id.into(), depth: WITNESS_DEPTH + 1 })
}

/// The operads `F(S_N) ⇄ F(S_{N∪M})` with the chosen witnesses.
#[derive(Clone, Debug)]
pub struct NormChange {
    pub smn_n: Smn,
    pub smn_union: Smn,
    /// `c(T)` for each T in M, over the labels of `smn_n`.
    pub witnesses: Vec<Tree>,
    pub sources: Vec<WitnessSource>,
}

/// Replaces the leaf numbered j by `children[j - 1]`, keeping the leaf
/// numbers inside the children.
fn substitute(s: &Tree, children: &[Tree]) -> Tree {
    match s {
        Tree::Leaf(j) => children[j - 1].clone(),
        Tree::Node(l, cs) => Tree::Node(*l, cs.iter().map(|c| substitute(c, children)).collect()),
    }
}

impl NormChange {
    /// Checks the hypotheses (disjointness, same generated indexing system)
    /// and chooses the witnesses.
    pub fn new(n: &ExponentSet, m: &ExponentSet) -> Result<Self, ZooError> {
        let group = &n.group;
        if m.group != *group {
            return Err(ZooError::Invalid("N and M live over different groups".into()));
        }
        for t in &m.norms {
            if n.norms.iter().any(|s| s.id == t.id || s.exponent == t.exponent) {
                return Err(ZooError::Invalid(format!("`{}` lies in both N and M", t.id)));
            }
        }
        let lat = SubgroupLattice::new(group);
        let exps = |s: &ExponentSet| s.norms.iter().map(|x| x.exponent.clone()).collect::<Vec<_>>();
        let gen_n = IndexingSystem::generate(&lat, &exps(n));
        let union = ExponentSet { group: group.clone(), norms: n.norms.iter().chain(&m.norms).cloned().collect() };
        let gen_u = IndexingSystem::generate(&lat, &exps(&union));
        if gen_n != gen_u {
            return Err(ZooError::NotSameIndexing { n: gen_n.describe(), union: gen_u.describe() });
        }
        let smn_n = Smn::build(n.clone());
        let smn_union = Smn::build(union);
        let mut witnesses = Vec::new();
        let mut sources = Vec::new();
        for spec in &m.norms {
            let (w, s) = fixed_witness(&smn_n, &spec.id, &spec.exponent)?;
            witnesses.push(w);
            sources.push(s);
        }
        Ok(NormChange { smn_n, smn_union, witnesses, sources })
    }

    fn n_count(&self) -> usize {
        self.smn_n.exponents.norms.len()
    }

    /// `i` is the identity on trees: the labels of S_N are the first labels
    /// of S_{N∪M}.
    pub fn include(&self, t: &Tree) -> Tree {
        t.clone()
    }

    /// `r`: a generator of S_N stays, `g_j ⊗_T` for T in M becomes `g_j·c(T)`.
    pub fn retract(&self, t: &Tree) -> Tree {
        match t {
            Tree::Leaf(i) => Tree::Leaf(*i),
            Tree::Node(l, cs) => {
                let children: Vec<Tree> = cs.iter().map(|c| self.retract(c)).collect();
                match self.smn_union.kinds[*l] {
                    GeneratorLabel::Norm { norm, rep } if norm >= self.n_count() => {
                        let spec = &self.smn_union.exponents.norms[norm];
                        let image = act_g(&self.smn_n.gens, spec.reps[rep], &self.witnesses[norm - self.n_count()]);
                        substitute(&image, &children)
                    }
                    _ => Tree::Node(*l, children),
                }
            }
        }
    }

    /// `R`: forget the M-norms.
    pub fn restrict_instance(&self, d: &NormedSmc) -> NormedSmc {
        NormedSmc { smn: self.smn_n.clone(), norms: d.norms[..self.n_count()].to_vec(), ..d.clone() }
    }

    /// `E`: the M-norm is `|c(T)|` and its untwistor the value of the unique
    /// morphism `c(T) -> ⊗_|T|`.
    pub fn extend_instance(&self, c: &NormedSmc) -> NormedSmc {
        let mut nz = Normalizer::new(c);
        let mut norms = c.norms.clone();
        for w in &self.witnesses {
            norms.push(NormTables { functor: c.interpret_tree(w), upsilon: nz.canonical(w, &standard_tensor(w.arity())) });
        }
        NormedSmc { smn: self.smn_union.clone(), norms, ..c.clone() }
    }

    /// The identity functor `source -> target` whose M-norm comparisons are
    /// the unique morphisms between `⊗_T` and `c(T)`, read in `d`
    /// (`to_witness` picks the direction `⊗_T -> c(T)`).
    fn theta(&self, d: &NormedSmc, owner: &NormedSmc, to_witness: bool) -> LaxFunctor {
        let mut f = LaxFunctor::identity(owner);
        let mut nz = Normalizer::new(d);
        for (t, w) in self.witnesses.iter().enumerate() {
            let k = self.n_count() + t;
            let corolla = Tree::corolla(self.smn_union.norm_label(k, 0), w.arity());
            f.f_norms[k] = if to_witness { nz.canonical(&corolla, w) } else { nz.canonical(w, &corolla) };
        }
        f
    }
}

fn sample(gens: &crate::free_operad::GeneratorSet, max_arity: usize) -> Vec<Tree> {
    (0..=max_arity)
        .flat_map(|n| {
            let all = enumerate_trees_bounded(gens, n, 2).expect("depth within the enumeration guard");
            let step = (all.len() / SAMPLE_TREES).max(1);
            all.into_iter().step_by(step).take(SAMPLE_TREES)
        })
        .collect()
}

/// Builds `i` and `r`, checks `r∘i = id` and that r is an operad map on
/// sampled trees, and on the instance `d` (an `(N∪M)`-normed category)
/// checks `R∘E = id` on the nose and that `ϑ` makes the identity a strong
/// morphism `ER(d) -> d` with a strong inverse.
pub fn change_of_norms(n: &ExponentSet, m: &ExponentSet, d: &NormedSmc) -> Result<Report, ZooError> {
    let change = NormChange::new(n, m)?;
    if d.smn != change.smn_union {
        return Err(ZooError::Invalid("the instance is not normed by N ∪ M in this order".into()));
    }
    let mut report = Report::new("change of norms", "trees of arity <= 3 and depth <= 2 sampled; instance exhaustive");
    let mut witness = Check::new("witnesses-fixed");
    for (spec, w) in m.norms.iter().zip(&change.witnesses) {
        witness.test(is_fixed(&change.smn_n.gens, &spec.exponent.graph(), w) && w.arity() == spec.exponent.size(), || format!("c({}) = {w:?}", spec.id));
    }
    let notes: Vec<String> = m.norms.iter().zip(&change.witnesses).zip(&change.sources).map(|((spec, w), s)| format!("c({}) = {} ({s:?})", spec.id, change.smn_n.show(w))).collect();
    report.push(witness.with_note(notes.join("; ")));

    let mut inclusion = Check::new("inclusion-of-generators");
    let nl = change.smn_n.gens.labels.len();
    inclusion.test(change.smn_union.gens.labels[..nl] == change.smn_n.gens.labels[..], || "label prefix differs".into());
    for g in n.group.elements() {
        inclusion.test(change.smn_union.gens.act[g][..nl] == change.smn_n.gens.act[g][..], || format!("action of {g} differs on S_N"));
    }
    report.push(inclusion);

    let mut ri = Check::new("r-after-i-identity");
    for t in sample(&change.smn_n.gens, 3) {
        ri.test(change.retract(&change.include(&t)) == t, || format!("{t:?}"));
    }
    report.push(ri);

    let mut operad_map = Check::new("r-is-operad-map");
    let union_trees = sample(&change.smn_union.gens, 3);
    let inner: Vec<Tree> = union_trees.iter().filter(|t| t.depth() <= 1).take(6).cloned().collect();
    for t in &union_trees {
        let rt = change.retract(t);
        for g in n.group.elements() {
            for s in Permutation::all(t.arity()) {
                let lhs = change.retract(&act(&change.smn_union.gens, g, &s, t).expect("degree"));
                let rhs = act(&change.smn_n.gens, g, &s, &rt).expect("degree");
                operad_map.test(lhs == rhs, || format!("equivariance at {t:?} under ({g}, {s})"));
            }
        }
        if t.arity() <= 2 {
            for u in &inner {
                let us = vec![u.clone(); t.arity()];
                let lhs = change.retract(&gamma(t, &us).expect("arity"));
                let rhs = gamma(&rt, &us.iter().map(|x| change.retract(x)).collect::<Vec<_>>()).expect("arity");
                operad_map.test(lhs == rhs, || format!("composition at {t:?} ∘ {u:?}"));
            }
        }
    }
    report.push(operad_map);

    let c = change.restrict_instance(d);
    let ec = change.extend_instance(&c);
    let mut valid = Check::new("instances-are-normed");
    for (name, x) in [("D", d), ("R(D)", &c), ("ER(D)", &ec)] {
        let r = validate_nsmc(x);
        valid.test(r.passed(), || format!("{name}: {}", r.first_failure().map(|f| f.to_string()).unwrap_or_default()));
    }
    report.push(valid);
    let mut re = Check::new("restriction-after-extension-identity");
    re.test(change.restrict_instance(&ec) == c, || "R(E(C)) differs from C".into());
    report.push(re);

    let mut er = Check::new("er-isomorphic-to-identity");
    let forward = change.theta(d, &ec, true);
    let backward = change.theta(d, d, false);
    for (name, src, tgt, f) in [("ER(D) -> D", &ec, d, &forward), ("D -> ER(D)", d, &ec, &backward)] {
        let r = validate_lax_functor(src, tgt, f);
        er.test(r.passed(), || format!("{name}: {}", r.first_failure().map(|x| x.to_string()).unwrap_or_default()));
        er.test(f.classify(tgt) != FunctorClass::Lax, || format!("{name} is not strong"));
    }
    // the two comparison families are mutually inverse
    let cat = d.cat();
    for (k, (a, b)) in forward.f_norms.iter().zip(&backward.f_norms).enumerate() {
        for (x, (&p, &q)) in a.iter().zip(b).enumerate() {
            er.test(cat.is_identity(cat.comp(q, p)), || format!("norm {k}, tuple {x}: ϑ components are not inverse"));
        }
    }
    let identities = forward.f_norms.iter().flatten().all(|&f| cat.is_identity(f));
    report.push(er.with_note(format!("ϑ = the unique morphism ⊗_T -> c(T); {}", if identities { "all components are identities" } else { "some components are not identities" })));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins::{chaotic_z2, discrete_functions, sign_z2};
    use crate::groups::FiniteGroup;

    fn sets() -> (ExponentSet, ExponentSet) {
        let g = FiniteGroup::cyclic(2);
        let free = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let n = ExponentSet::new(&g, vec![("free".into(), free.clone())]).unwrap();
        let m = ExponentSet::new(&g, vec![("twofree".into(), free.disjoint_union(&free))]).unwrap();
        (n, m)
    }

    #[test]
    fn witness_for_two_free_orbits_is_a_comb_of_norms() {
        let (n, m) = sets();
        let change = NormChange::new(&n, &m).unwrap();
        assert_eq!(change.sources, vec![WitnessSource::Targeted]);
        let w = &change.witnesses[0];
        // ⊗(⊗_T(1, 2), ⊗_T(3, 4))
        let oracle = change.smn_n.parse_tree("(ox (oxT:free:1 1 2) (oxT:free:1 3 4))").unwrap();
        assert_eq!(*w, oracle);
        let stab = crate::free_operad::tree_stabilizer(&change.smn_n.gens, w);
        assert!(m.norms[0].exponent.graph().iter().all(|x| stab.contains(x)), "Γ_T ⊆ stabilizer");
    }

    #[test]
    fn empty_m_gives_identities() {
        let (n, _) = sets();
        let m = ExponentSet::empty(&n.group);
        let d = chaotic_z2(Smn::build(n.clone()));
        let r = change_of_norms(&n, &m, &d).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn instances_pass() {
        let (n, m) = sets();
        let union = ExponentSet { group: n.group.clone(), norms: n.norms.iter().chain(&m.norms).cloned().collect() };
        let disc = discrete_functions(Smn::build(union.clone()), 2);
        let r = change_of_norms(&n, &m, &disc).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.check("er-isomorphic-to-identity").unwrap().detail.contains("all components are identities"), "discrete carrier: {r}");
        let chaotic = chaotic_z2(Smn::build(union.clone()));
        let r = change_of_norms(&n, &m, &chaotic).unwrap();
        assert!(r.passed(), "{r}");
        // the naive sign norms are not twisted-equivariant, and the report says so
        let r = change_of_norms(&n, &m, &sign_z2(Smn::build(union))).unwrap();
        assert!(!r.check("instances-are-normed").unwrap().passed, "sign instance must be rejected: {r}");
    }

    #[test]
    fn different_indexing_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let free = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let n = ExponentSet::empty(&g);
        let m = ExponentSet::new(&g, vec![("free".into(), free)]).unwrap();
        assert!(matches!(NormChange::new(&n, &m), Err(ZooError::NotSameIndexing { .. })));
    }
}
