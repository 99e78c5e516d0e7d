//! Operad laws of the free operads `F(S_N)` on sampled trees.

use std::sync::OnceLock;

use operadkit::free_operad::{act, act_g, act_sigma, block_permutation, enumerate_trees_bounded, eta_embed, gamma, GeneratorSet, Tree};
use operadkit::groups::{FiniteGroup, Permutation};
use operadkit::operad_zoo::lattice::orbit_exponents_of_group;
use operadkit::smn::{ExponentSet, Smn};
use proptest::prelude::*;
use proptest::sample::Index;

/// Generators of `SM_O(Set)` and the trees of arity ≤ 3, depth ≤ 2.
struct Fixture {
    gens: GeneratorSet,
    trees: Vec<Tree>,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::s3()]
            .iter()
            .map(|g| {
                let gens = Smn::build(ExponentSet::new(g, orbit_exponents_of_group(g)).unwrap()).gens;
                let trees = (0..=3).flat_map(|n| enumerate_trees_bounded(&gens, n, 2).unwrap()).collect();
                Fixture { gens, trees }
            })
            .collect()
    })
}

fn permutation(n: usize, i: &Index) -> Permutation {
    let all = Permutation::all(n);
    all[i.index(all.len())].clone()
}

/// A fixture, a tree with arity ≤ 2 on top, and inputs of small arity.
fn inputs() -> impl Strategy<Value = (usize, Index, Vec<Index>, Index, Vec<Index>)> {
    (0..3usize, any::<Index>(), prop::collection::vec(any::<Index>(), 3), any::<Index>(), prop::collection::vec(any::<Index>(), 4))
}

fn tree(f: &Fixture, i: &Index, max_arity: usize) -> Tree {
    let small: Vec<&Tree> = f.trees.iter().filter(|t| t.arity() <= max_arity).collect();
    small[i.index(small.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unit_and_associativity((k, top, mids, _, bots) in inputs()) {
        let f = &fixtures()[k];
        let t = tree(f, &top, 2);
        let us: Vec<Tree> = (0..t.arity()).map(|j| tree(f, &mids[j], 2)).collect();
        prop_assert_eq!(&gamma(&t, &vec![Tree::unit(); t.arity()]).unwrap(), &t, "right unit");
        prop_assert_eq!(&gamma(&Tree::unit(), std::slice::from_ref(&t)).unwrap(), &t, "left unit");
        let tu = gamma(&t, &us).unwrap();
        let vs: Vec<Tree> = (0..tu.arity()).map(|j| tree(f, &bots[j % bots.len()], 1)).collect();
        let lhs = gamma(&tu, &vs).unwrap();
        let mut offset = 0;
        let mut inner = Vec::new();
        for u in &us {
            inner.push(gamma(u, &vs[offset..offset + u.arity()]).unwrap());
            offset += u.arity();
        }
        prop_assert_eq!(lhs.canonical_form(), gamma(&t, &inner).unwrap().canonical_form(), "associativity");
    }

    #[test]
    fn sigma_equivariance((k, top, mids, p, qs) in inputs()) {
        let f = &fixtures()[k];
        let t = tree(f, &top, 3);
        let us: Vec<Tree> = (0..t.arity()).map(|j| tree(f, &mids[j], 2)).collect();
        let sizes: Vec<usize> = us.iter().map(Tree::arity).collect();
        // top: γ(σ·t; u) = B(σ)·γ(t; u_σ(1), …, u_σ(k))
        let sigma = permutation(t.arity(), &p);
        let permuted: Vec<Tree> = (0..us.len()).map(|j| us[sigma.apply(j)].clone()).collect();
        let lhs = gamma(&act_sigma(&sigma, &t).unwrap(), &us).unwrap();
        let rhs = act_sigma(&block_permutation(&sigma, &sizes), &gamma(&t, &permuted).unwrap()).unwrap();
        prop_assert_eq!(lhs.canonical_form(), rhs.canonical_form(), "top equivariance");
        // bottom: γ(t; τ_j·u_j) = (τ_1 ⊕ … ⊕ τ_k)·γ(t; u)
        let taus: Vec<Permutation> = us.iter().zip(&qs).map(|(u, q)| permutation(u.arity(), q)).collect();
        let moved: Vec<Tree> = us.iter().zip(&taus).map(|(u, s)| act_sigma(s, u).unwrap()).collect();
        let sum = taus.iter().fold(Permutation::identity(0), |acc, s| acc.block_sum(s));
        prop_assert_eq!(gamma(&t, &moved).unwrap(), act_sigma(&sum, &gamma(&t, &us).unwrap()).unwrap(), "bottom equivariance");
    }

    #[test]
    fn g_equivariance((k, top, mids, g, _) in inputs()) {
        let f = &fixtures()[k];
        let t = tree(f, &top, 3);
        let us: Vec<Tree> = (0..t.arity()).map(|j| tree(f, &mids[j], 2)).collect();
        let g = g.index(f.gens.group.order());
        let moved: Vec<Tree> = us.iter().map(|u| act_g(&f.gens, g, u)).collect();
        prop_assert_eq!(act_g(&f.gens, g, &gamma(&t, &us).unwrap()), gamma(&act_g(&f.gens, g, &t), &moved).unwrap());
    }

    #[test]
    fn action_preserves_arity_and_depth((k, top, _, g, qs) in inputs()) {
        let f = &fixtures()[k];
        let t = tree(f, &top, 3);
        let s = permutation(t.arity(), &qs[0]);
        let moved = act(&f.gens, g.index(f.gens.group.order()), &s, &t).unwrap();
        prop_assert_eq!(moved.arity(), t.arity());
        prop_assert_eq!(moved.depth(), t.depth());
    }

    #[test]
    fn eta_is_injective_and_equivariant(k in 0..3usize, r in any::<Index>(), r2 in any::<Index>(), p in any::<Index>(), p2 in any::<Index>(), g in any::<Index>(), q in any::<Index>()) {
        let gens = &fixtures()[k].gens;
        let labels = gens.labels.len();
        let (r, r2) = (r.index(labels), r2.index(labels));
        let (n, n2) = (gens.arity(r), gens.arity(r2));
        let (s, s2) = (permutation(n, &p), permutation(n2, &p2));
        let a = eta_embed(gens, &s, r).unwrap();
        prop_assert_eq!(a == eta_embed(gens, &s2, r2).unwrap(), (r, &s) == (r2, &s2), "η injective");
        // (g, τ)·(σ·r) = (τ∘σ∘τ')·m where g·r = τ'·m
        let g = g.index(gens.group.order());
        let tau = permutation(n, &q);
        let (m, tau_g) = &gens.act[g][r];
        prop_assert_eq!(act(gens, g, &tau, &a).unwrap(), eta_embed(gens, &tau.compose(&s).compose(tau_g), *m).unwrap(), "η equivariant");
    }
}
