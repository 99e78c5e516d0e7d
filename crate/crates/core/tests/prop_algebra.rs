//! Properties of groups, exponents and indexing systems on random inputs.

use operadkit::groups::{FiniteGroup, Permutation, Subgroup};
use operadkit::gsets::Exponent;
use operadkit::indexing::{enumerate_indexing_systems, IndexingSystem, SubgroupLattice};
use operadkit::operad_zoo::orbit_exponents;
use proptest::prelude::*;
use proptest::sample::{select, Index};

fn groups() -> Vec<FiniteGroup> {
    vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)), FiniteGroup::s3(), FiniteGroup::cyclic(6)]
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    select(groups())
}

fn pick<'a, T>(xs: &'a [T], i: &Index) -> &'a T {
    &xs[i.index(xs.len())]
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).expect("shuffle is a bijection"))
}

/// An H-set: up to three orbits H/K, then shuffled.
fn exponent_in(g: &FiniteGroup, picks: &[Index], h_pick: &Index, shuffle: &[usize]) -> Exponent {
    let subs = g.enumerate_subgroups();
    let h = pick(&subs, h_pick).clone();
    let within: Vec<Subgroup> = subs.iter().filter(|k| k.is_subset_of(&h)).cloned().collect();
    let mut t = Exponent::coset_space(g, &h, pick(&within, &picks[0]));
    for p in &picks[1..] {
        let orbit = Exponent::coset_space(g, &h, pick(&within, p));
        if t.size() + orbit.size() <= 6 {
            t = t.disjoint_union(&orbit);
        }
    }
    let n = t.size();
    let mut order: Vec<usize> = (0..n).collect();
    for (i, &s) in shuffle.iter().enumerate().take(n) {
        order.swap(i, i + s % (n - i));
    }
    t.reorder(&Permutation::from_images(order).unwrap())
}

fn exponents() -> impl Strategy<Value = (FiniteGroup, Exponent)> {
    (group(), prop::collection::vec(any::<Index>(), 1..4), any::<Index>(), prop::collection::vec(any::<usize>(), 6)).prop_map(|(g, picks, h, sh)| {
        let t = exponent_in(&g, &picks, &h, &sh);
        (g, t)
    })
}

proptest! {
    #[test]
    fn coset_reps_partition(g in group(), i in any::<Index>()) {
        let subs = g.enumerate_subgroups();
        let h = pick(&subs, &i);
        let reps = g.left_coset_reps(h);
        prop_assert_eq!(reps.len() * h.len(), g.order(), "index times order");
        let mut seen = vec![false; g.order()];
        for &r in &reps {
            for &x in &h.elements {
                let y = g.mul(r, x);
                prop_assert!(!seen[y], "cosets overlap at {}", y);
                seen[y] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s), "cosets cover G");
    }

    #[test]
    fn conjugates_are_subgroups(g in group(), i in any::<Index>(), x in any::<Index>()) {
        let subs = g.enumerate_subgroups();
        let h = pick(&subs, &i);
        let c = g.conjugate(h, x.index(g.order()));
        prop_assert!(g.subgroup(c.elements.clone()).is_ok(), "conjugate {:?} is closed", c.elements);
        prop_assert_eq!(&g.conjugate(h, g.identity()), h, "conjugation by e");
    }

    #[test]
    fn permutation_laws((a, b, c) in (1usize..=5).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.inverse().compose(&a).is_identity());
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn graphs_are_sigma_free((g, t) in exponents()) {
        let e = g.identity();
        prop_assert!(t.graph().iter().filter(|(h, _)| *h == e).all(|(_, s)| s.is_identity()), "Γ_T meets e × Σ_n only in the identity");
        for &h in &t.subgroup.elements {
            for &k in &t.subgroup.elements {
                prop_assert_eq!(t.sigma(g.mul(h, k)), t.sigma(h).compose(&t.sigma(k)), "σ is a homomorphism");
            }
        }
    }

    #[test]
    fn generate_is_idempotent_and_monotone(g in group(), picks in prop::collection::vec((prop::collection::vec(any::<Index>(), 1..3), any::<Index>(), prop::collection::vec(any::<usize>(), 6)), 0..4), cut in any::<Index>()) {
        let lat = SubgroupLattice::new(&g);
        let ts: Vec<Exponent> = picks.iter().map(|(p, h, s)| exponent_in(&g, p, h, s)).collect();
        let full = IndexingSystem::generate(&lat, &ts);
        let again: Vec<Exponent> = orbit_exponents(&full).into_iter().map(|(_, t)| t).collect();
        prop_assert_eq!(&IndexingSystem::generate(&lat, &again), &full, "generate of its own orbits");
        let part = IndexingSystem::generate(&lat, &ts[..cut.index(ts.len() + 1)]);
        prop_assert!(part.is_subsystem_of(&full), "monotone");
    }

    #[test]
    fn containment_is_orbitwise(g in group(), f in any::<Index>(), p in prop::collection::vec(any::<Index>(), 1..4), h in any::<Index>(), s in prop::collection::vec(any::<usize>(), 6)) {
        let systems = enumerate_indexing_systems(&g).unwrap().systems;
        let f = pick(&systems, &f);
        let t = exponent_in(&g, &p, &h, &s);
        let orbitwise = t.orbit_decompose().iter().all(|o| f.contains(&t.orbit_exponent(o)));
        prop_assert_eq!(f.contains(&t), orbitwise);
        // direct closure: adjoining an admissible T changes nothing
        let lat = SubgroupLattice::new(&g);
        let mut seed: Vec<Exponent> = orbit_exponents(f).into_iter().map(|(_, x)| x).collect();
        seed.push(t.clone());
        prop_assert_eq!(IndexingSystem::generate(&lat, &seed) == *f, f.contains(&t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(g in group(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let systems = enumerate_indexing_systems(&g).unwrap().systems;
        let (a, b, c) = (pick(&systems, &a), pick(&systems, &b), pick(&systems, &c));
        let meet = |x: &IndexingSystem, y: &IndexingSystem| x.meet(y).unwrap();
        let join = |x: &IndexingSystem, y: &IndexingSystem| x.join(y).unwrap();
        prop_assert_eq!(&meet(a, &join(a, b)), a, "absorption of join");
        prop_assert_eq!(&join(a, &meet(a, b)), a, "absorption of meet");
        prop_assert_eq!(meet(&meet(a, b), c), meet(a, &meet(b, c)), "meet associative");
        prop_assert_eq!(join(&join(a, b), c), join(a, &join(b, c)), "join associative");
        prop_assert_eq!(meet(a, b), meet(b, a));
        prop_assert_eq!(join(a, b), join(b, a));
        prop_assert!(meet(a, b).is_subsystem_of(a) && a.is_subsystem_of(&join(a, b)));
    }
}
