//! Admissible sets of chaotic operads against the lattice of indexing
//! systems: levelwise products realize meets, free coproducts realize
//! joins, and `F ↦ SM_{O(F)}` is an order isomorphism onto its image.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::free_operad::{enumerate_trees_bounded, GeneratorSet, Tree};
use crate::groups::{FiniteGroup, Subgroup};
use crate::gsets::{conjugacy_rep_within, Exponent};
use crate::indexing::{admissibles_with, enumerate_indexing_systems, IndexingSystem, SubgroupLattice};
use crate::report::{Check, Report};
use crate::smn::{ExponentSet, Smn};

use super::{has_fixed_tree, ZooError};

/// H-sets of at most this size are scanned for admissibility.
pub const SIZE_BOUND: usize = 4;

fn subgroup_id(h: &Subgroup) -> String {
    h.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

/// `O(F)`: the nontrivial orbits `H/K` of F, one K per H-conjugacy class,
/// with ids `H_K` built from element lists. The ids and the coset
/// representatives depend only on `(H, K)`, so every `SM_{O(F)}` uses the
/// Σ-orbit representatives of `SM_{O(Set)}`.
pub fn orbit_exponents(f: &IndexingSystem) -> Vec<(String, Exponent)> {
    let lat = &f.lattice;
    let g = &lat.group;
    f.pairs
        .iter()
        .filter(|(h, k)| h != k)
        .map(|&(h, k)| (&lat.subgroups[h], &lat.subgroups[k]))
        .filter(|(h, k)| conjugacy_rep_within(g, h, k) == **k)
        .map(|(h, k)| (format!("{}_{}", subgroup_id(h), subgroup_id(k)), Exponent::coset_space(g, h, k)))
        .collect()
}

/// `O(Set)` for the complete indexing system of G.
pub fn orbit_exponents_of_group(group: &FiniteGroup) -> Vec<(String, Exponent)> {
    orbit_exponents(&IndexingSystem::complete(&SubgroupLattice::new(group)))
}

fn check_size(group: &FiniteGroup) -> Result<(), ZooError> {
    if group.order() > SIZE_BOUND {
        return Err(ZooError::TooLarge { what: "orbits of the group".into(), size: group.order(), limit: SIZE_BOUND });
    }
    Ok(())
}

/// The indexing system of H-sets (size ≤ 4) whose graphs fix a point in
/// every one of the given free operads, i.e. in their levelwise product.
fn admissible_system(lat: &Arc<SubgroupLattice>, factors: &[&GeneratorSet]) -> Result<IndexingSystem, ZooError> {
    let adm = admissibles_with(&lat.group, SIZE_BOUND, |n, lambda| Ok(factors.iter().all(|g| has_fixed_tree(g, lambda, n))))?;
    Ok(IndexingSystem::generate(lat, &adm))
}

fn smn_of(group: &FiniteGroup, exps: &[(String, Exponent)]) -> Result<Smn, ZooError> {
    Ok(Smn::build(ExponentSet::new(group, exps.to_vec())?))
}

/// `A(F(S_N) × F(S_N')) = A ∧ A'` and `A(F(S_N ⊔ S_N')) = A ∨ A'`, with
/// the admissible sets found by fixed-tree search and the right-hand sides
/// by closure of the exponents. Ids of N and N' must be distinct.
pub fn product_admissibles(group: &FiniteGroup, n1: &[(String, Exponent)], n2: &[(String, Exponent)]) -> Result<Report, ZooError> {
    check_size(group)?;
    let lat = SubgroupLattice::new(group);
    let mut report = Report::new("admissible sets of products and free coproducts", "H-sets of size <= 4; N∞ proxy: Σ-free levels, nonempty G-fixed objects, chaotic");
    let s1 = smn_of(group, n1)?;
    let s2 = smn_of(group, n2)?;
    let both: Vec<(String, Exponent)> = n1.iter().chain(n2).cloned().collect();
    let mut ids: Vec<&String> = both.iter().map(|(id, _)| id).collect();
    ids.sort();
    ids.dedup();
    if ids.len() != both.len() {
        return Err(ZooError::Invalid("the two exponent sets share an id".into()));
    }
    let s12 = smn_of(group, &both)?;
    let a1 = IndexingSystem::generate(&lat, &n1.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>());
    let a2 = IndexingSystem::generate(&lat, &n2.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>());

    let mut factors = Check::new("factor-admissibles");
    for (a, s) in [(&a1, &s1), (&a2, &s2)] {
        let found = admissible_system(&lat, &[&s.gens])?;
        factors.test(found == *a, || format!("found {} expected {}", found.describe(), a.describe()));
    }
    report.push(factors);
    let mut product = Check::new("product-is-meet");
    let found = admissible_system(&lat, &[&s1.gens, &s2.gens])?;
    let meet = a1.meet(&a2)?;
    product.test(found == meet, || format!("found {} expected {}", found.describe(), meet.describe()));
    report.push(product.with_note(format!("A = {}", meet.describe())));
    let mut coproduct = Check::new("coproduct-is-join");
    let found = admissible_system(&lat, &[&s12.gens])?;
    let join = a1.join(&a2)?;
    coproduct.test(found == join, || format!("found {} expected {}", found.describe(), join.describe()));
    report.push(coproduct.with_note(format!("A = {}", join.describe())));

    let mut proxy = Check::new("n-infinity-proxy");
    let g_fixed = |n: usize| -> Vec<(usize, crate::groups::Permutation)> { group.elements().map(|g| (g, crate::groups::Permutation::identity(n))).collect() };
    for n in 0..=3 {
        let lambda = g_fixed(n);
        proxy.test(has_fixed_tree(&s1.gens, &lambda, n) && has_fixed_tree(&s2.gens, &lambda, n), || format!("product level {n} has no G-fixed object"));
        proxy.test(has_fixed_tree(&s12.gens, &lambda, n), || format!("coproduct level {n} has no G-fixed object"));
    }
    report.push(proxy);
    Ok(report)
}

/// Trees of depth ≤ 1 and arity ≤ |G|, and of depth ≤ 2 and arity ≤ 2, with
/// labels written by name.
fn named_trees(gens: &GeneratorSet, max_arity: usize) -> Result<BTreeSet<String>, ZooError> {
    let mut out = BTreeSet::new();
    let mut add = |t: &Tree| out.insert(t.to_text(gens));
    for n in 0..=max_arity {
        for t in enumerate_trees_bounded(gens, n, 1).map_err(|e| ZooError::Invalid(e.to_string()))? {
            add(&t);
        }
    }
    for n in 0..=2 {
        for t in enumerate_trees_bounded(gens, n, 2).map_err(|e| ZooError::Invalid(e.to_string()))? {
            add(&t);
        }
    }
    Ok(out)
}

/// Generalized suboperad property: with the representatives of
/// `SM_{O(Set)}`, `F ⊆ G` iff the trees of `SM_{O(F)}` are trees of
/// `SM_{O(G)}`, checked for every pair of indexing systems on bounded trees.
pub fn suboperad_property(group: &FiniteGroup) -> Result<Report, ZooError> {
    let lattice = enumerate_indexing_systems(group)?;
    let global = smn_of(group, &orbit_exponents_of_group(group))?;
    let mut report = Report::new("generalized suboperad property", "trees of depth <= 1 and arity <= |G|, and of depth <= 2 and arity <= 2");
    let mut restrict = Check::new("representatives-restrict");
    let mut trees = Vec::new();
    for f in &lattice.systems {
        let s = smn_of(group, &orbit_exponents(f))?;
        // every label of SM_{O(F)} is the label of SM_{O(Set)} with the same name and action
        let by_name: HashMap<&str, usize> = global.gens.labels.iter().enumerate().map(|(i, l)| (l.name.as_str(), i)).collect();
        for (l, info) in s.gens.labels.iter().enumerate() {
            let Some(&gl) = by_name.get(info.name.as_str()) else {
                restrict.fail(format!("{} is not a label of the global operad", info.name));
                continue;
            };
            for g in group.elements() {
                let (m, tau) = &s.gens.act[g][l];
                let (gm, gtau) = &global.gens.act[g][gl];
                restrict.test(s.gens.labels[*m].name == global.gens.labels[*gm].name && tau == gtau, || format!("action on {} differs", info.name));
            }
        }
        trees.push(named_trees(&s.gens, group.order())?);
    }
    report.push(restrict);
    let mut sub = Check::new("suboperad-iff-subsystem");
    for (i, f) in lattice.systems.iter().enumerate() {
        for (j, g) in lattice.systems.iter().enumerate() {
            let lhs = f.is_subsystem_of(g);
            let rhs = trees[i].is_subset(&trees[j]);
            sub.test(lhs == rhs, || format!("{} ⊆ {}: systems {lhs}, trees {rhs}", f.describe(), g.describe()));
        }
    }
    report.push(sub.with_note(format!("{} indexing systems", lattice.systems.len())));
    Ok(report)
}

/// The suboperad property together with `A(SM_{O(F)}) = F` for every F,
/// which makes `A` an order isomorphism.
pub fn lattice_check(group: &FiniteGroup) -> Result<Report, ZooError> {
    check_size(group)?;
    let mut report = suboperad_property(group)?;
    let lattice = enumerate_indexing_systems(group)?;
    let lat = SubgroupLattice::new(group);
    let mut iso = Check::new("admissibles-recover-indexing-system");
    let mut found = Vec::new();
    for f in &lattice.systems {
        let s = smn_of(group, &orbit_exponents(f))?;
        let a = admissible_system(&lat, &[&s.gens])?;
        iso.test(a.pairs == f.pairs, || format!("A(SM_O(F)) = {} for F = {}", a.describe(), f.describe()));
        found.push(a);
    }
    report.push(iso);
    let mut order = Check::new("admissibles-order-isomorphism");
    for (i, f) in lattice.systems.iter().enumerate() {
        for (j, g) in lattice.systems.iter().enumerate() {
            order.test(f.is_subsystem_of(g) == found[i].is_subsystem_of(&found[j]), || format!("{} vs {}", f.describe(), g.describe()));
        }
    }
    report.push(order);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_atoms_product_and_coproduct() {
        let g = FiniteGroup::cyclic(4);
        let c2 = g.subgroup(vec![0, 2]).unwrap();
        let a = vec![("c2e".to_string(), Exponent::coset_space(&g, &c2, &g.trivial_subgroup()))];
        let b = vec![("c4c2".to_string(), Exponent::coset_space(&g, &g.whole(), &c2))];
        let r = product_admissibles(&g, &a, &b).unwrap();
        assert!(r.passed(), "{r}");
        // oracle: the meet keeps no nontrivial orbit, the join has all of them
        let lat = SubgroupLattice::new(&g);
        assert!(r.check("product-is-meet").unwrap().detail.ends_with("{}"), "{r}");
        let all = IndexingSystem::complete(&lat).describe();
        assert!(r.check("coproduct-is-join").unwrap().detail.ends_with(&all), "{r}");
    }

    #[test]
    fn identical_factors_reproduce_the_system() {
        let g = FiniteGroup::cyclic(2);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let r = product_admissibles(&g, &[("a".into(), t.clone())], &[("b".into(), t)]).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn orbit_exponents_of_c4() {
        let g = FiniteGroup::cyclic(4);
        // C4/e, C4/C2, C2/e
        assert_eq!(orbit_exponents_of_group(&g).len(), 3);
    }

    #[test]
    fn lattice_checks_c2_c4() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)] {
            let r = lattice_check(&g).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
