//! Indexing systems encoded by their admissible orbits.
//!
//! A pair `(H, K)` with `K ≤ H` records that the orbit `H/K` is admissible.
//! A relation is an indexing system when it is reflexive and closed under
//! conjugation, restriction and composition (see [`SubgroupLattice::close`]).
//! Whole H-sets are tested orbit by orbit.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::groups::{FiniteGroup, Permutation, Subgroup};
use crate::gsets::{enumerate_hsets_up_to_iso, Exponent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexingError {
    #[error("{pairs} subgroup pairs exceed the enumeration guard of {guard}")]
    TooLarge { pairs: usize, guard: usize },
    #[error("symmetric sequence has no level {0}")]
    LevelMissing(usize),
    #[error("indexing systems over different groups")]
    GroupMismatch,
}

/// Largest number of subgroup pairs for which all indexing systems are enumerated.
pub const ENUMERATION_GUARD: usize = 64;

/// Subgroups of G with the tables the closure needs.
#[derive(Debug, PartialEq, Eq)]
pub struct SubgroupLattice {
    pub group: FiniteGroup,
    pub subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    /// `conj[g][i]` is the index of g H_i g⁻¹.
    conj: Vec<Vec<usize>>,
    /// `inter[i][j]` is the index of H_i ∩ H_j.
    inter: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Arc<Self> {
        let subgroups = group.enumerate_subgroups();
        let index: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let conj = group
            .elements()
            .map(|g| subgroups.iter().map(|h| index[&group.conjugate(h, g)]).collect())
            .collect();
        let inter = subgroups
            .iter()
            .map(|a| subgroups.iter().map(|b| index[&group.intersect(a, b)]).collect())
            .collect();
        Arc::new(SubgroupLattice { group: group.clone(), subgroups, index, conj, inter })
    }

    pub fn index_of(&self, h: &Subgroup) -> usize {
        self.index[h]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].is_subset_of(&self.subgroups[b])
    }

    /// All pairs `(H, K)` with `K ≤ H`.
    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.subgroups.len();
        (0..n).flat_map(|h| (0..n).filter(move |&k| self.le(k, h)).map(move |k| (h, k))).collect()
    }

    /// Orbit pairs `(H, stabilizer)` of an exponent.
    pub fn orbit_pairs(&self, t: &Exponent) -> Vec<(usize, usize)> {
        let h = self.index_of(&t.subgroup);
        t.orbit_decompose().iter().map(|o| (h, self.index_of(&o.stabilizer))).collect()
    }

    /// Least indexing system containing `seed`, by fixed-point iteration of
    /// the four closure rules.
    pub fn close(&self, seed: impl IntoIterator<Item = (usize, usize)>) -> BTreeSet<(usize, usize)> {
        let g = &self.group;
        let mut pairs: BTreeSet<(usize, usize)> = seed.into_iter().collect();
        pairs.extend((0..self.subgroups.len()).map(|h| (h, h)));
        loop {
            let mut new: Vec<(usize, usize)> = Vec::new();
            for &(h, k) in &pairs {
                for x in g.elements() {
                    new.push((self.conj[x][h], self.conj[x][k]));
                }
                for l in (0..self.subgroups.len()).filter(|&l| self.le(l, h)) {
                    for &x in &self.subgroups[h].elements {
                        new.push((l, self.inter[l][self.conj[x][k]]));
                    }
                }
                for &(k2, j) in pairs.range((k, 0)..=(k, usize::MAX)) {
                    debug_assert_eq!(k2, k);
                    new.push((h, j));
                }
            }
            let before = pairs.len();
            pairs.extend(new);
            if pairs.len() == before {
                return pairs;
            }
        }
    }
}

/// An indexing system for the group of its lattice.
#[derive(Clone)]
pub struct IndexingSystem {
    pub lattice: Arc<SubgroupLattice>,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl PartialEq for IndexingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs && self.lattice.group == other.lattice.group
    }
}

impl Eq for IndexingSystem {}

impl fmt::Debug for IndexingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexingSystem{}", self.describe())
    }
}

impl IndexingSystem {
    pub fn trivial(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::from_pairs(lattice, [])
    }

    pub fn complete(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::from_pairs(lattice, lattice.all_pairs())
    }

    /// Closure of an arbitrary set of pairs.
    pub fn from_pairs(lattice: &Arc<SubgroupLattice>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        IndexingSystem { lattice: lattice.clone(), pairs: lattice.close(pairs) }
    }

    /// The indexing system generated by a list of exponents.
    pub fn generate(lattice: &Arc<SubgroupLattice>, exponents: &[Exponent]) -> Self {
        let seed: Vec<(usize, usize)> = exponents.iter().flat_map(|t| lattice.orbit_pairs(t)).collect();
        Self::from_pairs(lattice, seed)
    }

    pub fn contains_pair(&self, h: usize, k: usize) -> bool {
        self.pairs.contains(&(h, k))
    }

    /// Whether every orbit of `t` is admissible.
    pub fn contains(&self, t: &Exponent) -> bool {
        self.lattice.orbit_pairs(t).iter().all(|p| self.pairs.contains(p))
    }

    pub fn is_subsystem_of(&self, other: &IndexingSystem) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn meet(&self, other: &IndexingSystem) -> Result<Self, IndexingError> {
        self.same_group(other)?;
        Ok(IndexingSystem { lattice: self.lattice.clone(), pairs: self.pairs.intersection(&other.pairs).copied().collect() })
    }

    pub fn join(&self, other: &IndexingSystem) -> Result<Self, IndexingError> {
        self.same_group(other)?;
        Ok(Self::from_pairs(&self.lattice, self.pairs.union(&other.pairs).copied()))
    }

    fn same_group(&self, other: &IndexingSystem) -> Result<(), IndexingError> {
        if self.lattice.group == other.lattice.group {
            Ok(())
        } else {
            Err(IndexingError::GroupMismatch)
        }
    }

    /// Non-reflexive pairs as `H/K` with subgroups written by element lists.
    pub fn describe(&self) -> String {
        let subs = &self.lattice.subgroups;
        let items: Vec<String> = self
            .pairs
            .iter()
            .filter(|(h, k)| h != k)
            .map(|&(h, k)| format!("{:?}/{:?}", subs[h].elements, subs[k].elements))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// All indexing systems of G sorted by pair count, with Hasse edges
/// `(lower, upper)` of the inclusion order.
pub struct IndexingLattice {
    pub systems: Vec<IndexingSystem>,
    pub hasse: Vec<(usize, usize)>,
}

/// Every closed relation is the join of the principal closures of its
/// pairs, so breadth-first joining from the trivial system reaches all of
/// them.
pub fn enumerate_indexing_systems(group: &FiniteGroup) -> Result<IndexingLattice, IndexingError> {
    let lattice = SubgroupLattice::new(group);
    let all = lattice.all_pairs();
    if all.len() > ENUMERATION_GUARD {
        return Err(IndexingError::TooLarge { pairs: all.len(), guard: ENUMERATION_GUARD });
    }
    let principal: Vec<BTreeSet<(usize, usize)>> = all.iter().map(|&p| lattice.close([p])).collect();
    let mut found: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let start = lattice.close([]);
    found.insert(start.iter().copied().collect());
    let mut frontier = vec![start];
    while let Some(cur) = frontier.pop() {
        for p in &principal {
            if p.is_subset(&cur) {
                continue;
            }
            let next = lattice.close(cur.union(p).copied());
            if found.insert(next.iter().copied().collect()) {
                frontier.push(next);
            }
        }
    }
    let mut systems: Vec<IndexingSystem> = found
        .into_iter()
        .map(|v| IndexingSystem { lattice: lattice.clone(), pairs: v.into_iter().collect() })
        .collect();
    systems.sort_by(|a, b| (a.pairs.len(), &a.pairs).cmp(&(b.pairs.len(), &b.pairs)));
    let n = systems.len();
    let below = |i: usize, j: usize| i != j && systems[i].is_subsystem_of(&systems[j]);
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                hasse.push((i, j));
            }
        }
    }
    Ok(IndexingLattice { systems, hasse })
}

/// A finite (G×Σ_n)-set given by an action function.
pub trait GSigmaSet: Send + Sync {
    fn size(&self) -> usize;
    fn act(&self, g: usize, sigma: &Permutation, point: usize) -> usize;
}

/// One summand of a level: a coset space (G×Σ_n)/Γ_T or an explicit set.
#[derive(Clone)]
pub enum Summand {
    Coset(Exponent),
    Explicit(Arc<dyn GSigmaSet>),
}

/// A symmetric sequence of finite (G×Σ_n)-sets on finitely many levels.
#[derive(Clone)]
pub struct SymSeqLevelwise {
    pub group: FiniteGroup,
    pub levels: BTreeMap<usize, Vec<Summand>>,
}

/// Whether the coset space (G×Σ_n)/Γ_T has a point fixed by every element
/// of `lambda`: some `x` with `x⁻¹ λ x ∈ Γ_T` for all `λ`.
pub fn coset_has_fixed_point(group: &FiniteGroup, gamma: &Exponent, lambda: &[(usize, Permutation)]) -> bool {
    let n = gamma.size();
    let graph: HashSet<(usize, Permutation)> = gamma.graph().into_iter().collect();
    let perms = Permutation::all(n);
    group.elements().any(|g| {
        perms.iter().any(|s| {
            let (gi, si) = (group.inv(g), s.inverse());
            lambda
                .iter()
                .all(|(l, tau)| graph.contains(&(group.mul(group.mul(gi, *l), g), si.compose(tau).compose(s))))
        })
    })
}

pub fn summand_has_fixed_point(group: &FiniteGroup, summand: &Summand, lambda: &[(usize, Permutation)]) -> bool {
    match summand {
        Summand::Coset(t) => coset_has_fixed_point(group, t, lambda),
        Summand::Explicit(set) => (0..set.size()).any(|p| lambda.iter().all(|(l, tau)| set.act(*l, tau, p) == p)),
    }
}

impl SymSeqLevelwise {
    /// Whether level `n` has a point fixed by `lambda`.
    pub fn has_fixed_point(&self, n: usize, lambda: &[(usize, Permutation)]) -> Result<bool, IndexingError> {
        let level = self.levels.get(&n).ok_or(IndexingError::LevelMissing(n))?;
        Ok(level.iter().any(|s| summand_has_fixed_point(&self.group, s, lambda)))
    }

    /// Levelwise product: fixed points of a product are pairs of fixed points.
    pub fn product_has_fixed_point(&self, other: &SymSeqLevelwise, n: usize, lambda: &[(usize, Permutation)]) -> Result<bool, IndexingError> {
        Ok(self.has_fixed_point(n, lambda)? && other.has_fixed_point(n, lambda)?)
    }

    /// Coproduct of generating sequences, summand lists concatenated.
    pub fn coproduct(&self, other: &SymSeqLevelwise) -> SymSeqLevelwise {
        let mut levels = self.levels.clone();
        for (n, summands) in &other.levels {
            levels.entry(*n).or_default().extend(summands.iter().cloned());
        }
        SymSeqLevelwise { group: self.group.clone(), levels }
    }
}

/// A(S) up to size `size_bound`: canonical H-sets T (every H ≤ G) whose
/// graph Γ_T fixes a point of S(|T|).
///
/// Each class is tested under every ordering of its points; the answers
/// agree because reordering conjugates Γ_T inside G×Σ_n.
pub fn admissibles_of_symseq(s: &SymSeqLevelwise, size_bound: usize) -> Result<Vec<Exponent>, IndexingError> {
    admissibles_with(&s.group, size_bound, |n, lambda| s.has_fixed_point(n, lambda))
}

/// Shared scan for A(-) given a fixed-point oracle per level.
pub fn admissibles_with(
    group: &FiniteGroup,
    size_bound: usize,
    mut fixed: impl FnMut(usize, &[(usize, Permutation)]) -> Result<bool, IndexingError>,
) -> Result<Vec<Exponent>, IndexingError> {
    let mut out = Vec::new();
    for h in group.enumerate_subgroups() {
        for n in 0..=size_bound {
            for t in enumerate_hsets_up_to_iso(group, &h, n) {
                let mut verdicts = Vec::new();
                for pi in Permutation::all(n) {
                    verdicts.push(fixed(n, &t.reorder(&pi).graph())?);
                }
                debug_assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "ordering-dependent admissibility");
                if verdicts.iter().any(|&v| v) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: every subset of the non-reflexive pairs, kept when it passes
    /// the four axioms checked directly on group elements.
    fn brute_force_systems(group: &FiniteGroup) -> Vec<BTreeSet<(Vec<usize>, Vec<usize>)>> {
        let subs = group.enumerate_subgroups();
        let mut pairs = Vec::new();
        for h in &subs {
            for k in &subs {
                if k.is_subset_of(h) && k != h {
                    pairs.push((h.elements.clone(), k.elements.clone()));
                }
            }
        }
        let mut out = Vec::new();
        for mask in 0u64..(1 << pairs.len()) {
            let mut rel: BTreeSet<(Vec<usize>, Vec<usize>)> =
                (0..pairs.len()).filter(|i| mask & (1 << i) != 0).map(|i| pairs[i].clone()).collect();
            for h in &subs {
                rel.insert((h.elements.clone(), h.elements.clone()));
            }
            let has = |a: &Subgroup, b: &Subgroup| rel.contains(&(a.elements.clone(), b.elements.clone()));
            let mut ok = true;
            for (he, ke) in &rel {
                let h = Subgroup { elements: he.clone() };
                let k = Subgroup { elements: ke.clone() };
                for g in group.elements() {
                    ok &= has(&group.conjugate(&h, g), &group.conjugate(&k, g));
                }
                for l in subs.iter().filter(|l| l.is_subset_of(&h)) {
                    for &x in &h.elements {
                        ok &= has(l, &group.intersect(l, &group.conjugate(&k, x)));
                    }
                }
                for j in subs.iter().filter(|j| j.is_subset_of(&k)) {
                    if has(&k, j) {
                        ok &= has(&h, j);
                    }
                }
            }
            if ok {
                out.push(rel);
            }
        }
        out
    }

    fn as_elements(f: &IndexingSystem) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        let s = &f.lattice.subgroups;
        f.pairs.iter().map(|&(h, k)| (s[h].elements.clone(), s[k].elements.clone())).collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (g, count) in [(FiniteGroup::trivial(), 1), (FiniteGroup::cyclic(2), 2), (FiniteGroup::cyclic(4), 5), (FiniteGroup::s3(), 0)] {
            let ours = enumerate_indexing_systems(&g).unwrap();
            let oracle = brute_force_systems(&g);
            if count > 0 {
                assert_eq!(ours.systems.len(), count, "count for order {}", g.order());
            }
            assert_eq!(ours.systems.len(), oracle.len(), "brute force count for order {}", g.order());
            let ours_sets: BTreeSet<_> = ours.systems.iter().map(as_elements).collect();
            let oracle_sets: BTreeSet<_> = oracle.into_iter().collect();
            assert_eq!(ours_sets, oracle_sets);
        }
    }

    #[test]
    fn c4_mod_c2_does_not_force_c2_mod_e() {
        let g = FiniteGroup::cyclic(4);
        let lat = SubgroupLattice::new(&g);
        let c2 = g.subgroup(vec![0, 2]).unwrap();
        let f = IndexingSystem::generate(&lat, &[Exponent::coset_space(&g, &g.whole(), &c2)]);
        assert!(f.contains_pair(lat.index_of(&g.whole()), lat.index_of(&c2)));
        assert!(!f.contains_pair(lat.index_of(&c2), 0), "(C2, e) is not forced");
    }

    #[test]
    fn contains_is_orbitwise() {
        let g = FiniteGroup::cyclic(2);
        let lat = SubgroupLattice::new(&g);
        let free = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let f = IndexingSystem::generate(&lat, std::slice::from_ref(&free));
        assert_eq!(f, IndexingSystem::complete(&lat));
        let t = free.disjoint_union(&free).disjoint_union(&Exponent::trivial(&g, g.whole(), 1));
        assert!(f.contains(&t));
        assert!(!IndexingSystem::trivial(&lat).contains(&free));
        assert!(IndexingSystem::trivial(&lat).contains(&Exponent::trivial(&g, g.whole(), 3)));
    }

    #[test]
    fn c4_atoms_meet_and_join() {
        let g = FiniteGroup::cyclic(4);
        let lat = SubgroupLattice::new(&g);
        let c2 = g.subgroup(vec![0, 2]).unwrap();
        let a = IndexingSystem::generate(&lat, &[Exponent::coset_space(&g, &c2, &g.trivial_subgroup())]);
        let b = IndexingSystem::generate(&lat, &[Exponent::coset_space(&g, &g.whole(), &c2)]);
        assert_eq!(a.meet(&b).unwrap(), IndexingSystem::trivial(&lat));
        assert_eq!(a.join(&b).unwrap(), IndexingSystem::complete(&lat));
    }

    #[test]
    fn free_c2_orbit_is_admissible_for_its_own_sequence() {
        let g = FiniteGroup::cyclic(2);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let mut levels = BTreeMap::new();
        levels.insert(0, vec![Summand::Coset(Exponent::trivial(&g, g.whole(), 0))]);
        levels.insert(1, vec![]);
        levels.insert(2, vec![Summand::Coset(Exponent::trivial(&g, g.whole(), 2)), Summand::Coset(t.clone())]);
        levels.insert(3, vec![]);
        let s = SymSeqLevelwise { group: g.clone(), levels };
        let adm = admissibles_of_symseq(&s, 3).unwrap();
        assert!(adm.iter().any(|x| x.is_isomorphic(&t)));
        assert!(!adm.iter().any(|x| x.size() == 3), "level 3 is empty");
        assert!(matches!(admissibles_of_symseq(&s, 4), Err(IndexingError::LevelMissing(4))));
    }
}
