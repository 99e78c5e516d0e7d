//! Exponents: ordered finite H-sets for a subgroup H of the ambient group,
//! with their permutation representations and graph subgroups.
//!
//! Points are stored 0-based; the ordering of the points is part of the
//! data, and the action need not preserve it.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groups::{FiniteGroup, GroupError, Permutation, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GsetError {
    #[error("action table is not a group action: {0}")]
    InvalidAction(String),
    #[error("malformed gset file: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An ordered finite H-set; `action[k][i]` is the image of point `i` under
/// the k-th element of `subgroup` (in sorted order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    pub action: Vec<Vec<usize>>,
    size: usize,
}

/// One orbit of an exponent: the stabilizer of its minimal point and its
/// points in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub stabilizer: Subgroup,
    pub points: Vec<usize>,
}

impl Exponent {
    pub fn new(group: &FiniteGroup, subgroup: Subgroup, size: usize, action: Vec<Vec<usize>>) -> Result<Self, GsetError> {
        if action.len() != subgroup.len() {
            return Err(GsetError::InvalidAction(format!("expected {} rows", subgroup.len())));
        }
        for (k, row) in action.iter().enumerate() {
            if Permutation::from_images(row.clone()).is_none() || row.len() != size {
                return Err(GsetError::InvalidAction(format!("row {k} is not a permutation of {size} points")));
            }
        }
        let t = Exponent { group: group.clone(), subgroup, action, size };
        for (ka, &a) in t.subgroup.elements.iter().enumerate() {
            for (kb, &b) in t.subgroup.elements.iter().enumerate() {
                let kab = t.subgroup.position(group.mul(a, b)).ok_or_else(|| GsetError::InvalidAction("subgroup not closed".into()))?;
                for i in 0..size {
                    if t.action[kab][i] != t.action[ka][t.action[kb][i]] {
                        return Err(GsetError::InvalidAction(format!("h={a}, h'={b}, point {}", i + 1)));
                    }
                }
            }
        }
        if (0..size).any(|i| t.action[0][i] != i) {
            return Err(GsetError::InvalidAction("identity moves a point".into()));
        }
        Ok(t)
    }

    /// `n` fixed points.
    pub fn trivial(group: &FiniteGroup, subgroup: Subgroup, n: usize) -> Self {
        let action = vec![(0..n).collect(); subgroup.len()];
        Exponent { group: group.clone(), subgroup, action, size: n }
    }

    /// H/K with points ordered by the minimal-element coset representatives
    /// of K in H.
    pub fn coset_space(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Self {
        let reps = coset_reps_within(group, h, k);
        Self::coset_space_with_reps(group, h, k, &reps)
    }

    /// H/K with point `i` the coset `reps[i] K`.
    pub fn coset_space_with_reps(group: &FiniteGroup, h: &Subgroup, k: &Subgroup, reps: &[usize]) -> Self {
        let action = h
            .elements
            .iter()
            .map(|&x| reps.iter().map(|&r| group.coset_decompose(reps, k, group.mul(x, r)).0).collect())
            .collect();
        Exponent { group: group.clone(), subgroup: h.clone(), action, size: reps.len() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The H-set with points of `self` first, then those of `other`.
    pub fn disjoint_union(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.subgroup, other.subgroup, "disjoint union over different subgroups");
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|x| x + self.size)).collect())
            .collect();
        Exponent { group: self.group.clone(), subgroup: self.subgroup.clone(), action, size: self.size + other.size }
    }

    /// σ(h) for an element `h` of the subgroup.
    pub fn sigma(&self, h: usize) -> Permutation {
        let k = self.subgroup.position(h).expect("element of the exponent's subgroup");
        Permutation::from_images(self.action[k].clone()).expect("validated action")
    }

    /// Γ_T = {(h, σ(h))}.
    pub fn graph(&self) -> Vec<(usize, Permutation)> {
        self.subgroup.elements.iter().map(|&h| (h, self.sigma(h))).collect()
    }

    pub fn act(&self, h: usize, i: usize) -> usize {
        self.action[self.subgroup.position(h).expect("element of subgroup")][i]
    }

    pub fn stabilizer(&self, i: usize) -> Subgroup {
        Subgroup { elements: self.subgroup.elements.iter().copied().filter(|&h| self.act(h, i) == i).collect() }
    }

    /// Orbits listed by minimal point.
    pub fn orbit_decompose(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for i in 0..self.size {
            if seen[i] {
                continue;
            }
            let mut points: Vec<usize> = self.action.iter().map(|row| row[i]).collect();
            points.sort_unstable();
            points.dedup();
            for &p in &points {
                seen[p] = true;
            }
            out.push(Orbit { stabilizer: self.stabilizer(i), points });
        }
        out
    }

    /// The sub-H-set on one orbit, points relabeled in increasing order.
    pub fn orbit_exponent(&self, orbit: &Orbit) -> Exponent {
        let pos = |p: usize| orbit.points.binary_search(&p).unwrap();
        let action = self.action.iter().map(|row| orbit.points.iter().map(|&p| pos(row[p])).collect()).collect();
        Exponent { group: self.group.clone(), subgroup: self.subgroup.clone(), action, size: orbit.points.len() }
    }

    /// Restriction along L ≤ H.
    pub fn restrict(&self, l: &Subgroup) -> Exponent {
        assert!(l.is_subset_of(&self.subgroup), "restriction to a non-subgroup");
        let action = l.elements.iter().map(|&x| self.action[self.subgroup.position(x).unwrap()].clone()).collect();
        Exponent { group: self.group.clone(), subgroup: l.clone(), action, size: self.size }
    }

    /// Relabels points: point `i` of `self` becomes point `pi(i)`.
    pub fn reorder(&self, pi: &Permutation) -> Exponent {
        let inv = pi.inverse();
        let action = self
            .action
            .iter()
            .map(|row| (0..self.size).map(|j| pi.apply(row[inv.apply(j)])).collect())
            .collect();
        Exponent { group: self.group.clone(), subgroup: self.subgroup.clone(), action, size: self.size }
    }

    /// Multiset of orbit stabilizers up to conjugacy in H, as representative
    /// subgroups; forgets the ordering of points.
    pub fn canonical_orbit_types(&self) -> Vec<Subgroup> {
        let mut types: Vec<Subgroup> = self
            .orbit_decompose()
            .iter()
            .map(|o| conjugacy_rep_within(&self.group, &self.subgroup, &o.stabilizer))
            .collect();
        types.sort_by(|a, b| (b.len(), &a.elements).cmp(&(a.len(), &b.elements)));
        types
    }

    pub fn is_isomorphic(&self, other: &Exponent) -> bool {
        self.size == other.size && self.subgroup == other.subgroup && self.canonical_orbit_types() == other.canonical_orbit_types()
    }

    /// Parses `gset <H elements> <n>` followed by |H| rows of n integers
    /// (1-based points).
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self, GsetError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GsetError::Parse("empty input".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.len() < 3 || words[0] != "gset" {
            return Err(GsetError::Parse(format!("bad header `{header}`")));
        }
        let nums: Result<Vec<usize>, _> = words[1..].iter().map(|w| w.trim_matches(|c| c == '{' || c == '}' || c == ',').parse()).collect();
        let nums = nums.map_err(|e| GsetError::Parse(e.to_string()))?;
        let (elems, n) = nums.split_at(nums.len() - 1);
        let h = group.subgroup(elems.to_vec())?;
        let mut rows = Vec::new();
        for line in lines {
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse::<usize>).collect();
            let row = row.map_err(|e| GsetError::Parse(e.to_string()))?;
            if row.contains(&0) {
                return Err(GsetError::Parse("points are numbered from 1".into()));
            }
            rows.push(row.into_iter().map(|x| x - 1).collect());
        }
        Exponent::new(group, h, n[0], rows)
    }

    pub fn to_text(&self) -> String {
        let elems: Vec<String> = self.subgroup.elements.iter().map(|x| x.to_string()).collect();
        let mut s = format!("gset {} {}\n", elems.join(" "), self.size);
        for row in &self.action {
            let cells: Vec<String> = row.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Minimal-element representatives of the left cosets of K in H, identity first.
pub fn coset_reps_within(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    h.elements
        .iter()
        .copied()
        .filter(|&x| k.elements.iter().all(|&y| group.mul(x, y) >= x))
        .collect()
}

/// All subgroups of G contained in H, in the global subgroup order.
pub fn subgroups_within(group: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    group.enumerate_subgroups().into_iter().filter(|s| s.is_subset_of(h)).collect()
}

/// The (size, lex)-least H-conjugate of K.
pub fn conjugacy_rep_within(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    h.elements
        .iter()
        .map(|&x| group.conjugate(k, x))
        .min_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)))
        .expect("nonempty subgroup")
}

/// One canonical exponent per isomorphism class of H-sets of size `n`:
/// orbits H/K for K running over conjugacy representatives, sorted by orbit
/// size and then by the index of K in the global subgroup order.
pub fn enumerate_hsets_up_to_iso(group: &FiniteGroup, h: &Subgroup, n: usize) -> Vec<Exponent> {
    let all = group.enumerate_subgroups();
    let mut types: BTreeMap<Subgroup, usize> = BTreeMap::new();
    for k in all.iter().filter(|s| s.is_subset_of(h)) {
        let rep = conjugacy_rep_within(group, h, k);
        let idx = all.iter().position(|s| *s == rep).unwrap();
        types.insert(rep, idx);
    }
    let mut orbit_types: Vec<(usize, usize, Subgroup)> =
        types.into_iter().map(|(k, idx)| (h.len() / k.len(), idx, k)).collect();
    orbit_types.sort();
    let spaces: Vec<Exponent> = orbit_types.iter().map(|(_, _, k)| Exponent::coset_space(group, h, k)).collect();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(spaces: &[Exponent], start: usize, remaining: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        for t in start..spaces.len() {
            if spaces[t].size() <= remaining {
                chosen.push(t);
                rec(spaces, t, remaining - spaces[t].size(), chosen, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(&spaces, 0, n, &mut chosen, &mut combos);
    for combo in combos {
        let mut t = Exponent::trivial(group, h.clone(), 0);
        for idx in combo {
            t = t.disjoint_union(&spaces[idx]);
        }
        out.push(t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Oracle: every action table of H on n points, quotiented by relabeling.
    fn brute_force_classes(group: &FiniteGroup, h: &Subgroup, n: usize) -> usize {
        let perms = Permutation::all(n);
        let mut classes: HashSet<Vec<Vec<usize>>> = HashSet::new();
        // greedy generating set; an action is determined by the generators
        let mut gens: Vec<usize> = Vec::new();
        while group.generated(&gens) != *h {
            let cur = group.generated(&gens);
            gens.push(*h.elements.iter().find(|&&x| !cur.contains(x)).unwrap());
        }
        let m = gens.len();
        let mut choice = vec![0usize; m];
        loop {
            let mut val: BTreeMap<usize, Permutation> = BTreeMap::new();
            val.insert(0, Permutation::identity(n));
            let mut frontier = vec![0usize];
            let mut consistent = true;
            while let Some(x) = frontier.pop() {
                for (j, &g) in gens.iter().enumerate() {
                    let y = group.mul(x, g);
                    let v = val[&x].compose(&perms[choice[j]]);
                    match val.get(&y) {
                        Some(w) => consistent &= *w == v,
                        None => {
                            val.insert(y, v);
                            frontier.push(y);
                        }
                    }
                }
            }
            let action: Vec<Vec<usize>> = h.elements.iter().map(|x| val[x].images().to_vec()).collect();
            if consistent {
                let t = Exponent::new(group, h.clone(), n, action).expect("consistent assignment is an action");
                let canon = perms.iter().map(|p| t.reorder(p).action).min().unwrap();
                classes.insert(canon);
            }
            let mut i = 0;
            loop {
                if i == m {
                    return classes.len();
                }
                choice[i] += 1;
                if choice[i] < perms.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn c2_mod_e_has_swap() {
        let g = FiniteGroup::cyclic(2);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        assert_eq!(t.sigma(1), Permutation::from_one_line(&[2, 1]).unwrap());
        let triv = Exponent::trivial(&g, g.whole(), 2);
        assert!(triv.sigma(1).is_identity());
        assert!(!t.is_isomorphic(&triv), "C2/e is not trivial");
    }

    #[test]
    fn c4_mod_c2_generator_swaps() {
        let g = FiniteGroup::cyclic(4);
        let c2 = g.subgroup(vec![0, 2]).unwrap();
        let t = Exponent::coset_space(&g, &g.whole(), &c2);
        assert_eq!(t.sigma(1), Permutation::from_one_line(&[2, 1]).unwrap());
    }

    #[test]
    fn orbit_decomposition_of_s3_set() {
        let g = FiniteGroup::s3();
        let c2 = g.enumerate_subgroups()[1].clone();
        let t = Exponent::coset_space(&g, &g.whole(), &c2).disjoint_union(&Exponent::trivial(&g, g.whole(), 1));
        let orbits = t.orbit_decompose();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].stabilizer, c2);
        assert_eq!(orbits[1].stabilizer, g.whole());
        assert_eq!(orbits.iter().map(|o| o.points.len()).sum::<usize>(), 4);
    }

    #[test]
    fn iso_class_counts_match_brute_force() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::s3()] {
            for h in g.enumerate_subgroups() {
                for n in 0..=4 {
                    let ours = enumerate_hsets_up_to_iso(&g, &h, n).len();
                    assert_eq!(ours, brute_force_classes(&g, &h, n), "H={:?} n={n}", h.elements);
                }
            }
        }
        let g = FiniteGroup::cyclic(2);
        assert_eq!(enumerate_hsets_up_to_iso(&g, &g.whole(), 2).len(), 2);
        assert_eq!(enumerate_hsets_up_to_iso(&g, &g.whole(), 3).len(), 2);
        assert_eq!(enumerate_hsets_up_to_iso(&g, &g.whole(), 0).len(), 1);
    }

    #[test]
    fn graph_is_sigma_free_and_homomorphic() {
        let g = FiniteGroup::s3();
        for h in g.enumerate_subgroups() {
            for t in enumerate_hsets_up_to_iso(&g, &h, 4) {
                assert!(t.sigma(0).is_identity(), "Γ_T meets Σ_n only in the identity");
                for &(a, ref sa) in &t.graph() {
                    for &(b, ref sb) in &t.graph() {
                        assert_eq!(t.sigma(g.mul(a, b)), sa.compose(sb), "σ is a homomorphism");
                    }
                }
            }
        }
    }

    #[test]
    fn reorderings_are_isomorphic() {
        let g = FiniteGroup::cyclic(4);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        for p in Permutation::all(4) {
            assert!(t.is_isomorphic(&t.reorder(&p)));
        }
    }

    #[test]
    fn gset_file_roundtrip() {
        let g = FiniteGroup::s3();
        let t = Exponent::coset_space(&g, &g.whole(), &g.enumerate_subgroups()[1]);
        assert_eq!(Exponent::parse(&g, &t.to_text()).unwrap(), t);
    }
}
