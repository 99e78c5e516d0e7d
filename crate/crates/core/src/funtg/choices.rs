//! The single source of coset representatives. Strict commutativity of the
//! comparison diagrams depends on using one consistent choice everywhere,
//! with the identity representing the base coset.

use crate::groups::{FiniteGroup, Subgroup};
use crate::gsets::coset_reps_within;

use super::FuntgError;

/// Representatives of `H/K` for pairs `K ≤ H ≤ G`. Pairs without an
/// override use the minimal element of each coset, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceContext {
    pub group: FiniteGroup,
    overrides: Vec<(Subgroup, Subgroup, Vec<usize>)>,
}

impl ChoiceContext {
    pub fn canonical(group: &FiniteGroup) -> Self {
        ChoiceContext { group: group.clone(), overrides: Vec::new() }
    }

    /// Replaces the representatives of `H/K`; they must form a transversal.
    pub fn with_reps(mut self, h: &Subgroup, k: &Subgroup, reps: Vec<usize>) -> Result<Self, FuntgError> {
        let g = &self.group;
        if !k.is_subset_of(h) {
            return Err(FuntgError::InvalidChoice("K is not contained in H".into()));
        }
        if reps.len() * k.len() != h.len() || reps.iter().any(|&r| !h.contains(r)) {
            return Err(FuntgError::InvalidChoice(format!("{} representatives for index {}", reps.len(), h.len() / k.len())));
        }
        for (a, &x) in reps.iter().enumerate() {
            for &y in &reps[..a] {
                if k.contains(g.mul(g.inv(y), x)) {
                    return Err(FuntgError::InvalidChoice(format!("{y} and {x} lie in the same coset")));
                }
            }
        }
        self.overrides.retain(|(a, b, _)| !(a == h && b == k));
        self.overrides.push((h.clone(), k.clone(), reps));
        Ok(self)
    }

    /// Representatives of `H/K`, in the order that numbers the cosets.
    pub fn reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
        self.overrides
            .iter()
            .find(|(a, b, _)| a == h && b == k)
            .map(|(_, _, r)| r.clone())
            .unwrap_or_else(|| coset_reps_within(&self.group, h, k))
    }

    /// Representatives `g_i` of `G/H`.
    pub fn g_reps(&self, h: &Subgroup) -> Vec<usize> {
        self.reps(&self.group.whole(), h)
    }

    /// `{g_i h_j}` for `K ≤ H`, ordered lexicographically in `(i, j)`.
    pub fn lex_reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
        let hs = self.reps(h, k);
        self.g_reps(h).iter().flat_map(|&gi| hs.iter().map(move |&hj| self.group.mul(gi, hj))).collect()
    }

    /// Whether every chosen transversal starts with the identity.
    pub fn identity_first(&self) -> bool {
        self.overrides.iter().all(|(_, _, r)| r.first() == Some(&self.group.identity()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_overridden_reps() {
        let g = FiniteGroup::cyclic(4);
        let h = g.generated(&[2]);
        let ctx = ChoiceContext::canonical(&g);
        assert_eq!(ctx.g_reps(&h), vec![0, 1]);
        let ctx = ctx.with_reps(&g.whole(), &h, vec![0, 3]).unwrap();
        assert_eq!(ctx.g_reps(&h), vec![0, 3]);
        assert!(ctx.identity_first());
        assert!(ChoiceContext::canonical(&g).with_reps(&g.whole(), &h, vec![0, 2]).is_err(), "0 and 2 share a coset");
        assert_eq!(ctx.lex_reps(&h, &g.trivial_subgroup()), vec![0, 2, 3, 1], "g_i h_j with g = (0, 3), h = (0, 2)");
    }
}
