//! Finite groups given by multiplication tables, their subgroups and left
//! cosets, and permutations in one-line notation.
//!
//! Elements are indices `0..order`; the identity is always index 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not square of size {order} or has an entry out of range")]
    BadTable { order: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("malformed group file: {0}")]
    Parse(String),
    #[error("element list {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
}

/// A finite group presented by its multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Validates a table and relabels so that the identity becomes index 0.
    /// Relabeling swaps the identity with element 0 and fixes the rest.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::BadTable { order: n });
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        if let Some(a) = (0..n).find(|&a| !(0..n).any(|b| table[a][b] == id && table[b][a] == id)) {
            return Err(GroupError::NoInverse { element: a });
        }
        let relabel = |x: usize| {
            if x == id {
                0
            } else if x == 0 {
                id
            } else {
                x
            }
        };
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a)][relabel(b)] = relabel(table[a][b]);
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap()).collect();
        Ok(FiniteGroup { mul, inv })
    }

    /// Closes a set of permutations of equal degree under composition.
    /// Element 0 is the identity; the rest follow in order of discovery.
    /// Returns the group and the permutation realizing each element.
    pub fn from_permutations(gens: &[Permutation]) -> (Self, Vec<Permutation>) {
        let degree = gens.first().map(|p| p.degree()).unwrap_or(0);
        let mut elems = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| index[&elems[a].compose(&elems[b])]).collect())
            .collect();
        (Self::from_table(mul).expect("permutation groups are groups"), elems)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n`; element `k` is the k-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(mul).expect("cyclic table")
    }

    /// The symmetric group on `n` letters with elements in lexicographic
    /// one-line order, so element 0 is the identity.
    pub fn symmetric(n: usize) -> (Self, Vec<Permutation>) {
        let perms = Permutation::all(n);
        let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        (Self::from_table(mul).expect("symmetric table"), perms)
    }

    /// S3 generated by (12) and (123).
    pub fn s3() -> Self {
        Self::symmetric(3).0
    }

    /// Direct product with pairs `(a, b)` encoded as `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let mul = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table(mul).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(0);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { elements: set.into_iter().collect() }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Checks that a sorted element list is closed under products and inverses.
    pub fn subgroup(&self, mut elements: Vec<usize>) -> Result<Subgroup, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let ok = elements.first() == Some(&0)
            && elements.iter().all(|&x| x < self.order())
            && elements.iter().all(|&a| {
                elements.binary_search(&self.inv(a)).is_ok()
                    && elements.iter().all(|&b| elements.binary_search(&self.mul(a, b)).is_ok())
            });
        if ok {
            Ok(Subgroup { elements })
        } else {
            Err(GroupError::NotASubgroup(elements))
        }
    }

    /// All subgroups sorted by (size, element list).
    ///
    /// Every subgroup is a join of cyclic subgroups, so closing the cyclic
    /// subgroups under pairwise joins reaches all of them.
    pub fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Subgroup> = self.elements().map(|g| self.generated(&[g])).collect();
        let mut found: BTreeSet<Subgroup> = cyclic.clone();
        let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subset_of(&h) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.extend_from_slice(&c.elements);
                let j = self.generated(&gens);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        out
    }

    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { elements: a.elements.iter().copied().filter(|x| b.contains(*x)).collect() }
    }

    /// Minimal element of each left coset gH; the identity coset first, the
    /// rest ascending.
    pub fn left_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut reps: Vec<usize> = self
            .elements()
            .filter(|&g| h.elements.iter().all(|&x| self.mul(g, x) >= g))
            .collect();
        reps.sort_unstable();
        reps
    }

    /// Writes `g = reps[i] * h` with `h` in `H`.
    pub fn coset_decompose(&self, reps: &[usize], sub: &Subgroup, g: usize) -> (usize, usize) {
        for (i, &r) in reps.iter().enumerate() {
            let h = self.mul(self.inv(r), g);
            if sub.contains(h) {
                return (i, h);
            }
        }
        panic!("coset representatives do not cover the group")
    }

    /// Parses `group <order>` followed by the table rows.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GroupError::Parse("empty input".into()))?;
        let order: usize = header
            .strip_prefix("group")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| GroupError::Parse(format!("bad header `{header}`")))?;
        let mut table = Vec::with_capacity(order);
        for line in lines {
            let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            table.push(row.map_err(|e| GroupError::Parse(format!("bad row `{line}`: {e}")))?);
        }
        if table.len() != order {
            return Err(GroupError::Parse(format!("expected {order} rows, found {}", table.len())));
        }
        Self::from_table(table)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\n", self.order());
        for row in &self.mul {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// Named small groups: `c<n>`, `s3`, `klein`.
    pub fn named(name: &str) -> Option<Self> {
        let name = name.to_ascii_lowercase();
        match name.as_str() {
            "s3" => Some(Self::s3()),
            "klein" | "v4" => Some(Self::cyclic(2).direct_product(&Self::cyclic(2))),
            "trivial" | "e" => Some(Self::trivial()),
            _ => name.strip_prefix('c').and_then(|k| k.parse().ok()).filter(|&k| k > 0).map(Self::cyclic),
        }
    }
}

/// A subgroup as a sorted element list; the parent group is passed
/// alongside wherever it matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

/// A permutation of `{1..n}` stored 0-based; displayed in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", cells.join(" "))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images; `None` unless a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation { images })
    }

    /// From one-line notation on `{1..n}`.
    pub fn from_one_line(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// The transposition of 0-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All permutations of degree `n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Block sum: `self` on the first `self.degree()` points, `other` after.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let k = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|x| x + k));
        Permutation { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u32..(1 << n))
            .filter(|mask| {
                let elems: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                g.subgroup(elems.clone()).map(|s| s.elements == elems).unwrap_or(false)
            })
            .count()
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // identity sits at index 1 in this C2 table
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn table_errors_name_the_violation() {
        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(matches!(FiniteGroup::from_table(bad), Err(GroupError::NotAssociative { .. })));
        let noid = vec![vec![1, 0], vec![0, 0]];
        assert!(matches!(FiniteGroup::from_table(noid), Err(GroupError::NoIdentity) | Err(GroupError::NotAssociative { .. })));
        let noinv = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(FiniteGroup::from_table(noinv), Err(GroupError::NoInverse { element: 1 }));
    }

    #[test]
    fn s3_from_generators_matches_symmetric() {
        let t = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let c = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let (g, perms) = FiniteGroup::from_permutations(&[t, c]);
        assert_eq!(g.order(), 6);
        assert!(perms[0].is_identity());
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for (g, expected) in [(FiniteGroup::trivial(), 1), (FiniteGroup::cyclic(2), 2), (FiniteGroup::s3(), 6), (FiniteGroup::cyclic(4), 3), (FiniteGroup::cyclic(6), 4)] {
            let subs = g.enumerate_subgroups();
            assert_eq!(subs.len(), expected, "subgroup count for order {}", g.order());
            assert_eq!(subs.len(), brute_subgroups(&g), "brute force agrees");
        }
        let c2s2 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::symmetric(2).0);
        assert_eq!(c2s2.enumerate_subgroups().len(), 5);
        let c2s3 = FiniteGroup::s3().direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(c2s3.enumerate_subgroups().len(), brute_subgroups(&c2s3));
    }

    #[test]
    fn coset_reps_partition_the_group() {
        let g = FiniteGroup::s3();
        for h in g.enumerate_subgroups() {
            let reps = g.left_coset_reps(&h);
            assert_eq!(reps[0], 0, "identity coset first");
            assert_eq!(reps.len() * h.len(), g.order(), "index times order");
            let mut covered: Vec<usize> = reps.iter().flat_map(|&r| h.elements.iter().map(move |&x| (r, x))).map(|(r, x)| g.mul(r, x)).collect();
            covered.sort_unstable();
            covered.dedup();
            assert_eq!(covered.len(), g.order(), "cosets are disjoint and cover");
        }
    }

    #[test]
    fn permutation_laws_exhaustive() {
        for n in 0..=5 {
            let all = Permutation::all(n);
            for p in &all {
                assert!(p.inverse().compose(p).is_identity());
            }
            if n <= 4 {
                for a in &all {
                    for b in &all {
                        for c in &all {
                            assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn group_file_roundtrip() {
        let g = FiniteGroup::s3();
        assert_eq!(FiniteGroup::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn conjugation_by_identity_is_trivial() {
        let g = FiniteGroup::s3();
        for h in g.enumerate_subgroups() {
            assert_eq!(g.conjugate(&h, 0), h);
            for x in g.elements() {
                let c = g.conjugate(&h, x);
                assert!(g.subgroup(c.elements.clone()).is_ok(), "conjugate is a subgroup");
            }
        }
    }
}
