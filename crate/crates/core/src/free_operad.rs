//! The free G-operad on a Σ-free symmetric sequence, as labeled planar trees.
//!
//! Vertices carry Σ-orbit representatives; free leaves carry the numbers
//! `1..=arity`. A leaf numbered `i` receives the i-th input. The Σ-action
//! renames leaf `i` to `σ(i)`; the G-action walks down from the root,
//! replacing a label `ℓ` by `m` where `gℓ = τ·m` and putting the image of
//! the old child at position `τ(j)` into position `j`. Leaf numbers are
//! untouched by the G-action.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::groups::{FiniteGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeOperadError {
    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("permutation of degree {degree} applied to a tree of arity {arity}")]
    DegreeMismatch { degree: usize, arity: usize },
    #[error("depth {0} exceeds the enumeration guard of {MAX_ENUM_DEPTH}")]
    TooDeep(usize),
    #[error("tree parse error: {0}")]
    Parse(String),
    #[error("invalid tree: {0}")]
    Invalid(String),
}

/// Largest depth accepted by [`enumerate_trees_bounded`].
pub const MAX_ENUM_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelInfo {
    pub name: String,
    pub arity: usize,
}

/// Σ-orbit representatives with the G-action on them: `act[g][ℓ] = (m, τ)`
/// means `g·ℓ = τ·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub group: FiniteGroup,
    pub labels: Vec<LabelInfo>,
    pub act: Vec<Vec<(usize, Permutation)>>,
}

impl GeneratorSet {
    pub fn arity(&self, label: usize) -> usize {
        self.labels[label].arity
    }

    pub fn label_by_name(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Checks that the table is a G-action up to Σ: `(gh)ℓ = g(hℓ)`.
    pub fn validate(&self) -> Result<(), FreeOperadError> {
        let g = &self.group;
        for l in 0..self.labels.len() {
            let (m, tau) = &self.act[0][l];
            if *m != l || !tau.is_identity() {
                return Err(FreeOperadError::Invalid(format!("identity moves label {}", self.labels[l].name)));
            }
            for a in g.elements() {
                for b in g.elements() {
                    // a(bℓ) = a(τ_b m_b) = τ_b (a m_b) = τ_b τ_a' m'
                    let (mb, tb) = &self.act[b][l];
                    let (mab, ta) = &self.act[a][*mb];
                    let (m2, t2) = &self.act[g.mul(a, b)][l];
                    if mab != m2 || *t2 != tb.compose(ta) {
                        return Err(FreeOperadError::Invalid(format!("action table fails at ({a}, {b}) on {}", self.labels[l].name)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A tree of the free operad. `Leaf(i)` is the free leaf numbered `i`
/// (1-based); a node with an arity-0 label and no children is a bound leaf.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    Node(usize, Vec<Tree>),
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(i) => write!(f, "{i}"),
            Tree::Node(l, cs) if cs.is_empty() => write!(f, "#{l}"),
            Tree::Node(l, cs) => {
                write!(f, "(#{l}")?;
                for c in cs {
                    write!(f, " {c:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Tree {
    /// The unit tree `1`.
    pub fn unit() -> Tree {
        Tree::Leaf(1)
    }

    /// One vertex with leaves `1..=k` in planar order.
    pub fn corolla(label: usize, k: usize) -> Tree {
        Tree::Node(label, (1..=k).map(Tree::Leaf).collect())
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, cs) => cs.iter().map(Tree::arity).sum(),
        }
    }

    /// Vertex depth: the unit tree has depth 0, a corolla depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, cs) => 1 + cs.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    /// Free leaf numbers in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(i) => out.push(*i),
            Tree::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, cs) => 1 + cs.iter().map(Tree::vertex_count).sum::<usize>(),
        }
    }

    /// Whether any vertex carries a label satisfying `pred`.
    pub fn any_label(&self, pred: &impl Fn(usize) -> bool) -> bool {
        match self {
            Tree::Leaf(_) => false,
            Tree::Node(l, cs) => pred(*l) || cs.iter().any(|c| c.any_label(pred)),
        }
    }

    /// Renames every free leaf number through `f`.
    pub fn map_leaves(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(i) => Tree::Leaf(f(*i)),
            Tree::Node(l, cs) => Tree::Node(*l, cs.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    /// Renumbers leaves by rank, keeping their relative order; returns the
    /// standardized tree and the sorted original numbers.
    pub fn standardize(&self) -> (Tree, Vec<usize>) {
        let mut nums = self.leaves();
        nums.sort_unstable();
        let rank: HashMap<usize, usize> = nums.iter().enumerate().map(|(r, &x)| (x, r + 1)).collect();
        (self.map_leaves(&|i| rank[&i]), nums)
    }

    /// Same shape with leaves numbered `1..` in planar order.
    pub fn skeleton(&self) -> Tree {
        let mut next = 0;
        self.renumber_planar(&mut next)
    }

    fn renumber_planar(&self, next: &mut usize) -> Tree {
        match self {
            Tree::Leaf(_) => {
                *next += 1;
                Tree::Leaf(*next)
            }
            Tree::Node(l, cs) => Tree::Node(*l, cs.iter().map(|c| c.renumber_planar(next)).collect()),
        }
    }

    pub fn subtree(&self, pos: &[usize]) -> Option<&Tree> {
        match (pos.split_first(), self) {
            (None, _) => Some(self),
            (Some((&j, rest)), Tree::Node(_, cs)) => cs.get(j)?.subtree(rest),
            _ => None,
        }
    }

    /// Replaces the subtree at `pos`.
    pub fn replace(&self, pos: &[usize], new: Tree) -> Tree {
        match pos.split_first() {
            None => new,
            Some((&j, rest)) => match self {
                Tree::Node(l, cs) => {
                    let mut cs = cs.clone();
                    cs[j] = cs[j].replace(rest, new);
                    Tree::Node(*l, cs)
                }
                Tree::Leaf(_) => panic!("position below a leaf"),
            },
        }
    }

    /// Positions of all vertices in preorder (root first, then left to right).
    pub fn vertex_positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(t: &Tree, pos: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let Tree::Node(_, cs) = t {
                out.push(pos.clone());
                for (j, c) in cs.iter().enumerate() {
                    pos.push(j);
                    rec(c, pos, out);
                    pos.pop();
                }
            }
        }
        rec(self, &mut Vec::new(), &mut out);
        out
    }

    /// Positions of all subtrees (vertices and free leaves) in preorder.
    pub fn all_positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(t: &Tree, pos: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(pos.clone());
            if let Tree::Node(_, cs) = t {
                for (j, c) in cs.iter().enumerate() {
                    pos.push(j);
                    rec(c, pos, out);
                    pos.pop();
                }
            }
        }
        rec(self, &mut Vec::new(), &mut out);
        out
    }

    /// Checks label arities and that leaf numbers are exactly `1..=arity`.
    pub fn validate(&self, gens: &GeneratorSet) -> Result<(), FreeOperadError> {
        fn rec(t: &Tree, gens: &GeneratorSet) -> Result<(), FreeOperadError> {
            if let Tree::Node(l, cs) = t {
                let info = gens.labels.get(*l).ok_or_else(|| FreeOperadError::Invalid(format!("unknown label {l}")))?;
                if info.arity != cs.len() {
                    return Err(FreeOperadError::Invalid(format!("label {} has arity {} but {} children", info.name, info.arity, cs.len())));
                }
                cs.iter().try_for_each(|c| rec(c, gens))?;
            }
            Ok(())
        }
        rec(self, gens)?;
        let mut nums = self.leaves();
        nums.sort_unstable();
        if nums.iter().enumerate().any(|(i, &x)| x != i + 1) {
            return Err(FreeOperadError::Invalid(format!("leaf numbers {nums:?} are not 1..n")));
        }
        Ok(())
    }

    /// Deterministic preorder serialization; equal bytes iff equal trees.
    pub fn canonical_form(&self) -> Vec<u8> {
        let mut out = Vec::new();
        fn rec(t: &Tree, out: &mut Vec<u8>) {
            match t {
                Tree::Leaf(i) => {
                    out.push(0);
                    out.extend_from_slice(&(*i as u32).to_be_bytes());
                }
                Tree::Node(l, cs) => {
                    out.push(1);
                    out.extend_from_slice(&(*l as u32).to_be_bytes());
                    out.extend_from_slice(&(cs.len() as u32).to_be_bytes());
                    cs.iter().for_each(|c| rec(c, out));
                }
            }
        }
        rec(self, &mut out);
        out
    }

    /// Text form using the generator names, e.g. `(ox (ox 1 2) 3)`.
    pub fn to_text(&self, gens: &GeneratorSet) -> String {
        match self {
            Tree::Leaf(i) => i.to_string(),
            Tree::Node(l, cs) if cs.is_empty() => gens.labels[*l].name.clone(),
            Tree::Node(l, cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_text(gens)).collect();
                format!("({} {})", gens.labels[*l].name, parts.join(" "))
            }
        }
    }

    /// Parses the text form; labels are looked up by name.
    pub fn parse(text: &str, gens: &GeneratorSet) -> Result<Tree, FreeOperadError> {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let t = parse_tokens(&tokens, &mut pos, gens)?;
        if pos != tokens.len() {
            return Err(FreeOperadError::Parse(format!("trailing input after token {pos}")));
        }
        t.validate(gens)?;
        Ok(t)
    }
}

fn parse_tokens(tokens: &[&str], pos: &mut usize, gens: &GeneratorSet) -> Result<Tree, FreeOperadError> {
    let tok = *tokens.get(*pos).ok_or_else(|| FreeOperadError::Parse("unexpected end of input".into()))?;
    *pos += 1;
    let label = |name: &str| gens.label_by_name(name).ok_or_else(|| FreeOperadError::Parse(format!("unknown label `{name}`")));
    match tok {
        "(" => {
            let head = *tokens.get(*pos).ok_or_else(|| FreeOperadError::Parse("empty list".into()))?;
            *pos += 1;
            let l = label(head)?;
            let mut cs = Vec::new();
            while tokens.get(*pos) != Some(&")") {
                if *pos >= tokens.len() {
                    return Err(FreeOperadError::Parse("unbalanced parentheses".into()));
                }
                cs.push(parse_tokens(tokens, pos, gens)?);
            }
            *pos += 1;
            Ok(Tree::Node(l, cs))
        }
        ")" => Err(FreeOperadError::Parse("unexpected `)`".into())),
        atom => match atom.parse::<usize>() {
            Ok(0) => Err(FreeOperadError::Parse("leaf numbers start at 1".into())),
            Ok(i) => Ok(Tree::Leaf(i)),
            Err(_) => Ok(Tree::Node(label(atom)?, Vec::new())),
        },
    }
}

/// γ(t; u_1, …, u_k): graft `u_i` at the leaf numbered `i`; the leaves of
/// `u_i` form the i-th block of the result, in `u_i`'s own order.
pub fn gamma(t: &Tree, us: &[Tree]) -> Result<Tree, FreeOperadError> {
    let k = t.arity();
    if us.len() != k {
        return Err(FreeOperadError::ArityMismatch { expected: k, got: us.len() });
    }
    let mut offsets = Vec::with_capacity(k);
    let mut acc = 0;
    for u in us {
        offsets.push(acc);
        acc += u.arity();
    }
    fn rec(t: &Tree, us: &[Tree], offsets: &[usize]) -> Tree {
        match t {
            Tree::Leaf(i) => us[i - 1].map_leaves(&|j| j + offsets[i - 1]),
            Tree::Node(l, cs) => Tree::Node(*l, cs.iter().map(|c| rec(c, us, offsets)).collect()),
        }
    }
    Ok(rec(t, us, &offsets))
}

/// γ(s; 1, …, z, …, 1) with `z` in slot `i` (1-based).
pub fn graft_at(s: &Tree, i: usize, z: &Tree) -> Tree {
    let us: Vec<Tree> = (1..=s.arity()).map(|j| if j == i { z.clone() } else { Tree::unit() }).collect();
    gamma(s, &us).expect("arity matches by construction")
}

/// The block permutation that reorders blocks of sizes `sizes` by `pi`:
/// γ(π·t; u) = block(π)·γ(t; u_{π(1)}, …, u_{π(k)}).
pub fn block_permutation(pi: &Permutation, sizes: &[usize]) -> Permutation {
    // blocks in source order are u_{π(1)}, ...; block j of the source goes
    // to the position of block π(j) in the natural order
    let k = sizes.len();
    let mut start = vec![0; k + 1];
    for i in 0..k {
        start[i + 1] = start[i] + sizes[i];
    }
    let mut images = Vec::new();
    for j in 0..k {
        let b = pi.apply(j);
        for r in 0..sizes[b] {
            images.push(start[b] + r);
        }
    }
    Permutation::from_images(images).expect("block permutation")
}

/// Σ-action: leaf `i` becomes `σ(i)`.
pub fn act_sigma(sigma: &Permutation, t: &Tree) -> Result<Tree, FreeOperadError> {
    let n = t.arity();
    if sigma.degree() != n {
        return Err(FreeOperadError::DegreeMismatch { degree: sigma.degree(), arity: n });
    }
    Ok(t.map_leaves(&|i| sigma.apply(i - 1) + 1))
}

/// G-action of the element `g`.
pub fn act_g(gens: &GeneratorSet, g: usize, t: &Tree) -> Tree {
    match t {
        Tree::Leaf(i) => Tree::Leaf(*i),
        Tree::Node(l, cs) => {
            let (m, tau) = &gens.act[g][*l];
            Tree::Node(*m, (0..cs.len()).map(|j| act_g(gens, g, &cs[tau.apply(j)])).collect())
        }
    }
}

/// The (G×Σ_n)-action `(g, σ)·t`.
pub fn act(gens: &GeneratorSet, g: usize, sigma: &Permutation, t: &Tree) -> Result<Tree, FreeOperadError> {
    act_sigma(sigma, &act_g(gens, g, t))
}

/// η(σ·r): the corolla on `r` with leaves numbered σ1, …, σn.
pub fn eta_embed(gens: &GeneratorSet, sigma: &Permutation, rep: usize) -> Result<Tree, FreeOperadError> {
    act_sigma(sigma, &Tree::corolla(rep, gens.arity(rep)))
}

/// All pairs `(g, σ)` fixing `t`. For each g the Σ-part is forced by
/// matching leaf numbers position by position; the result is re-checked by
/// applying the action.
pub fn tree_stabilizer(gens: &GeneratorSet, t: &Tree) -> Vec<(usize, Permutation)> {
    let n = t.arity();
    let target = t.leaves();
    let skel = t.skeleton();
    let mut out = Vec::new();
    for g in gens.group.elements() {
        let moved = act_g(gens, g, t);
        if moved.skeleton() != skel {
            continue;
        }
        let mut images = vec![0; n];
        for (a, b) in moved.leaves().into_iter().zip(&target) {
            images[a - 1] = b - 1;
        }
        let sigma = Permutation::from_images(images).expect("leaf numbers are a bijection");
        if act_sigma(&sigma, &moved).ok().as_ref() == Some(t) {
            out.push((g, sigma));
        }
    }
    out
}

/// All trees of arity `n` with depth at most `depth`, in a deterministic order.
pub fn enumerate_trees_bounded(gens: &GeneratorSet, n: usize, depth: usize) -> Result<Vec<Tree>, FreeOperadError> {
    if depth > MAX_ENUM_DEPTH {
        return Err(FreeOperadError::TooDeep(depth));
    }
    let mut memo: HashMap<(usize, usize), Vec<Tree>> = HashMap::new();
    let shapes = shapes(gens, n, depth, &mut memo);
    let mut out = Vec::new();
    for s in &shapes {
        for p in Permutation::all(n) {
            out.push(act_sigma(&p, s).expect("arity n"));
        }
    }
    Ok(out)
}

/// Trees with leaves numbered 1..k in planar order.
fn shapes(gens: &GeneratorSet, k: usize, depth: usize, memo: &mut HashMap<(usize, usize), Vec<Tree>>) -> Vec<Tree> {
    if let Some(v) = memo.get(&(k, depth)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if k == 1 {
        out.push(Tree::Leaf(1));
    }
    if depth > 0 {
        for l in 0..gens.labels.len() {
            let a = gens.arity(l);
            // distribute k leaves over a children
            let mut parts = vec![0usize; a];
            fn compositions(i: usize, rem: usize, parts: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
                if i == parts.len() {
                    if rem == 0 {
                        acc.push(parts.clone());
                    }
                    return;
                }
                for x in 0..=rem {
                    parts[i] = x;
                    compositions(i + 1, rem - x, parts, acc);
                }
            }
            let mut comps = Vec::new();
            compositions(0, k, &mut parts, &mut comps);
            for comp in comps {
                let options: Vec<Vec<Tree>> = comp.iter().map(|&c| shapes(gens, c, depth - 1, memo)).collect();
                if options.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut idx = vec![0usize; a];
                loop {
                    let mut offset = 0;
                    let children: Vec<Tree> = (0..a)
                        .map(|j| {
                            let c = options[j][idx[j]].map_leaves(&|x| x + offset);
                            offset += comp[j];
                            c
                        })
                        .collect();
                    out.push(Tree::Node(l, children));
                    let mut j = 0;
                    loop {
                        if j == a {
                            break;
                        }
                        idx[j] += 1;
                        if idx[j] < options[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == a {
                        break;
                    }
                }
            }
        }
    }
    memo.insert((k, depth), out.clone());
    out
}

/// Searches for a tree of arity `n` and depth at most `depth` fixed by every
/// element of the graph subgroup `lambda`.
///
/// A fixed tree's root label ℓ satisfies `kℓ = τ_k·ℓ` for all `k`; the
/// subgroup then permutes child positions by `p ↦ τ_k⁻¹(p)`, each orbit of
/// positions is determined by one child fixed by the position stabilizer,
/// and the leaf sets of the children partition the leaves. The search
/// enumerates exactly these choices.
pub fn find_fixed_tree(gens: &GeneratorSet, lambda: &[(usize, Permutation)], n: usize, depth: usize) -> Option<Tree> {
    assert!(n <= 31, "leaf sets are stored as bitmasks");
    let mut search = FixedSearch { gens, lambda, memo: HashMap::new() };
    let all: Vec<usize> = (0..lambda.len()).collect();
    search.solve(&all, (1u32 << n) - 1, depth)
}

struct FixedSearch<'a> {
    gens: &'a GeneratorSet,
    lambda: &'a [(usize, Permutation)],
    memo: HashMap<(Vec<usize>, u32, usize), Option<Tree>>,
}

impl FixedSearch<'_> {
    fn image(&self, k: usize, set: u32) -> u32 {
        let sigma = &self.lambda[k].1;
        (0..32).filter(|i| set & (1 << i) != 0).fold(0, |acc, i| acc | (1 << sigma.apply(i)))
    }

    fn solve(&mut self, ks: &[usize], leaves: u32, depth: usize) -> Option<Tree> {
        let key = (ks.to_vec(), leaves, depth);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let r = self.solve_uncached(ks, leaves, depth);
        self.memo.insert(key, r.clone());
        r
    }

    fn solve_uncached(&mut self, ks: &[usize], leaves: u32, depth: usize) -> Option<Tree> {
        if leaves.count_ones() == 1 {
            let x = leaves.trailing_zeros() as usize;
            if ks.iter().all(|&k| self.lambda[k].1.apply(x) == x) {
                return Some(Tree::Leaf(x + 1));
            }
        }
        if depth == 0 {
            return None;
        }
        let gens = self.gens;
        for l in 0..gens.labels.len() {
            if !ks.iter().all(|&k| gens.act[self.lambda[k].0][l].0 == l) {
                continue;
            }
            let a = gens.arity(l);
            // k sends position p to τ_k⁻¹(p)
            let moves: Vec<Permutation> = ks.iter().map(|&k| gens.act[self.lambda[k].0][l].1.inverse()).collect();
            let mut orbit_of = vec![usize::MAX; a];
            let mut orbits: Vec<usize> = Vec::new();
            for p in 0..a {
                if orbit_of[p] == usize::MAX {
                    for m in &moves {
                        orbit_of[m.apply(p)] = orbits.len();
                    }
                    orbits.push(p);
                }
            }
            let mut children: Vec<Option<Tree>> = vec![None; a];
            if self.assign(ks, &moves, &orbits, 0, leaves, depth, &mut children) {
                return Some(Tree::Node(l, children.into_iter().map(Option::unwrap).collect()));
            }
        }
        None
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &mut self,
        ks: &[usize],
        moves: &[Permutation],
        orbits: &[usize],
        idx: usize,
        remaining: u32,
        depth: usize,
        children: &mut Vec<Option<Tree>>,
    ) -> bool {
        if idx == orbits.len() {
            return remaining == 0;
        }
        let p = orbits[idx];
        let stab: Vec<usize> = ks.iter().zip(moves).filter(|(_, m)| m.apply(p) == p).map(|(&k, _)| k).collect();
        // one element of ks reaching each position of the orbit
        let mut reach: Vec<(usize, usize)> = Vec::new();
        for (&k, m) in ks.iter().zip(moves) {
            let q = m.apply(p);
            if !reach.iter().any(|&(q2, _)| q2 == q) {
                reach.push((q, k));
            }
        }
        let mut sub = remaining;
        loop {
            let s = sub;
            let stable = stab.iter().all(|&k| self.image(k, s) == s);
            let images: Vec<u32> = reach.iter().map(|&(_, k)| self.image(k, s)).collect();
            let union = images.iter().fold(0u32, |acc, &x| acc | x);
            let disjoint = images.iter().map(|x| x.count_ones()).sum::<u32>() == union.count_ones();
            if stable && disjoint && union & !remaining == 0 {
                if let Some(c) = self.solve(&stab, s, depth - 1) {
                    for &(q, k) in &reach {
                        let (g, sigma) = &self.lambda[k];
                        children[q] = Some(act_sigma_partial(sigma, &act_g(self.gens, *g, &c)));
                    }
                    if self.assign(ks, moves, orbits, idx + 1, remaining & !union, depth, children) {
                        return true;
                    }
                }
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & remaining;
        }
    }
}

/// Renames leaves through a permutation of a larger leaf set.
fn act_sigma_partial(sigma: &Permutation, t: &Tree) -> Tree {
    t.map_leaves(&|i| sigma.apply(i - 1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// e (arity 0) and ox (arity 2), both G-fixed.
    fn sm_empty(group: &FiniteGroup) -> GeneratorSet {
        let labels = vec![LabelInfo { name: "e".into(), arity: 0 }, LabelInfo { name: "ox".into(), arity: 2 }];
        let act = group.elements().map(|_| vec![(0, Permutation::identity(0)), (1, Permutation::identity(2))]).collect();
        GeneratorSet { group: group.clone(), labels, act }
    }

    #[test]
    fn gamma_builds_standard_tensor() {
        let gens = sm_empty(&FiniteGroup::trivial());
        let ox = Tree::corolla(1, 2);
        let t3 = gamma(&ox, &[ox.clone(), Tree::unit()]).unwrap();
        assert_eq!(t3, Tree::parse("(ox (ox 1 2) 3)", &gens).unwrap());
        assert_eq!(gamma(&Tree::unit(), std::slice::from_ref(&t3)).unwrap(), t3);
        assert_eq!(gamma(&t3, &[Tree::unit(), Tree::unit(), Tree::unit()]).unwrap(), t3);
        assert_ne!(t3.canonical_form(), gamma(&ox, &[Tree::unit(), ox.clone()]).unwrap().canonical_form());
    }

    #[test]
    fn permuted_corolla_grafts_blocks_in_swapped_order() {
        let gens = sm_empty(&FiniteGroup::trivial());
        let swapped = eta_embed(&gens, &Permutation::from_one_line(&[2, 1]).unwrap(), 1).unwrap();
        let a = Tree::corolla(1, 2);
        let b = Tree::unit();
        // leaf 1 of the corolla sits second, so a's block follows b's position
        let t = gamma(&swapped, &[a, b]).unwrap();
        assert_eq!(t.to_text(&gens), "(ox 3 (ox 1 2))");
    }

    #[test]
    fn enumeration_counts() {
        let gens = sm_empty(&FiniteGroup::trivial());
        assert_eq!(enumerate_trees_bounded(&gens, 1, 0).unwrap(), vec![Tree::unit()]);
        assert_eq!(enumerate_trees_bounded(&gens, 2, 1).unwrap().len(), 2);
        let d1 = enumerate_trees_bounded(&gens, 2, 2).unwrap().len();
        let d2 = enumerate_trees_bounded(&gens, 2, 3).unwrap().len();
        assert!(d1 < d2, "counts grow with depth");
        assert!(matches!(enumerate_trees_bounded(&gens, 2, 5), Err(FreeOperadError::TooDeep(5))));
    }

    #[test]
    fn stabilizer_of_swapped_corolla_under_trivial_action() {
        let g = FiniteGroup::cyclic(2);
        let gens = sm_empty(&g);
        let t = eta_embed(&gens, &Permutation::from_one_line(&[2, 1]).unwrap(), 1).unwrap();
        let stab = tree_stabilizer(&gens, &t);
        assert_eq!(stab.len(), 2);
        assert!(stab.iter().all(|(_, s)| s.is_identity()));
        let unit_stab = tree_stabilizer(&gens, &Tree::unit());
        assert_eq!(unit_stab.len(), 2);
    }

    #[test]
    fn fixed_search_finds_trees_fixed_by_sigma_free_graphs() {
        let g = FiniteGroup::cyclic(2);
        let gens = sm_empty(&g);
        // trivial graph on 3 points: the left comb is fixed
        let lambda: Vec<(usize, Permutation)> = g.elements().map(|x| (x, Permutation::identity(3))).collect();
        let t = find_fixed_tree(&gens, &lambda, 3, 2).unwrap();
        assert_eq!(t.arity(), 3);
        assert_eq!(tree_stabilizer(&gens, &t).len(), 2);
        // a swap graph has no fixed point without norms
        let swap = vec![(0, Permutation::identity(2)), (1, Permutation::from_one_line(&[2, 1]).unwrap())];
        assert_eq!(find_fixed_tree(&gens, &swap, 2, 3), None);
    }
}
