//! The chaotic operad SM_N on trees over the generators `e`, `ox` and the
//! norm labels `g_i ⊗_T`: basic edges, υ-directed normalization and the
//! canonical path between any two trees of equal arity.
//!
//! A basic edge is stored both as the tuple `((t, t'), u, s, i, σ)` and as a
//! local rewrite at a vertex position; leaf numbers travel with the leaves.

use std::fmt;

use thiserror::Error;

use crate::free_operad::{act_sigma, gamma, graft_at, FreeOperadError, GeneratorSet, LabelInfo, Tree};
use crate::groups::{FiniteGroup, Permutation};
use crate::gsets::Exponent;
use crate::indexing::{Summand, SymSeqLevelwise};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmnError {
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("edge {kind:?} does not apply at position {pos:?}")]
    NotApplicable { kind: EdgeKind, pos: Vec<usize> },
    #[error("exponent `{0}` is not over a subgroup of the ambient group")]
    BadExponent(String),
    #[error(transparent)]
    Tree(#[from] FreeOperadError),
}

pub const UNIT: usize = 0;
pub const TENSOR: usize = 1;

/// One exponent with its identifier and the coset representatives g_i of G/H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSpec {
    pub id: String,
    pub exponent: Exponent,
    pub reps: Vec<usize>,
}

/// The set N of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    pub group: FiniteGroup,
    pub norms: Vec<NormSpec>,
}

impl ExponentSet {
    pub fn empty(group: &FiniteGroup) -> Self {
        ExponentSet { group: group.clone(), norms: Vec::new() }
    }

    /// Uses minimal-element coset representatives for every exponent.
    pub fn new(group: &FiniteGroup, exponents: Vec<(String, Exponent)>) -> Result<Self, SmnError> {
        let mut norms = Vec::new();
        for (id, exponent) in exponents {
            if exponent.group != *group {
                return Err(SmnError::BadExponent(id));
            }
            let reps = group.left_coset_reps(&exponent.subgroup);
            norms.push(NormSpec { id, exponent, reps });
        }
        Ok(ExponentSet { group: group.clone(), norms })
    }
}

/// What a label of S_N stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    Unit,
    Tensor,
    /// `g_rep ⊗_{norms[norm]}`
    Norm { norm: usize, rep: usize },
}

/// Generators of S_N together with their meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smn {
    pub exponents: ExponentSet,
    pub gens: GeneratorSet,
    pub kinds: Vec<GeneratorLabel>,
}

impl Smn {
    /// The Σ-orbit representatives of S_N and the G-action on them:
    /// `g·(g_i ⊗_T) = σ(h)⁻¹·(g_j ⊗_T)` where `g g_i = g_j h`.
    pub fn build(exponents: ExponentSet) -> Smn {
        let group = exponents.group.clone();
        let mut labels = vec![LabelInfo { name: "e".into(), arity: 0 }, LabelInfo { name: "ox".into(), arity: 2 }];
        let mut kinds = vec![GeneratorLabel::Unit, GeneratorLabel::Tensor];
        for (t, spec) in exponents.norms.iter().enumerate() {
            for i in 0..spec.reps.len() {
                labels.push(LabelInfo { name: format!("oxT:{}:{}", spec.id, i + 1), arity: spec.exponent.size() });
                kinds.push(GeneratorLabel::Norm { norm: t, rep: i });
            }
        }
        let mut act = Vec::new();
        for g in group.elements() {
            let mut row = Vec::new();
            for (l, kind) in kinds.iter().enumerate() {
                row.push(match *kind {
                    GeneratorLabel::Unit | GeneratorLabel::Tensor => (l, Permutation::identity(labels[l].arity)),
                    GeneratorLabel::Norm { norm, rep } => {
                        let spec = &exponents.norms[norm];
                        let (j, h) = group.coset_decompose(&spec.reps, &spec.exponent.subgroup, group.mul(g, spec.reps[rep]));
                        let m = kinds.iter().position(|k| *k == GeneratorLabel::Norm { norm, rep: j }).unwrap();
                        (m, spec.exponent.sigma(h).inverse())
                    }
                });
            }
            act.push(row);
        }
        let gens = GeneratorSet { group, labels, act };
        debug_assert!(gens.validate().is_ok());
        Smn { exponents, gens, kinds }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.exponents.group
    }

    pub fn is_norm(&self, label: usize) -> bool {
        matches!(self.kinds[label], GeneratorLabel::Norm { .. })
    }

    pub fn norm_label(&self, norm: usize, rep: usize) -> usize {
        self.kinds.iter().position(|k| *k == GeneratorLabel::Norm { norm, rep }).expect("norm label")
    }

    /// S_N as a levelwise coset presentation on levels `0..=max_level`:
    /// Γ_∅ at level 0, Γ_** at level 2, Γ_T at level |T|.
    pub fn symseq(&self, max_level: usize) -> SymSeqLevelwise {
        let g = self.group();
        let mut levels = std::collections::BTreeMap::new();
        for n in 0..=max_level {
            levels.insert(n, Vec::new());
        }
        let mut push = |t: Exponent| {
            if t.size() <= max_level {
                levels.get_mut(&t.size()).unwrap().push(Summand::Coset(t));
            }
        };
        push(Exponent::trivial(g, g.whole(), 0));
        push(Exponent::trivial(g, g.whole(), 2));
        for spec in &self.exponents.norms {
            push(spec.exponent.clone());
        }
        SymSeqLevelwise { group: g.clone(), levels }
    }

    pub fn parse_tree(&self, text: &str) -> Result<Tree, SmnError> {
        Ok(Tree::parse(text, &self.gens)?)
    }

    pub fn show(&self, t: &Tree) -> String {
        t.to_text(&self.gens)
    }
}

/// ⊗_0 = e, ⊗_1 = 1, ⊗_{n+1} = γ(⊗; ⊗_n, 1).
pub fn standard_tensor(n: usize) -> Tree {
    match n {
        0 => Tree::Node(UNIT, Vec::new()),
        1 => Tree::unit(),
        _ => gamma(&Tree::corolla(TENSOR, 2), &[standard_tensor(n - 1), Tree::unit()]).unwrap(),
    }
}

/// The left comb ⊗_k on the given subtrees, leaf numbers kept.
pub fn comb(children: Vec<Tree>) -> Tree {
    let mut it = children.into_iter();
    match it.next() {
        None => Tree::Node(UNIT, Vec::new()),
        Some(first) => it.fold(first, |acc, c| Tree::Node(TENSOR, vec![acc, c])),
    }
}

/// Inverse of [`comb`] for a fixed number of children.
pub fn uncomb(t: &Tree, k: usize) -> Option<Vec<Tree>> {
    match k {
        0 => matches!(t, Tree::Node(UNIT, cs) if cs.is_empty()).then(Vec::new),
        1 => Some(vec![t.clone()]),
        _ => match t {
            Tree::Node(TENSOR, cs) => {
                let mut left = uncomb(&cs[0], k - 1)?;
                left.push(cs[1].clone());
                Some(left)
            }
            _ => None,
        },
    }
}

/// Position of child `j` of a comb with `k` children, relative to the comb.
pub fn comb_child_position(k: usize, j: usize) -> Vec<usize> {
    if k <= 1 {
        return Vec::new();
    }
    if j == 0 {
        vec![0; k - 1]
    } else {
        let mut p = vec![0; k - 1 - j];
        p.push(1);
        p
    }
}

/// t^red: every norm vertex replaced by the standard tensor on its children.
pub fn reduced_tree(smn: &Smn, t: &Tree) -> Tree {
    match t {
        Tree::Leaf(i) => Tree::Leaf(*i),
        Tree::Node(l, cs) => {
            let cs: Vec<Tree> = cs.iter().map(|c| reduced_tree(smn, c)).collect();
            if smn.is_norm(*l) {
                comb(cs)
            } else {
                Tree::Node(*l, cs)
            }
        }
    }
}

/// Irreducible basic edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Id,
    Alpha,
    AlphaInv,
    Lambda,
    LambdaInv,
    Rho,
    RhoInv,
    Beta,
    /// υ for the norm label (a `g_i ⊗_T` vertex).
    Upsilon(usize),
    UpsilonInv(usize),
}

impl EdgeKind {
    pub fn is_upsilon(self) -> bool {
        matches!(self, EdgeKind::Upsilon(_) | EdgeKind::UpsilonInv(_))
    }

    /// The reverse edge kind; β is its own reverse.
    pub fn reverse(self) -> EdgeKind {
        use EdgeKind::*;
        match self {
            Id => Id,
            Alpha => AlphaInv,
            AlphaInv => Alpha,
            Lambda => LambdaInv,
            LambdaInv => Lambda,
            Rho => RhoInv,
            RhoInv => Rho,
            Beta => Beta,
            Upsilon(l) => UpsilonInv(l),
            UpsilonInv(l) => Upsilon(l),
        }
    }

    /// Kinds that may act at a vertex or leaf, given the labels present.
    pub fn all(smn: &Smn) -> Vec<EdgeKind> {
        use EdgeKind::*;
        let mut v = vec![Id, Alpha, AlphaInv, Lambda, LambdaInv, Rho, RhoInv, Beta];
        for l in 0..smn.kinds.len() {
            if smn.is_norm(l) {
                v.push(Upsilon(l));
                v.push(UpsilonInv(l));
            }
        }
        v
    }

    pub fn name(self, smn: &Smn) -> String {
        match self {
            EdgeKind::Upsilon(l) => format!("upsilon[{}]", smn.gens.labels[l].name),
            EdgeKind::UpsilonInv(l) => format!("upsilon^-1[{}]", smn.gens.labels[l].name),
            other => format!("{other:?}").to_lowercase().replace("inv", "^-1"),
        }
    }
}

/// Source and target of an irreducible edge, and its input count k.
pub fn irreducible(smn: &Smn, kind: EdgeKind) -> (Tree, Tree) {
    use EdgeKind::*;
    let ox = Tree::corolla(TENSOR, 2);
    let e = Tree::Node(UNIT, Vec::new());
    let u = Tree::unit();
    let left = gamma(&ox, &[ox.clone(), u.clone()]).unwrap();
    let right = gamma(&ox, &[u.clone(), ox.clone()]).unwrap();
    let le = gamma(&ox, &[e.clone(), u.clone()]).unwrap();
    let re = gamma(&ox, &[u.clone(), e]).unwrap();
    let swapped = act_sigma(&Permutation::from_one_line(&[2, 1]).unwrap(), &ox).unwrap();
    match kind {
        Id => (u.clone(), u),
        Alpha => (left, right),
        AlphaInv => (right, left),
        Lambda => (le, u),
        LambdaInv => (u, le),
        Rho => (re, u),
        RhoInv => (u, re),
        Beta => (ox, swapped),
        Upsilon(l) => {
            let k = smn.gens.arity(l);
            (Tree::corolla(l, k), standard_tensor(k))
        }
        UpsilonInv(l) => {
            let k = smn.gens.arity(l);
            (standard_tensor(k), Tree::corolla(l, k))
        }
    }
}

/// A basic edge `((t, t'), (u_1, …, u_k), s, i, σ)` with source
/// `σ·γ(s; 1, …, γ(t; u), …, 1)` and target the same with `t'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicEdge {
    pub kind: EdgeKind,
    pub us: Vec<Tree>,
    pub s: Tree,
    pub slot: usize,
    pub sigma: Permutation,
}

impl BasicEdge {
    /// The irreducible edge itself, `((t, t'), (1, …, 1), 1, 1, id)`.
    pub fn irreducible(smn: &Smn, kind: EdgeKind) -> BasicEdge {
        let k = irreducible(smn, kind).0.arity();
        BasicEdge { kind, us: vec![Tree::unit(); k], s: Tree::unit(), slot: 1, sigma: Permutation::identity(k) }
    }

    pub fn endpoints(&self, smn: &Smn) -> Result<(Tree, Tree), SmnError> {
        let (t, t2) = irreducible(smn, self.kind);
        if self.us.len() != t.arity() {
            return Err(SmnError::MalformedEdge(format!("surroundings: expected {} trees, got {}", t.arity(), self.us.len())));
        }
        if self.s.arity() == 0 {
            return Err(SmnError::MalformedEdge("s: context tree must have positive arity".into()));
        }
        if self.slot == 0 || self.slot > self.s.arity() {
            return Err(SmnError::MalformedEdge(format!("i: slot {} outside 1..={}", self.slot, self.s.arity())));
        }
        let src = graft_at(&self.s, self.slot, &gamma(&t, &self.us)?);
        let tgt = graft_at(&self.s, self.slot, &gamma(&t2, &self.us)?);
        if self.sigma.degree() != src.arity() {
            return Err(SmnError::MalformedEdge(format!("sigma: degree {} but arity {}", self.sigma.degree(), src.arity())));
        }
        Ok((act_sigma(&self.sigma, &src)?, act_sigma(&self.sigma, &tgt)?))
    }

    /// Decomposes the rewrite of kind `kind` at vertex position `pos` of
    /// `tree` into the tuple form.
    pub fn at(smn: &Smn, tree: &Tree, pos: &[usize], kind: EdgeKind) -> Result<BasicEdge, SmnError> {
        let not = || SmnError::NotApplicable { kind, pos: pos.to_vec() };
        let y = tree.subtree(pos).ok_or_else(not)?;
        let parts = match_redex(smn, y, kind).ok_or_else(not)?;
        let us: Vec<Tree> = parts.iter().map(|u| u.standardize().0).collect();
        let (t, _) = irreducible(smn, kind);
        let z = gamma(&t, &us)?;
        // context: the slot gets number 1, outside leaves follow by rank
        let marker = usize::MAX;
        let ctx = tree.replace(pos, Tree::Leaf(marker));
        let mut outside: Vec<usize> = ctx.leaves().into_iter().filter(|&x| x != marker).collect();
        outside.sort_unstable();
        let s = ctx.map_leaves(&|x| if x == marker { 1 } else { outside.binary_search(&x).unwrap() + 2 });
        let w = graft_at(&s, 1, &z);
        let n = tree.arity();
        let mut images = vec![0; n];
        for (a, b) in w.leaves().into_iter().zip(tree.leaves()) {
            images[a - 1] = b - 1;
        }
        let sigma = Permutation::from_images(images).expect("leaf numbering is a bijection");
        let edge = BasicEdge { kind, us, s, slot: 1, sigma };
        debug_assert_eq!(edge.endpoints(smn).map(|p| p.0).as_ref(), Ok(tree));
        Ok(edge)
    }
}

/// The subtrees a rewrite of `kind` binds at the root of `y`, in block order.
pub fn match_redex(smn: &Smn, y: &Tree, kind: EdgeKind) -> Option<Vec<Tree>> {
    use EdgeKind::*;
    let is_e = |t: &Tree| matches!(t, Tree::Node(UNIT, cs) if cs.is_empty());
    match (kind, y) {
        (Id | LambdaInv | RhoInv, _) => Some(vec![y.clone()]),
        (Alpha, Tree::Node(TENSOR, cs)) => match &cs[0] {
            Tree::Node(TENSOR, ab) => Some(vec![ab[0].clone(), ab[1].clone(), cs[1].clone()]),
            _ => None,
        },
        (AlphaInv, Tree::Node(TENSOR, cs)) => match &cs[1] {
            Tree::Node(TENSOR, bc) => Some(vec![cs[0].clone(), bc[0].clone(), bc[1].clone()]),
            _ => None,
        },
        (Lambda, Tree::Node(TENSOR, cs)) if is_e(&cs[0]) => Some(vec![cs[1].clone()]),
        (Rho, Tree::Node(TENSOR, cs)) if is_e(&cs[1]) => Some(vec![cs[0].clone()]),
        (Beta, Tree::Node(TENSOR, cs)) => Some(cs.clone()),
        (Upsilon(l), Tree::Node(m, cs)) if *m == l => Some(cs.clone()),
        (UpsilonInv(l), _) if smn.is_norm(l) => uncomb(y, smn.gens.arity(l)),
        _ => None,
    }
}

/// The local rewrite of `kind` at the root of `y`.
pub fn rewrite_local(smn: &Smn, y: &Tree, kind: EdgeKind) -> Option<Tree> {
    use EdgeKind::*;
    let e = Tree::Node(UNIT, Vec::new());
    let p = match_redex(smn, y, kind)?;
    let ox = |a: Tree, b: Tree| Tree::Node(TENSOR, vec![a, b]);
    Some(match kind {
        Id => y.clone(),
        Alpha => ox(p[0].clone(), ox(p[1].clone(), p[2].clone())),
        AlphaInv => ox(ox(p[0].clone(), p[1].clone()), p[2].clone()),
        Lambda | Rho => p[0].clone(),
        LambdaInv => ox(e, p[0].clone()),
        RhoInv => ox(p[0].clone(), e),
        Beta => ox(p[1].clone(), p[0].clone()),
        Upsilon(_) => comb(p),
        UpsilonInv(l) => Tree::Node(l, p),
    })
}

/// One step of a path: a basic edge located at a position of its source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathStep {
    pub kind: EdgeKind,
    pub pos: Vec<usize>,
    pub source: Tree,
    pub target: Tree,
}

impl PathStep {
    pub fn new(smn: &Smn, source: &Tree, pos: &[usize], kind: EdgeKind) -> Result<PathStep, SmnError> {
        let y = source.subtree(pos).ok_or(SmnError::NotApplicable { kind, pos: pos.to_vec() })?;
        let y2 = rewrite_local(smn, y, kind).ok_or(SmnError::NotApplicable { kind, pos: pos.to_vec() })?;
        Ok(PathStep { kind, pos: pos.to_vec(), source: source.clone(), target: source.replace(pos, y2) })
    }

    pub fn edge(&self, smn: &Smn) -> BasicEdge {
        BasicEdge::at(smn, &self.source, &self.pos, self.kind).expect("located steps decompose")
    }

    /// The reverse step, located on this step's target.
    pub fn reversed(&self, smn: &Smn) -> PathStep {
        let r = PathStep::new(smn, &self.target, &self.pos, self.kind.reverse()).expect("reverse applies at the same position");
        debug_assert_eq!(r.target, self.source);
        r
    }
}

/// A composable chain of steps starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoherencePath {
    pub start: Tree,
    pub steps: Vec<PathStep>,
}

impl CoherencePath {
    pub fn identity(t: &Tree) -> Self {
        CoherencePath { start: t.clone(), steps: Vec::new() }
    }

    pub fn end(&self) -> &Tree {
        self.steps.last().map(|s| &s.target).unwrap_or(&self.start)
    }

    pub fn push(&mut self, step: PathStep) {
        assert_eq!(&step.source, self.end(), "steps must compose");
        self.steps.push(step);
    }

    pub fn then(mut self, other: &CoherencePath) -> CoherencePath {
        for s in &other.steps {
            self.push(s.clone());
        }
        self
    }

    pub fn is_upsilon_directed(&self) -> bool {
        !self.steps.iter().any(|s| matches!(s.kind, EdgeKind::UpsilonInv(_)))
    }

    /// Reversal per step; β steps become forward β steps on their targets.
    pub fn reversed(&self, smn: &Smn) -> CoherencePath {
        CoherencePath { start: self.end().clone(), steps: self.steps.iter().rev().map(|s| s.reversed(smn)).collect() }
    }

    pub fn describe(&self, smn: &Smn) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{:>3}. {} at {:?}: {} -> {}\n",
                i + 1,
                s.kind.name(smn),
                s.pos,
                smn.show(&s.source),
                smn.show(&s.target)
            ));
        }
        out
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The υ-directed path from `t` to ⊗_n: υ at each norm vertex (outermost
/// first, then leftmost), λ/ρ removal of units, α⁻¹ left-combing, then a
/// bubble sort of leaf numbers by adjacent β blocks.
pub fn upsilon_directed_path(smn: &Smn, t: &Tree) -> CoherencePath {
    upsilon_directed_path_with(smn, t, NormOrder::OutermostFirst)
}

/// Order in which norm vertices are untwisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormOrder {
    /// First norm vertex in preorder: outermost, then leftmost.
    OutermostFirst,
    /// Last norm vertex in preorder: innermost and rightmost first.
    InnermostLast,
}

/// The υ-directed normalization with a chosen norm-vertex order.
pub fn upsilon_directed_path_with(smn: &Smn, t: &Tree, order: NormOrder) -> CoherencePath {
    let mut path = CoherencePath::identity(t);
    let step = |path: &mut CoherencePath, pos: Vec<usize>, kind: EdgeKind| {
        let s = PathStep::new(smn, path.end(), &pos, kind).expect("normalization step applies");
        path.push(s);
    };
    // norm vertices
    loop {
        let cur = path.end().clone();
        let mut norms = cur.vertex_positions().into_iter().filter_map(|p| match cur.subtree(&p) {
            Some(Tree::Node(l, _)) if smn.is_norm(*l) => Some((p, *l)),
            _ => None,
        });
        let next = match order {
            NormOrder::OutermostFirst => norms.next(),
            NormOrder::InnermostLast => norms.next_back(),
        };
        match next {
            Some((p, l)) => step(&mut path, p, EdgeKind::Upsilon(l)),
            None => break,
        }
    }
    // units
    let is_e = |t: &Tree| matches!(t, Tree::Node(UNIT, cs) if cs.is_empty());
    loop {
        let cur = path.end().clone();
        let next = cur.vertex_positions().into_iter().find_map(|p| match cur.subtree(&p) {
            Some(Tree::Node(TENSOR, cs)) if is_e(&cs[0]) => Some((p, EdgeKind::Lambda)),
            Some(Tree::Node(TENSOR, cs)) if is_e(&cs[1]) => Some((p, EdgeKind::Rho)),
            _ => None,
        });
        match next {
            Some((p, k)) => step(&mut path, p, k),
            None => break,
        }
    }
    // left comb
    loop {
        let cur = path.end().clone();
        let next = cur.vertex_positions().into_iter().find(|p| {
            matches!(cur.subtree(p), Some(Tree::Node(TENSOR, cs)) if matches!(cs[1], Tree::Node(TENSOR, _)))
        });
        match next {
            Some(p) => step(&mut path, p, EdgeKind::AlphaInv),
            None => break,
        }
    }
    // sort leaves
    let n = t.arity();
    loop {
        let leaves = path.end().leaves();
        let Some(j) = (0..n.saturating_sub(1)).find(|&j| leaves[j] > leaves[j + 1]) else { break };
        if j == 0 {
            step(&mut path, vec![0; n - 2], EdgeKind::Beta);
        } else {
            // swap the leaves at planar positions j and j+1 (0-based), m = j+1
            let p = vec![0; n - j - 2];
            let mut inner = p.clone();
            inner.push(1);
            step(&mut path, p.clone(), EdgeKind::Alpha);
            step(&mut path, inner, EdgeKind::Beta);
            step(&mut path, p, EdgeKind::AlphaInv);
        }
    }
    debug_assert_eq!(path.end(), &standard_tensor(n));
    path
}

/// The path t → ⊗_n → t' representing the unique morphism t → t'.
pub fn canonical_path(smn: &Smn, t: &Tree, t2: &Tree) -> Result<CoherencePath, SmnError> {
    if t.arity() != t2.arity() {
        return Err(SmnError::ArityMismatch(t.arity(), t2.arity()));
    }
    let d = upsilon_directed_path(smn, t);
    let d2 = upsilon_directed_path(smn, t2);
    Ok(d.then(&d2.reversed(smn)))
}

/// γ(p; q_1, …, q_k) on morphisms of SM_N, realized by the canonical path
/// between the composed endpoints.
pub fn sm_operad_compose(smn: &Smn, p: (&Tree, &Tree), qs: &[(Tree, Tree)]) -> Result<CoherencePath, SmnError> {
    let srcs: Vec<Tree> = qs.iter().map(|q| q.0.clone()).collect();
    let tgts: Vec<Tree> = qs.iter().map(|q| q.1.clone()).collect();
    canonical_path(smn, &gamma(p.0, &srcs)?, &gamma(p.1, &tgts)?)
}

/// All single steps out of `t`, at every subtree position and every kind.
pub fn steps_from(smn: &Smn, t: &Tree) -> Vec<PathStep> {
    let kinds = EdgeKind::all(smn);
    let mut out = Vec::new();
    for pos in t.all_positions() {
        for &k in &kinds {
            if let Ok(s) = PathStep::new(smn, t, &pos, k) {
                out.push(s);
            }
        }
    }
    out
}

/// Where a subtree at position `q` of an ε-step's target sat in its source.
/// Returns `None` for vertices created by the step.
pub fn track_back(step: &PathStep, q: &[usize]) -> Option<Vec<usize>> {
    use EdgeKind::*;
    let p = &step.pos;
    if q.len() < p.len() || q[..p.len()] != p[..] {
        return Some(q.to_vec());
    }
    let rest = &q[p.len()..];
    let (head, tail): (Vec<usize>, &[usize]) = match step.kind {
        Id => (vec![], rest),
        Alpha => match rest {
            [0, t @ ..] => (vec![0, 0], t),
            [1, 0, t @ ..] => (vec![0, 1], t),
            [1, 1, t @ ..] => (vec![1], t),
            _ => return None,
        },
        AlphaInv => match rest {
            [0, 0, t @ ..] => (vec![0], t),
            [0, 1, t @ ..] => (vec![1, 0], t),
            [1, t @ ..] => (vec![1, 1], t),
            _ => return None,
        },
        Lambda => (vec![1], rest),
        Rho => (vec![0], rest),
        LambdaInv => match rest {
            [1, t @ ..] => (vec![], t),
            _ => return None,
        },
        RhoInv => match rest {
            [0, t @ ..] => (vec![], t),
            _ => return None,
        },
        Beta => match rest {
            [0, t @ ..] => (vec![1], t),
            [1, t @ ..] => (vec![0], t),
            _ => return None,
        },
        Upsilon(_) | UpsilonInv(_) => return None,
    };
    let mut out = p.clone();
    out.extend(head);
    out.extend_from_slice(tail);
    Some(out)
}

/// Interchange of an ε step followed by a υ step: returns the υ step on the
/// original source and the ε step after it, reaching the same tree.
pub fn interchange(smn: &Smn, eps: &PathStep, ups: &PathStep) -> Option<(PathStep, PathStep)> {
    let EdgeKind::Upsilon(l) = ups.kind else { return None };
    if eps.kind.is_upsilon() || eps.target != ups.source {
        return None;
    }
    let q = track_back(eps, &ups.pos)?;
    let u2 = PathStep::new(smn, &eps.source, &q, EdgeKind::Upsilon(l)).ok()?;
    // the ε redex moves only if it sat inside a child of the norm vertex
    let k = smn.gens.arity(l);
    let p = &eps.pos;
    let new_pos = if p.len() > q.len() && p[..q.len()] == q[..] {
        let j = p[q.len()];
        let mut v = q.clone();
        v.extend(comb_child_position(k, j));
        v.extend_from_slice(&p[q.len() + 1..]);
        v
    } else {
        p.clone()
    };
    let e2 = PathStep::new(smn, &u2.target, &new_pos, eps.kind).ok()?;
    (e2.target == ups.target).then_some((u2, e2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_operad::{act, enumerate_trees_bounded};

    fn c2_free() -> Smn {
        let g = FiniteGroup::cyclic(2);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        Smn::build(ExponentSet::new(&g, vec![("t1".into(), t)]).unwrap())
    }

    #[test]
    fn standard_tensors() {
        let smn = Smn::build(ExponentSet::empty(&FiniteGroup::trivial()));
        assert_eq!(smn.show(&standard_tensor(0)), "e");
        assert_eq!(smn.show(&standard_tensor(1)), "1");
        assert_eq!(smn.show(&standard_tensor(3)), "(ox (ox 1 2) 3)");
    }

    #[test]
    fn norm_labels_and_action() {
        let smn = c2_free();
        assert_eq!(smn.gens.labels.len(), 3, "one coset rep when H = G");
        smn.gens.validate().unwrap();
        let corolla = Tree::corolla(2, 2);
        let moved = act(&smn.gens, 1, &Permutation::identity(2), &corolla).unwrap();
        assert_eq!(smn.show(&moved), "(oxT:t1:1 2 1)", "g·⊗_T = (12)·⊗_T");
        // norm over a proper subgroup of C4 has two labels permuted by the generator
        let g = FiniteGroup::cyclic(4);
        let c2 = g.subgroup(vec![0, 2]).unwrap();
        let t = Exponent::coset_space(&g, &c2, &g.trivial_subgroup());
        let smn4 = Smn::build(ExponentSet::new(&g, vec![("u".into(), t)]).unwrap());
        assert_eq!(smn4.gens.labels.len(), 4);
        assert_eq!(smn4.gens.act[1][2].0, 3);
        smn4.gens.validate().unwrap();
    }

    #[test]
    fn single_edge_canonical_paths() {
        let smn = c2_free();
        let p = canonical_path(&smn, &smn.parse_tree("(oxT:t1:1 1 2)").unwrap(), &standard_tensor(2)).unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.steps[0].kind, EdgeKind::Upsilon(2));
        let b = canonical_path(&smn, &standard_tensor(2), &smn.parse_tree("(ox 2 1)").unwrap()).unwrap();
        assert_eq!(b.steps.iter().map(|s| s.kind).collect::<Vec<_>>(), vec![EdgeKind::Beta]);
        let l = upsilon_directed_path(&smn, &smn.parse_tree("(ox e 1)").unwrap());
        assert_eq!(l.steps.iter().map(|s| s.kind).collect::<Vec<_>>(), vec![EdgeKind::Lambda]);
        assert!(upsilon_directed_path(&smn, &standard_tensor(4)).steps.is_empty());
    }

    #[test]
    fn tuple_form_matches_local_rewrite() {
        let smn = c2_free();
        for n in 0..=3 {
            for t in enumerate_trees_bounded(&smn.gens, n, 2).unwrap() {
                for s in steps_from(&smn, &t) {
                    let e = s.edge(&smn);
                    assert_eq!(e.endpoints(&smn).unwrap(), (s.source.clone(), s.target.clone()), "{:?} at {:?} on {}", s.kind, s.pos, smn.show(&t));
                }
            }
        }
    }

    #[test]
    fn alpha_basic_edge_endpoints() {
        let smn = c2_free();
        let e = BasicEdge::irreducible(&smn, EdgeKind::Alpha);
        let (a, b) = e.endpoints(&smn).unwrap();
        assert_eq!(smn.show(&a), "(ox (ox 1 2) 3)");
        assert_eq!(smn.show(&b), "(ox 1 (ox 2 3))");
        let mut bad = e.clone();
        bad.s = Tree::Node(UNIT, vec![]);
        assert!(matches!(bad.endpoints(&smn), Err(SmnError::MalformedEdge(m)) if m.starts_with("s:")));
    }

    #[test]
    fn normal_paths_end_at_standard_tensor() {
        let smn = c2_free();
        for n in 0..=4 {
            for t in enumerate_trees_bounded(&smn.gens, n, 2).unwrap() {
                let d = upsilon_directed_path(&smn, &t);
                assert!(d.is_upsilon_directed());
                assert_eq!(d.end(), &standard_tensor(n));
            }
        }
    }

    #[test]
    fn reduced_tree_removes_norms() {
        let smn = c2_free();
        let t = smn.parse_tree("(ox (oxT:t1:1 1 3) 2)").unwrap();
        let r = reduced_tree(&smn, &t);
        assert_eq!(smn.show(&r), "(ox (ox 1 3) 2)");
        assert_eq!(reduced_tree(&smn, &r), r);
    }

    #[test]
    fn interchange_reaches_the_same_tree() {
        let smn = c2_free();
        let mut count = 0;
        for t in enumerate_trees_bounded(&smn.gens, 3, 2).unwrap() {
            for e in steps_from(&smn, &t).into_iter().filter(|s| !s.kind.is_upsilon()) {
                for u in steps_from(&smn, &e.target).into_iter().filter(|s| matches!(s.kind, EdgeKind::Upsilon(_))) {
                    let (u2, e2) = interchange(&smn, &e, &u).expect("interchange exists");
                    assert_eq!(e2.target, u.target);
                    assert_eq!(u2.source, t);
                    count += 1;
                }
            }
        }
        assert!(count > 0);
    }
}
