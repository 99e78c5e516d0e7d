//! The permutativity operad `P = Σ_•` (chaotic, trivial G-action), the
//! G-permutativity operad `P_G = Set(G, Σ_•)` (chaotic), and comparison
//! maps `SM_∅ -> P` and `SM_{O(Set)} -> P_G` defined on generators.
//!
//! A permutation τ is read as the word `τ(1) … τ(n)`: the planar leaf
//! reading of a tree. Σ acts by `σ·τ = σ∘τ`, composition substitutes
//! words, and `(g, σ)·f = (x ↦ σ ∘ f(g⁻¹x))` on `P_G`.

use std::collections::{BTreeMap, HashMap};

use crate::free_operad::{act, enumerate_trees_bounded, gamma, GeneratorSet, Tree};
use crate::groups::{FiniteGroup, Permutation};
use crate::gsets::Exponent;
use crate::indexing::GSigmaSet;
use crate::report::{Check, Report};
use crate::smn::{ExponentSet, GeneratorLabel, Smn, TENSOR, UNIT};

use super::lattice::orbit_exponents_of_group;
use super::{has_fixed_tree, ZooError, SAMPLE_TREES};

/// Largest level enumerated explicitly.
pub const MAX_LEVEL_SIZE: usize = 1 << 16;

/// `γ(τ; u_1, …, u_k)` on words: the letters of `u_j` are shifted into
/// block j, then the blocks are read in the order `τ(1), …, τ(k)`.
pub fn compose_words(tau: &Permutation, us: &[Permutation]) -> Permutation {
    let mut offsets = Vec::with_capacity(us.len());
    let mut acc = 0;
    for u in us {
        offsets.push(acc);
        acc += u.degree();
    }
    let word = (0..tau.degree()).flat_map(|p| {
        let j = tau.apply(p);
        let off = offsets[j];
        us[j].images().iter().map(move |&x| x + off)
    });
    Permutation::from_images(word.collect()).expect("blocks partition the letters")
}

/// One level of a chaotic operad: the object set `Set(D, Σ_n)` with D = G
/// for `P_G` and D a point for `P`. Morphisms are implicit (one between
/// any two objects).
#[derive(Clone, Debug)]
pub struct ChaoticLevel {
    pub group: FiniteGroup,
    pub n: usize,
    pub equivariant: bool,
    pub objects: Vec<Vec<Permutation>>,
    perms: Vec<Permutation>,
    index: HashMap<Vec<Permutation>, usize>,
}

impl ChaoticLevel {
    fn build(group: &FiniteGroup, n: usize, equivariant: bool) -> Result<Self, ZooError> {
        let perms = Permutation::all(n);
        let points = if equivariant { group.order() } else { 1 };
        let size = (perms.len() as u128).pow(points as u32);
        if size > MAX_LEVEL_SIZE as u128 {
            return Err(ZooError::TooLarge { what: format!("level {n}"), size: size.min(usize::MAX as u128) as usize, limit: MAX_LEVEL_SIZE });
        }
        let mut objects: Vec<Vec<Permutation>> = vec![Vec::new()];
        for _ in 0..points {
            objects = objects.into_iter().flat_map(|f| perms.iter().map(move |p| [f.clone(), vec![p.clone()]].concat())).collect();
        }
        let index = objects.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(ChaoticLevel { group: group.clone(), n, equivariant, objects, perms, index })
    }

    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn index_of(&self, f: &[Permutation]) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `(g, σ)·f`.
    pub fn act_object(&self, g: usize, sigma: &Permutation, f: &[Permutation]) -> Vec<Permutation> {
        act_function(&self.group, self.equivariant, g, sigma, f)
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }
}

fn act_function(group: &FiniteGroup, equivariant: bool, g: usize, sigma: &Permutation, f: &[Permutation]) -> Vec<Permutation> {
    if equivariant {
        let gi = group.inv(g);
        group.elements().map(|x| sigma.compose(&f[group.mul(gi, x)])).collect()
    } else {
        vec![sigma.compose(&f[0])]
    }
}

impl GSigmaSet for ChaoticLevel {
    fn size(&self) -> usize {
        self.objects.len()
    }

    fn act(&self, g: usize, sigma: &Permutation, point: usize) -> usize {
        self.index[&self.act_object(g, sigma, &self.objects[point])]
    }
}

/// `P_G(n) = Set(G, Σ_n)`.
pub fn build_pg_level(group: &FiniteGroup, n: usize) -> Result<ChaoticLevel, ZooError> {
    ChaoticLevel::build(group, n, true)
}

/// Whether a level has a point fixed by every element of `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedProfile {
    Empty,
    Nonempty,
}

impl FixedProfile {
    pub fn from_bool(b: bool) -> Self {
        if b {
            FixedProfile::Nonempty
        } else {
            FixedProfile::Empty
        }
    }
}

pub fn fixed_profile(level: &dyn GSigmaSet, lambda: &[(usize, Permutation)]) -> FixedProfile {
    FixedProfile::from_bool((0..level.size()).any(|p| lambda.iter().all(|(g, s)| level.act(*g, s, p) == p)))
}

/// A chaotic operad given levelwise by its object sets, with pointwise
/// word composition.
#[derive(Clone, Debug)]
pub struct ChaoticOperadLevelwise {
    pub group: FiniteGroup,
    pub equivariant: bool,
    pub levels: BTreeMap<usize, ChaoticLevel>,
}

impl ChaoticOperadLevelwise {
    /// `ε^*P`: Σ_n at level n with the trivial G-action.
    pub fn permutativity(group: &FiniteGroup, max_level: usize) -> Result<Self, ZooError> {
        Self::build(group, max_level, false)
    }

    /// `P_G = Set(G, Σ_•)`.
    pub fn g_permutativity(group: &FiniteGroup, max_level: usize) -> Result<Self, ZooError> {
        Self::build(group, max_level, true)
    }

    fn build(group: &FiniteGroup, max_level: usize, equivariant: bool) -> Result<Self, ZooError> {
        let levels = (0..=max_level).map(|n| Ok((n, ChaoticLevel::build(group, n, equivariant)?))).collect::<Result<_, ZooError>>()?;
        Ok(ChaoticOperadLevelwise { group: group.clone(), equivariant, levels })
    }

    pub fn points(&self) -> usize {
        if self.equivariant {
            self.group.order()
        } else {
            1
        }
    }

    /// Pointwise `γ(f; g_1, …, g_k)`.
    pub fn compose(&self, f: &[Permutation], gs: &[Vec<Permutation>]) -> Vec<Permutation> {
        (0..self.points()).map(|x| compose_words(&f[x], &gs.iter().map(|g| g[x].clone()).collect::<Vec<_>>())).collect()
    }

    pub fn act(&self, g: usize, sigma: &Permutation, f: &[Permutation]) -> Vec<Permutation> {
        act_function(&self.group, self.equivariant, g, sigma, f)
    }

    pub fn unit(&self) -> Vec<Permutation> {
        vec![Permutation::identity(1); self.points()]
    }

    /// The diagonal `Δ: ε^*P -> P_G`, `σ ↦ const_σ`.
    pub fn diagonal(&self, sigma: &Permutation) -> Vec<Permutation> {
        vec![sigma.clone(); self.points()]
    }

    /// Operad laws on samples from levels `0..=2`: unit, associativity,
    /// G-equivariance and the block form of Σ-equivariance.
    pub fn operad_law_errors(&self) -> Option<String> {
        let sample = |n: usize| -> Vec<Vec<Permutation>> { self.levels.get(&n).map(|l| l.objects.iter().take(6).cloned().collect()).unwrap_or_default() };
        let small: Vec<Vec<Permutation>> = (0..=2).flat_map(sample).collect();
        for f in &sample(2) {
            if self.compose(f, &[self.unit(), self.unit()]) != *f || self.compose(&self.unit(), std::slice::from_ref(f)) != *f {
                return Some(format!("unit law fails at {f:?}"));
            }
            for a in &small {
                for b in &small {
                    let ab = self.compose(f, &[a.clone(), b.clone()]);
                    for g in self.group.elements() {
                        let moved = self.compose(&self.act(g, &Permutation::identity(2), f), &[self.act(g, &Permutation::identity(a[0].degree()), a), self.act(g, &Permutation::identity(b[0].degree()), b)]);
                        if moved != self.act(g, &Permutation::identity(ab[0].degree()), &ab) {
                            return Some(format!("G-equivariance fails at g = {g}"));
                        }
                    }
                    let swap = Permutation::transposition(2, 0, 1);
                    let sizes = [a[0].degree(), b[0].degree()];
                    let lhs = self.compose(&self.act(self.group.identity(), &swap, f), &[a.clone(), b.clone()]);
                    let block = crate::free_operad::block_permutation(&swap, &sizes);
                    let rhs = self.act(self.group.identity(), &block, &self.compose(f, &[b.clone(), a.clone()]));
                    if lhs != rhs {
                        return Some("Σ-equivariance fails".into());
                    }
                    for c in sample(1).iter().chain(&sample(2)) {
                        let left = self.compose(&self.compose(f, &[a.clone(), b.clone()]), &vec![c.clone(); ab[0].degree()]);
                        let right = self.compose(f, &[self.compose(a, &vec![c.clone(); a[0].degree()]), self.compose(b, &vec![c.clone(); b[0].degree()])]);
                        if left != right {
                            return Some("associativity fails".into());
                        }
                    }
                }
            }
        }
        None
    }
}

/// A map of symmetric sequences from the generators of a free operad into
/// a permutativity operad, extended freely to trees.
#[derive(Clone, Debug)]
pub struct LevelMap {
    pub images: Vec<Vec<Permutation>>,
    /// One line per choice made on a Σ-orbit representative.
    pub choices: Vec<String>,
}

impl LevelMap {
    /// The value on a tree: at each point the word obtained by reading the
    /// children of every vertex in the order its image prescribes.
    pub fn on_tree(&self, target: &ChaoticOperadLevelwise, t: &Tree) -> Vec<Permutation> {
        (0..target.points())
            .map(|x| {
                let mut word = Vec::new();
                self.word(t, x, &mut word);
                Permutation::from_images(word).expect("free leaves are numbered 1..n")
            })
            .collect()
    }

    fn word(&self, t: &Tree, x: usize, out: &mut Vec<usize>) {
        match t {
            Tree::Leaf(i) => out.push(i - 1),
            Tree::Node(l, cs) => {
                let w = &self.images[*l][x];
                for p in 0..cs.len() {
                    self.word(&cs[w.apply(p)], x, out);
                }
            }
        }
    }
}

/// A Γ_T-fixed function `G -> Σ_|T|`: on `z = h y` with y the least element
/// of Hz, `f(z) = σ(h)`. Then `f(hz) = σ(h) f(z)`.
fn fixed_function(group: &FiniteGroup, t: &Exponent) -> Vec<Permutation> {
    let h = &t.subgroup;
    group
        .elements()
        .map(|z| {
            let y = h.elements.iter().map(|&k| group.mul(k, z)).min().expect("nonempty coset");
            let hh = h.elements.iter().copied().find(|&k| group.mul(k, y) == z).expect("z lies in Hy");
            t.sigma(hh)
        })
        .collect()
}

/// `SM_{O(Set)} -> P_G`: e and ⊗ go to the constant identities, and the
/// representative `⊗_T` to a chosen Γ_T-fixed function, with
/// `g_i ⊗_T ↦ g_i · f_T`.
fn g_comparison(smn: &Smn, pg: &ChaoticOperadLevelwise) -> LevelMap {
    let g = smn.group();
    let mut choices = Vec::new();
    let images = smn
        .kinds
        .iter()
        .map(|kind| match *kind {
            GeneratorLabel::Unit => pg.diagonal(&Permutation::identity(0)),
            GeneratorLabel::Tensor => pg.diagonal(&Permutation::identity(2)),
            GeneratorLabel::Norm { norm, rep } => {
                let spec = &smn.exponents.norms[norm];
                let f = fixed_function(g, &spec.exponent);
                if rep == 0 {
                    choices.push(format!("{} ↦ {:?}", spec.id, f));
                }
                pg.act(spec.reps[rep], &Permutation::identity(spec.exponent.size()), &f)
            }
        })
        .collect();
    LevelMap { images, choices }
}

/// `SM_∅ -> ε^*P`: e ↦ id_0 and ⊗ ↦ id_2.
fn trivial_comparison(p: &ChaoticOperadLevelwise) -> LevelMap {
    LevelMap { images: vec![p.diagonal(&Permutation::identity(0)), p.diagonal(&Permutation::identity(2))], choices: vec!["e ↦ id_0, ⊗ ↦ id_2".into()] }
}

/// The elements of every subgroup of `G × Σ_n` as pairs `(g, σ)`.
pub fn graph_subgroups(group: &FiniteGroup, n: usize) -> Vec<Vec<(usize, Permutation)>> {
    let (sym, perms) = FiniteGroup::symmetric(n);
    let m = sym.order();
    group.direct_product(&sym).enumerate_subgroups().into_iter().map(|s| s.elements.iter().map(|&x| (x / m, perms[x % m].clone())).collect()).collect()
}

fn sample_trees(gens: &GeneratorSet, max_arity: usize, depth: usize) -> Vec<Tree> {
    (0..=max_arity)
        .flat_map(|n| {
            let all = enumerate_trees_bounded(gens, n, depth).expect("depth within the enumeration guard");
            let step = (all.len() / SAMPLE_TREES).max(1);
            all.into_iter().step_by(step).take(SAMPLE_TREES)
        })
        .collect()
}

/// Operad-map equations for `phi` on sampled trees: equivariance, units,
/// and composition with inner trees of depth ≤ 1.
fn operad_map_check(id: &str, gens: &GeneratorSet, phi: &LevelMap, target: &ChaoticOperadLevelwise, trees: &[Tree]) -> Check {
    let mut check = Check::new(id);
    check.test(phi.on_tree(target, &Tree::unit()) == target.unit(), || "the unit tree does not go to the unit".into());
    let inner: Vec<Tree> = sample_trees(gens, 2, 1).into_iter().take(8).collect();
    for t in trees {
        let n = t.arity();
        let value = phi.on_tree(target, t);
        for g in gens.group.elements() {
            for s in Permutation::all(n) {
                let moved = act(gens, g, &s, t).expect("degree matches");
                if !check.test(phi.on_tree(target, &moved) == target.act(g, &s, &value), || format!("equivariance fails at {t:?} under ({g}, {s})")) {
                    return check;
                }
            }
        }
        if n <= 2 {
            for u in &inner {
                let us = vec![u.clone(); n];
                let composite = gamma(t, &us).expect("arity matches");
                let expected = target.compose(&value, &vec![phi.on_tree(target, u); n]);
                if !check.test(phi.on_tree(target, &composite) == expected, || format!("composition fails at {t:?} ∘ {u:?}")) {
                    return check;
                }
            }
        }
    }
    check
}

/// The comparisons `SM_{O(Set)} -> P_G` and `SM_∅ -> ε^*P`: operad-map
/// equations on sampled trees, the square through `Δ` on generators and on
/// `{e, ⊗}`-trees, and agreement of fixed-point profiles over every
/// subgroup `Λ ≤ G × Σ_n` with `|Λ| ≤ max_lambda` at levels `≤ max_level`.
pub fn comparison_maps(group: &FiniteGroup, max_level: usize, max_lambda: usize) -> Result<Report, ZooError> {
    let mut report = Report::new(
        "comparison with the permutativity operads",
        format!("levels <= {max_level}, |Λ| <= {}, trees of depth <= 2 sampled; N∞ proxy: Σ-free levels, nonempty G-fixed objects, chaotic", if max_lambda == usize::MAX { "unbounded".to_string() } else { max_lambda.to_string() }),
    );
    let smn = Smn::build(ExponentSet::new(group, orbit_exponents_of_group(group))?);
    let smn0 = Smn::build(ExponentSet::empty(group));
    let pg = ChaoticOperadLevelwise::g_permutativity(group, max_level)?;
    let p = ChaoticOperadLevelwise::permutativity(group, max_level)?;
    let phi = g_comparison(&smn, &pg);
    let phi0 = trivial_comparison(&p);

    let mut laws = Check::new("permutativity-operad-laws");
    for (name, o) in [("P", &p), ("P_G", &pg)] {
        let e = o.operad_law_errors();
        laws.test(e.is_none(), || format!("{name}: {}", e.unwrap_or_default()));
    }
    report.push(laws);

    let mut generators = Check::new("generator-images-equivariant");
    for (l, img) in phi.images.iter().enumerate() {
        for g in group.elements() {
            let (m, tau) = &smn.gens.act[g][l];
            generators.test(pg.act(g, &Permutation::identity(tau.degree()), img) == pg.act(group.identity(), tau, &phi.images[*m]), || {
                format!("g = {g} on {}", smn.gens.labels[l].name)
            });
        }
    }
    report.push(generators.with_note(phi.choices.join("; ")));

    let trees = sample_trees(&smn.gens, max_level.min(3), 2);
    report.push(operad_map_check("operad-map-to-g-permutativity", &smn.gens, &phi, &pg, &trees));
    let trees0 = sample_trees(&smn0.gens, max_level.min(3), 2);
    report.push(operad_map_check("operad-map-to-permutativity", &smn0.gens, &phi0, &p, &trees0));

    let mut square = Check::new("diagonal-square-commutes");
    for (l, img) in phi0.images.iter().enumerate() {
        square.test(pg.diagonal(&img[0]) == phi.images[l], || format!("generator {}", smn0.gens.labels[l].name));
    }
    for t in &trees0 {
        // {e, ⊗}-trees are trees of SM_{O(Set)} with the same labels
        debug_assert!(!t.any_label(&|l| l != UNIT && l != TENSOR));
        square.test(pg.diagonal(&phi0.on_tree(&p, t)[0]) == phi.on_tree(&pg, t), || format!("{t:?}"));
    }
    report.push(square);

    let mut proxy = Check::new("n-infinity-proxy");
    let mut profiles = Check::new("fixed-point-profiles-agree");
    let mut profiles0 = Check::new("trivial-fixed-point-profiles-agree");
    for n in 0..=max_level {
        let level = &pg.levels[&n];
        let level0 = &p.levels[&n];
        let g_whole: Vec<(usize, Permutation)> = group.elements().map(|g| (g, Permutation::identity(n))).collect();
        proxy.test(fixed_profile(level, &g_whole) == FixedProfile::Nonempty, || format!("P_G({n}) has no G-fixed object"));
        for s in Permutation::all(n).into_iter().filter(|s| !s.is_identity()) {
            proxy.test(fixed_profile(level, &[(group.identity(), s.clone())]) == FixedProfile::Empty, || format!("P_G({n}) is not Σ-free at {s}"));
        }
        for lambda in graph_subgroups(group, n).into_iter().filter(|l| l.len() <= max_lambda) {
            let ours = FixedProfile::from_bool(has_fixed_tree(&smn.gens, &lambda, n));
            profiles.test(fixed_profile(level, &lambda) == ours, || format!("level {n}, Λ = {lambda:?}: SM has {ours:?}"));
            let ours0 = FixedProfile::from_bool(has_fixed_tree(&smn0.gens, &lambda, n));
            profiles0.test(fixed_profile(level0, &lambda) == ours0, || format!("level {n}, Λ = {lambda:?}: SM_∅ has {ours0:?}"));
        }
    }
    report.push(proxy);
    report.push(profiles);
    report.push(profiles0);
    Ok(report)
}
