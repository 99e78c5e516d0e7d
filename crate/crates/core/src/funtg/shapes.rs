//! Translation categories, categories of diagrams over them, and functors
//! between finite categories given by explicit tables.

use std::collections::HashMap;

use crate::fincat::{FiniteCategory, Morphism};
use crate::groups::{FiniteGroup, Subgroup};
use crate::gsets::Exponent;

use super::FuntgError;

/// Bound on `|Ob C|^points` when enumerating diagrams.
pub const MAX_OBJECT_TUPLES: usize = 4096;
/// Bound on the number of enumerated natural transformations.
pub const MAX_MORPHISMS: usize = 1 << 16;

/// The translation category of an H-set X: objects X, and one morphism
/// `h: x -> hx` for every `h ∈ H`. Morphism `x*|H| + pos(h)` is `h` at `x`.
#[derive(Clone, Debug)]
pub struct TranslationCategory {
    pub gset: Exponent,
    pub cat: FiniteCategory,
}

impl TranslationCategory {
    pub fn new(gset: Exponent) -> Self {
        let group = gset.group.clone();
        let sub = gset.subgroup.clone();
        let (n, m) = (gset.size(), sub.len());
        let objects: Vec<String> = (0..n).map(|x| x.to_string()).collect();
        let mut morphisms = Vec::with_capacity(n * m);
        for x in 0..n {
            for &h in &sub.elements {
                morphisms.push(Morphism { name: format!("{h}@{x}"), dom: x, cod: gset.act(h, x) });
            }
        }
        let identities = (0..n).map(|x| x * m + sub.position(group.identity()).expect("subgroup contains e")).collect();
        let mut composition = HashMap::new();
        for x in 0..n {
            for (a, &h) in sub.elements.iter().enumerate() {
                let y = gset.act(h, x);
                for (b, &k) in sub.elements.iter().enumerate() {
                    let kh = sub.position(group.mul(k, h)).expect("closed subgroup");
                    composition.insert((y * m + b, x * m + a), x * m + kh);
                }
            }
        }
        let cat = FiniteCategory::new_unchecked(objects, morphisms, identities, composition).expect("translation category");
        TranslationCategory { gset, cat }
    }

    /// `TG`: G acting on itself on the left; point x is the element x.
    pub fn of_group(group: &FiniteGroup) -> Self {
        let reps: Vec<usize> = group.elements().collect();
        Self::new(Exponent::coset_space_with_reps(group, &group.whole(), &group.trivial_subgroup(), &reps))
    }

    /// `T_H(H/K)` with point i the coset `reps[i] K`.
    pub fn of_cosets(group: &FiniteGroup, h: &Subgroup, k: &Subgroup, reps: &[usize]) -> Self {
        Self::new(Exponent::coset_space_with_reps(group, h, k, reps))
    }

    /// `T_H(*)`: the one-object groupoid H.
    pub fn point(group: &FiniteGroup, h: &Subgroup) -> Self {
        Self::new(Exponent::trivial(group, h.clone(), 1))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.gset.group
    }

    pub fn points(&self) -> usize {
        self.gset.size()
    }

    /// The morphism `h: x -> hx`.
    pub fn arrow(&self, h: usize, x: usize) -> usize {
        x * self.gset.subgroup.len() + self.gset.subgroup.position(h).expect("element of the acting subgroup")
    }

    /// `(h, x)` for the morphism `h: x -> hx`.
    pub fn arrow_parts(&self, m: usize) -> (usize, usize) {
        let k = self.gset.subgroup.len();
        (self.gset.subgroup.elements[m % k], m / k)
    }

    /// The functor induced by a map of points that commutes with the
    /// action of the common acting subgroup: `h: x -> hx` goes to
    /// `h: f(x) -> f(hx)`.
    pub fn induced(&self, target: &TranslationCategory, points: &[usize]) -> CatFunctor {
        let mor = (0..self.cat.morphism_count())
            .map(|m| {
                let (h, x) = self.arrow_parts(m);
                target.arrow(h, points[x])
            })
            .collect();
        CatFunctor { ob: points.to_vec(), mor }
    }

    /// For `self = T_A(A/B)` with point i the coset `reps[i] B`, the
    /// retraction onto `T_B(*)`: `g: g_i B -> g_j B` goes to `g_j⁻¹ g g_i`.
    pub fn retraction(&self, reps: &[usize], target: &TranslationCategory) -> CatFunctor {
        let g = self.group();
        let mor = (0..self.cat.morphism_count())
            .map(|m| {
                let (a, i) = self.arrow_parts(m);
                let j = self.gset.act(a, i);
                target.arrow(g.mul(g.inv(reps[j]), g.mul(a, reps[i])), 0)
            })
            .collect();
        CatFunctor { ob: vec![0; self.points()], mor }
    }

    /// For `self = T_B(*)`, the inclusion as the automorphisms of `base` in
    /// a translation category on which B stabilizes `base`.
    pub fn stabilizer_inclusion(&self, target: &TranslationCategory, base: usize) -> CatFunctor {
        let mor = (0..self.cat.morphism_count()).map(|m| target.arrow(self.arrow_parts(m).0, base)).collect();
        CatFunctor { ob: vec![base], mor }
    }

    /// Some element carrying `x` to `y`.
    pub fn carrier(&self, x: usize, y: usize) -> Option<usize> {
        self.gset.subgroup.elements.iter().copied().find(|&h| self.gset.act(h, x) == y)
    }
}

/// A functor from a shape to C: object images per point and morphism
/// images per shape morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

/// `Fun(J, C)` for a connected translation category J, materialized. With
/// `natural = false` (one-object shapes only) the morphisms are all maps
/// between the values, not only the equivariant ones: this is `C_H`.
#[derive(Clone, Debug)]
pub struct DiagramCategory {
    pub cat: FiniteCategory,
    pub diagrams: Vec<Diagram>,
    /// Components of each morphism, one per point of the shape.
    pub components: Vec<Vec<usize>>,
    ob_index: HashMap<Diagram, usize>,
    mor_index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl DiagramCategory {
    /// Every functor `J -> C`, enumerated through a spanning family of
    /// arrows out of point 0: a value `c_0`, a homomorphism from the
    /// stabilizer of 0 into `Aut(c_0)`, and an isomorphism `c_0 -> c_x` for
    /// every other point.
    pub fn build(shape: &TranslationCategory, c: &FiniteCategory, natural: bool) -> Result<Self, FuntgError> {
        let n = shape.points();
        if !natural && n != 1 {
            return Err(FuntgError::Invalid("unrestricted morphisms need a one-object shape".into()));
        }
        let tuples = c.object_count().checked_pow(n as u32).unwrap_or(usize::MAX);
        if tuples > MAX_OBJECT_TUPLES {
            return Err(FuntgError::TooLarge { what: "object tuples |Ob C|^points".into(), size: tuples, limit: MAX_OBJECT_TUPLES });
        }
        let group = shape.group();
        let spans: Vec<usize> = (0..n)
            .map(|x| shape.carrier(0, x).ok_or_else(|| FuntgError::Invalid("the shape is not connected".into())))
            .collect::<Result<_, _>>()?;
        let stab: Vec<usize> = shape.gset.stabilizer(0).elements;
        let mut diagrams = Vec::new();
        for c0 in 0..c.object_count() {
            let autos: Vec<usize> = c.hom(c0, c0).iter().copied().filter(|&f| c.is_iso(f)).collect();
            for rho in crate::fincat::all_tuples(autos.len(), stab.len()) {
                let rho: Vec<usize> = rho.iter().map(|&i| autos[i]).collect();
                let at = |s: usize| rho[stab.iter().position(|&t| t == s).expect("stabilizer element")];
                let hom_ok = stab.iter().all(|&a| stab.iter().all(|&b| at(group.mul(a, b)) == c.comp(at(a), at(b))));
                if !hom_ok || at(group.identity()) != c.id(c0) {
                    continue;
                }
                // isomorphisms c_0 -> c_x for x = 1..n
                let mut partial: Vec<Vec<usize>> = vec![vec![c.id(c0)]];
                for _ in 1..n {
                    let mut next = Vec::new();
                    for p in &partial {
                        for f in 0..c.morphism_count() {
                            if c.dom(f) == c0 && c.is_iso(f) {
                                let mut q = p.clone();
                                q.push(f);
                                next.push(q);
                            }
                        }
                    }
                    partial = next;
                }
                for phi in partial {
                    let ob: Vec<usize> = phi.iter().map(|&f| c.cod(f)).collect();
                    let mor = (0..shape.cat.morphism_count())
                        .map(|m| {
                            let (h, x) = shape.arrow_parts(m);
                            let y = shape.gset.act(h, x);
                            let s = group.mul(group.inv(spans[y]), group.mul(h, spans[x]));
                            c.chain(&[c.inverse(phi[x]).expect("iso"), at(s), phi[y]])
                        })
                        .collect();
                    diagrams.push(Diagram { ob, mor });
                }
            }
        }
        let mut components = Vec::new();
        let mut ends = Vec::new();
        for (i, d) in diagrams.iter().enumerate() {
            for (j, e) in diagrams.iter().enumerate() {
                for &eta0 in c.hom(d.ob[0], e.ob[0]) {
                    let comps: Vec<usize> = (0..n)
                        .map(|x| {
                            let t = shape.arrow(spans[x], 0);
                            c.chain(&[c.inverse(d.mor[t]).expect("iso"), eta0, e.mor[t]])
                        })
                        .collect();
                    let is_natural = (0..shape.cat.morphism_count()).all(|m| {
                        let (x, y) = (shape.cat.dom(m), shape.cat.cod(m));
                        c.comp(e.mor[m], comps[x]) == c.comp(comps[y], d.mor[m])
                    });
                    if natural && !is_natural {
                        continue;
                    }
                    components.push(comps);
                    ends.push((i, j));
                    if components.len() > MAX_MORPHISMS {
                        return Err(FuntgError::TooLarge { what: "natural transformations".into(), size: components.len(), limit: MAX_MORPHISMS });
                    }
                }
            }
        }
        Ok(Self::assemble(c, diagrams, components, ends))
    }

    fn assemble(c: &FiniteCategory, diagrams: Vec<Diagram>, components: Vec<Vec<usize>>, ends: Vec<(usize, usize)>) -> Self {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let objects: Vec<String> = diagrams
            .iter()
            .map(|d| {
                let names: Vec<&str> = d.ob.iter().map(|&x| c.describe_object(x)).collect();
                let key = d.ob.clone();
                let k = seen.entry(key).or_insert(0);
                *k += 1;
                format!("({})#{}", names.join(","), *k - 1)
            })
            .collect();
        let ob_index: HashMap<Diagram, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let mor_index: HashMap<(usize, usize, Vec<usize>), usize> =
            components.iter().zip(&ends).enumerate().map(|(k, (comps, &(i, j)))| ((i, j, comps.clone()), k)).collect();
        let morphisms: Vec<Morphism> = ends
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| Morphism { name: format!("t{k}"), dom: i, cod: j })
            .collect();
        let identities: Vec<usize> = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| mor_index[&(i, i, d.ob.iter().map(|&x| c.id(x)).collect())])
            .collect();
        let mut by_dom: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, &(i, _)) in ends.iter().enumerate() {
            by_dom.entry(i).or_default().push(k);
        }
        let mut composition = HashMap::new();
        for (f, &(i, j)) in ends.iter().enumerate() {
            for &g in by_dom.get(&j).map(Vec::as_slice).unwrap_or(&[]) {
                let k = ends[g].1;
                let comps: Vec<usize> = components[g].iter().zip(&components[f]).map(|(&b, &a)| c.comp(b, a)).collect();
                composition.insert((g, f), mor_index[&(i, k, comps)]);
            }
        }
        let cat = FiniteCategory::new_unchecked(objects, morphisms, identities, composition).expect("diagram category");
        DiagramCategory { cat, diagrams, components, ob_index, mor_index }
    }

    /// The subcategory on the kept objects and morphisms; closure under
    /// composition and identities is the caller's responsibility.
    pub fn restrict(&self, c: &FiniteCategory, keep_ob: impl Fn(usize) -> bool, keep_mor: impl Fn(usize) -> bool) -> Self {
        let obs: Vec<usize> = (0..self.diagrams.len()).filter(|&i| keep_ob(i)).collect();
        let renum: HashMap<usize, usize> = obs.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let mut components = Vec::new();
        let mut ends = Vec::new();
        for f in 0..self.components.len() {
            let (i, j) = (self.cat.dom(f), self.cat.cod(f));
            if let (Some(&a), Some(&b)) = (renum.get(&i), renum.get(&j)) {
                if keep_mor(f) {
                    components.push(self.components[f].clone());
                    ends.push((a, b));
                }
            }
        }
        let diagrams = obs.iter().map(|&i| self.diagrams[i].clone()).collect();
        Self::assemble(c, diagrams, components, ends)
    }

    pub fn object_of(&self, d: &Diagram) -> Option<usize> {
        self.ob_index.get(d).copied()
    }

    pub fn morphism_of(&self, dom: usize, cod: usize, comps: &[usize]) -> Option<usize> {
        self.mor_index.get(&(dom, cod, comps.to_vec())).copied()
    }

    /// The inclusion of a category built by [`DiagramCategory::restrict`].
    pub fn inclusion_into(&self, ambient: &DiagramCategory) -> CatFunctor {
        let ob: Vec<usize> = self.diagrams.iter().map(|d| ambient.object_of(d).expect("subcategory object")).collect();
        let mor = (0..self.components.len())
            .map(|f| ambient.morphism_of(ob[self.cat.dom(f)], ob[self.cat.cod(f)], &self.components[f]).expect("subcategory morphism"))
            .collect();
        CatFunctor { ob, mor }
    }

    /// Precomposition `D ↦ D ∘ s` along a functor `s: J' -> J` of shapes,
    /// into `target = Fun(J', C)`.
    pub fn precompose(&self, target: &DiagramCategory, along: &CatFunctor) -> Result<CatFunctor, String> {
        self.map_to(
            target,
            |_, d| Diagram { ob: along.ob.iter().map(|&x| d.ob[x]).collect(), mor: along.mor.iter().map(|&m| d.mor[m]).collect() },
            |f| along.ob.iter().map(|&x| self.components[f][x]).collect(),
        )
    }

    /// The functor given by formulas on diagrams and on components; fails if
    /// an image is not in `target`.
    pub fn map_to(
        &self,
        target: &DiagramCategory,
        fob: impl Fn(usize, &Diagram) -> Diagram,
        fmor: impl Fn(usize) -> Vec<usize>,
    ) -> Result<CatFunctor, String> {
        let mut ob = Vec::with_capacity(self.diagrams.len());
        for (i, d) in self.diagrams.iter().enumerate() {
            let image = fob(i, d);
            ob.push(target.object_of(&image).ok_or_else(|| format!("object {} maps to a diagram outside the target: {image:?}", self.cat.objects[i]))?);
        }
        let mut mor = Vec::with_capacity(self.components.len());
        for f in 0..self.components.len() {
            let comps = fmor(f);
            let (a, b) = (ob[self.cat.dom(f)], ob[self.cat.cod(f)]);
            mor.push(target.morphism_of(a, b, &comps).ok_or_else(|| format!("morphism {f} maps to components {comps:?} outside the target"))?);
        }
        Ok(CatFunctor { ob, mor })
    }
}

/// A functor between finite categories as explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &FiniteCategory) -> Self {
        CatFunctor { ob: (0..c.object_count()).collect(), mor: (0..c.morphism_count()).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CatFunctor) -> CatFunctor {
        CatFunctor { ob: first.ob.iter().map(|&x| self.ob[x]).collect(), mor: first.mor.iter().map(|&f| self.mor[f]).collect() }
    }

    /// Typing, identities and composites.
    pub fn errors(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> Option<String> {
        if self.ob.len() != src.object_count() || self.mor.len() != src.morphism_count() {
            return Some("table sizes do not match the source".into());
        }
        for f in 0..src.morphism_count() {
            let m = self.mor[f];
            if m >= tgt.morphism_count() || tgt.dom(m) != self.ob[src.dom(f)] || tgt.cod(m) != self.ob[src.cod(f)] {
                return Some(format!("ill-typed image of {}", src.describe_morphism(f)));
            }
        }
        for x in 0..src.object_count() {
            if self.mor[src.id(x)] != tgt.id(self.ob[x]) {
                return Some(format!("identity of {} not preserved", src.objects[x]));
            }
        }
        for (f, g) in src.composable_pairs() {
            if self.mor[src.comp(f, g)] != tgt.comp(self.mor[f], self.mor[g]) {
                return Some(format!("composite of {f} and {g} not preserved"));
            }
        }
        None
    }

    /// First object or morphism where the tables differ.
    pub fn difference(&self, other: &CatFunctor, src: &FiniteCategory) -> Option<String> {
        if let Some(x) = (0..self.ob.len()).find(|&x| self.ob[x] != other.ob[x]) {
            return Some(format!("differ on object {}", src.objects[x]));
        }
        (0..self.mor.len()).find(|&f| self.mor[f] != other.mor[f]).map(|f| format!("differ on morphism {}", src.describe_morphism(f)))
    }
}

/// Checks that `theta` (one component per source object) is a natural
/// isomorphism `f => g` of functors `src -> tgt`.
pub fn natural_iso_errors(src: &FiniteCategory, tgt: &FiniteCategory, f: &CatFunctor, g: &CatFunctor, theta: &[usize]) -> Option<String> {
    if theta.len() != src.object_count() {
        return Some(format!("{} components for {} objects", theta.len(), src.object_count()));
    }
    for (x, &t) in theta.iter().enumerate() {
        if t >= tgt.morphism_count() || tgt.dom(t) != f.ob[x] || tgt.cod(t) != g.ob[x] || !tgt.is_iso(t) {
            return Some(format!("component at {} is not an isomorphism of the right type", src.objects[x]));
        }
    }
    for m in 0..src.morphism_count() {
        let (x, y) = (src.dom(m), src.cod(m));
        if tgt.comp(g.mor[m], theta[x]) != tgt.comp(theta[y], f.mor[m]) {
            return Some(format!("naturality fails at {}", src.describe_morphism(m)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;

    #[test]
    fn translation_category_of_group_is_contractible() {
        let g = FiniteGroup::s3();
        let tg = TranslationCategory::of_group(&g);
        assert!(tg.cat.check_laws().is_ok());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(tg.cat.hom(x, y).len(), 1, "exactly one morphism {x} -> {y}");
                let (h, _) = tg.arrow_parts(tg.cat.hom(x, y)[0]);
                assert_eq!(h, g.mul(y, g.inv(x)), "the morphism is y x^-1");
            }
        }
    }

    #[test]
    fn translation_category_of_cosets() {
        let g = FiniteGroup::s3();
        let h = g.generated(&[1]);
        let reps = g.left_coset_reps(&h);
        let t = TranslationCategory::of_cosets(&g, &g.whole(), &h, &reps);
        assert!(t.cat.check_laws().is_ok());
        for x in 0..3 {
            for y in 0..3 {
                // hom(g_i H, g_j H) = g_j H g_i^-1 has |H| elements
                assert_eq!(t.cat.hom(x, y).len(), h.len());
            }
        }
    }

    #[test]
    fn diagrams_on_group_shape_count() {
        // functors T C2 -> sign: a value and an automorphism; 4 of them,
        // with Aut(a) worth of transformations between those on the same a
        let g = FiniteGroup::cyclic(2);
        let z2 = FiniteGroup::cyclic(2);
        let sign = FiniteCategory::groupoid_of_groups(vec!["0".into(), "1".into()], &[z2.clone(), z2]);
        let fun = DiagramCategory::build(&TranslationCategory::of_group(&g), &sign, true).unwrap();
        assert_eq!(fun.cat.object_count(), 4);
        assert_eq!(fun.cat.morphism_count(), 16);
        assert!(fun.cat.check_laws().is_ok());
        // one-object shape H = C2: C2-actions on the sign objects
        let point = TranslationCategory::point(&g, &g.whole());
        let actions = DiagramCategory::build(&point, &sign, true).unwrap();
        assert_eq!(actions.cat.object_count(), 4, "two involutions (±1) on each object");
        let all_maps = DiagramCategory::build(&point, &sign, false).unwrap();
        assert_eq!(all_maps.cat.morphism_count(), 16);
        // Aut(Z/2) is abelian, so an equivariant map only joins equal actions
        assert_eq!(actions.cat.morphism_count(), 8);
    }

    #[test]
    fn size_guard() {
        let g = FiniteGroup::cyclic(6);
        let c = FiniteCategory::discrete((0..5).map(|i| i.to_string()).collect());
        let err = DiagramCategory::build(&TranslationCategory::of_group(&g), &c, true).unwrap_err();
        assert!(matches!(err, FuntgError::TooLarge { .. }), "{err}");
    }
}
