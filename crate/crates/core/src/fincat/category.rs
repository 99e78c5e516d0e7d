//! Finite categories and finite G-categories as explicit tables, functor
//! tables on cartesian powers, and natural-transformation components.

use std::collections::HashMap;

use crate::groups::FiniteGroup;

use super::FincatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. Composition is stored sparsely, one entry per
/// composable pair; `compose(f, g)` is `f ∘ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    inverses: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Validates typing, unit laws and associativity exhaustively.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self, FincatError> {
        let c = Self::new_unchecked(objects, morphisms, identities, composition)?;
        c.check_laws()?;
        Ok(c)
    }

    /// Builds the lookup structures, checking only that composition is total
    /// on composable pairs and well typed. Used for categories assembled by
    /// construction, whose laws hold by design.
    pub fn new_unchecked(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self, FincatError> {
        let n = objects.len();
        if identities.len() != n {
            return Err(FincatError::Invalid(format!("{} identities for {} objects", identities.len(), n)));
        }
        for (i, m) in morphisms.iter().enumerate() {
            if m.dom >= n || m.cod >= n {
                return Err(FincatError::Invalid(format!("morphism {i} has an endpoint out of range")));
            }
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.dom, m.cod)).or_default().push(i);
        }
        for (x, &id) in identities.iter().enumerate() {
            if id >= morphisms.len() || morphisms[id].dom != x || morphisms[id].cod != x {
                return Err(FincatError::Invalid(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        let mut c = FiniteCategory { objects, morphisms, identities, composition, homs, inverses: Vec::new() };
        for f in 0..c.morphisms.len() {
            for &g in c.homs_into(c.morphisms[f].dom) {
                match c.composition.get(&(f, g)) {
                    Some(&h) if h < c.morphisms.len() && c.morphisms[h].dom == c.morphisms[g].dom && c.morphisms[h].cod == c.morphisms[f].cod => {}
                    Some(_) => return Err(FincatError::Invalid(format!("composite of {f} and {g} is ill typed"))),
                    None => return Err(FincatError::Invalid(format!("composite of {f} and {g} is missing"))),
                }
            }
        }
        c.inverses = (0..c.morphisms.len())
            .map(|f| {
                let m = &c.morphisms[f];
                c.hom(m.cod, m.dom).iter().copied().find(|&g| {
                    c.composition[&(g, f)] == c.identities[m.dom] && c.composition[&(f, g)] == c.identities[m.cod]
                })
            })
            .collect();
        Ok(c)
    }

    fn homs_into(&self, y: usize) -> impl Iterator<Item = &usize> {
        (0..self.objects.len()).flat_map(move |x| self.hom(x, y).iter())
    }

    pub fn check_laws(&self) -> Result<(), FincatError> {
        for f in 0..self.morphisms.len() {
            let m = &self.morphisms[f];
            if self.compose(self.identities[m.cod], f) != Some(f) || self.compose(f, self.identities[m.dom]) != Some(f) {
                return Err(FincatError::Invalid(format!("unit law fails at morphism {f}")));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.homs_into(self.morphisms[f].dom) {
                for &h in self.homs_into(self.morphisms[g].dom) {
                    let a = self.compose(self.compose(f, g).unwrap(), h);
                    let b = self.compose(f, self.compose(g, h).unwrap());
                    if a != b {
                        return Err(FincatError::Invalid(format!("associativity fails at ({f}, {g}, {h})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn id(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    /// `f ∘ g`, panicking on a typing error (a modeling bug, not bad input).
    pub fn comp(&self, f: usize, g: usize) -> usize {
        self.compose(f, g).unwrap_or_else(|| panic!("morphisms {} and {} do not compose", self.morphisms[f].name, self.morphisms[g].name))
    }

    /// Composite of a chain listed in application order.
    pub fn chain(&self, fs: &[usize]) -> usize {
        fs[1..].iter().fold(fs[0], |acc, &f| self.comp(f, acc))
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverses[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverses[f].is_some()
    }

    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.composition.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn describe_object(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn describe_morphism(&self, f: usize) -> String {
        let m = &self.morphisms[f];
        format!("{}: {} -> {}", m.name, self.objects[m.dom], self.objects[m.cod])
    }

    /// The category with only identity morphisms.
    pub fn discrete(objects: Vec<String>) -> Self {
        let morphisms = objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("id_{o}"), dom: i, cod: i }).collect();
        let identities = (0..objects.len()).collect();
        let composition = (0..objects.len()).map(|i| ((i, i), i)).collect();
        Self::new_unchecked(objects, morphisms, identities, composition).expect("discrete category")
    }

    /// The contractible groupoid: a unique morphism between any two objects.
    /// Morphism `x*n + y` is the arrow `x -> y`.
    pub fn chaotic(objects: Vec<String>) -> Self {
        let n = objects.len();
        let mut morphisms = Vec::new();
        for x in 0..n {
            for y in 0..n {
                morphisms.push(Morphism { name: format!("({},{})", objects[x], objects[y]), dom: x, cod: y });
            }
        }
        let identities = (0..n).map(|x| x * n + x).collect();
        let mut composition = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    composition.insert((y * n + z, x * n + y), x * n + z);
                }
            }
        }
        Self::new_unchecked(objects, morphisms, identities, composition).expect("chaotic category")
    }

    /// A disjoint union of one-object groupoids, object `i` with automorphism
    /// group `groups[i]`; morphism numbering is by object, then element.
    pub fn groupoid_of_groups(objects: Vec<String>, groups: &[FiniteGroup]) -> Self {
        let mut morphisms = Vec::new();
        let mut offsets = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            offsets.push(morphisms.len());
            for a in g.elements() {
                morphisms.push(Morphism { name: format!("{}[{}]", objects[i], a), dom: i, cod: i });
            }
        }
        let identities = offsets.clone();
        let mut composition = HashMap::new();
        for (i, g) in groups.iter().enumerate() {
            for a in g.elements() {
                for b in g.elements() {
                    composition.insert((offsets[i] + a, offsets[i] + b), offsets[i] + g.mul(a, b));
                }
            }
        }
        Self::new_unchecked(objects, morphisms, identities, composition).expect("groupoid")
    }

    /// A finite poset as a category; `le[x][y]` means `x ≤ y`.
    pub fn poset(objects: Vec<String>, le: &[Vec<bool>]) -> Self {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if le[x][y] {
                    index.insert((x, y), morphisms.len());
                    morphisms.push(Morphism { name: format!("{}<={}", objects[x], objects[y]), dom: x, cod: y });
                }
            }
        }
        let identities = (0..n).map(|x| index[&(x, x)]).collect();
        let mut composition = HashMap::new();
        for (&(x, y), &f) in &index {
            for z in 0..n {
                if let Some(&g) = index.get(&(y, z)) {
                    composition.insert((g, f), index[&(x, z)]);
                }
            }
        }
        Self::new_unchecked(objects, morphisms, identities, composition).expect("poset")
    }

    /// Binary product; object `(x, y)` is `x*|B| + y`, likewise for morphisms.
    pub fn product(a: &FiniteCategory, b: &FiniteCategory) -> Self {
        let (nb, mb) = (b.object_count(), b.morphism_count());
        let mut objects = Vec::new();
        for x in &a.objects {
            for y in &b.objects {
                objects.push(format!("({x},{y})"));
            }
        }
        let mut morphisms = Vec::new();
        for f in &a.morphisms {
            for g in &b.morphisms {
                morphisms.push(Morphism { name: format!("({},{})", f.name, g.name), dom: f.dom * nb + g.dom, cod: f.cod * nb + g.cod });
            }
        }
        let identities = (0..objects.len()).map(|p| a.id(p / nb) * mb + b.id(p % nb)).collect();
        let mut composition = HashMap::new();
        for (&(f1, f2), &f) in &a.composition {
            for (&(g1, g2), &g) in &b.composition {
                composition.insert((f1 * mb + g1, f2 * mb + g2), f * mb + g);
            }
        }
        Self::new_unchecked(objects, morphisms, identities, composition).expect("product category")
    }
}

/// A finite category with a G-action by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGCategory {
    pub cat: FiniteCategory,
    pub group: FiniteGroup,
    pub act_ob: Vec<Vec<usize>>,
    pub act_mor: Vec<Vec<usize>>,
}

impl FiniteGCategory {
    pub fn trivial(cat: FiniteCategory, group: &FiniteGroup) -> Self {
        let act_ob = vec![(0..cat.object_count()).collect(); group.order()];
        let act_mor = vec![(0..cat.morphism_count()).collect(); group.order()];
        FiniteGCategory { cat, group: group.clone(), act_ob, act_mor }
    }

    pub fn ob(&self, g: usize, x: usize) -> usize {
        self.act_ob[g][x]
    }

    pub fn mor(&self, g: usize, f: usize) -> usize {
        self.act_mor[g][f]
    }

    pub fn ob_tuple(&self, g: usize, xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|&x| self.ob(g, x)).collect()
    }

    /// Each `act(g)` is a functor, `act(e) = id` and `act(g)act(h) = act(gh)`.
    pub fn action_errors(&self) -> Option<String> {
        let c = &self.cat;
        let e = self.group.identity();
        if self.act_ob[e].iter().enumerate().any(|(i, &x)| i != x) || self.act_mor[e].iter().enumerate().any(|(i, &x)| i != x) {
            return Some("identity element acts nontrivially".into());
        }
        for g in self.group.elements() {
            for f in 0..c.morphism_count() {
                let gf = self.mor(g, f);
                if c.dom(gf) != self.ob(g, c.dom(f)) || c.cod(gf) != self.ob(g, c.cod(f)) {
                    return Some(format!("g={g} does not preserve endpoints of {}", c.describe_morphism(f)));
                }
            }
            for x in 0..c.object_count() {
                if self.mor(g, c.id(x)) != c.id(self.ob(g, x)) {
                    return Some(format!("g={g} does not preserve the identity of {}", c.objects[x]));
                }
            }
            for (f, h) in c.composable_pairs() {
                if self.mor(g, c.comp(f, h)) != c.comp(self.mor(g, f), self.mor(g, h)) {
                    return Some(format!("g={g} does not preserve the composite of {f} and {h}"));
                }
            }
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                for x in 0..c.object_count() {
                    if self.ob(g, self.ob(h, x)) != self.ob(gh, x) {
                        return Some(format!("action is not multiplicative at ({g},{h}) on object {}", c.objects[x]));
                    }
                }
                for f in 0..c.morphism_count() {
                    if self.mor(g, self.mor(h, f)) != self.mor(gh, f) {
                        return Some(format!("action is not multiplicative at ({g},{h}) on morphism {f}"));
                    }
                }
            }
        }
        None
    }
}

/// Big-endian index of a tuple over `base` symbols.
pub fn tuple_index(xs: &[usize], base: usize) -> usize {
    xs.iter().fold(0, |acc, &x| acc * base + x)
}

/// All tuples of length `n` over `base` symbols, in index order.
pub fn all_tuples(base: usize, n: usize) -> Vec<Vec<usize>> {
    let count = base.checked_pow(n as u32).expect("tuple count overflow");
    (0..count)
        .map(|mut k| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = k % base;
                k /= base;
            }
            v
        })
        .collect()
}

/// A functor `C^n -> C` as explicit tables over object and morphism tuples.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FunctorTable {
    pub arity: usize,
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FunctorTable {
    pub fn from_fn(cat: &FiniteCategory, arity: usize, fob: impl Fn(&[usize]) -> usize, fmor: impl Fn(&[usize]) -> usize) -> Self {
        let ob = all_tuples(cat.object_count(), arity).iter().map(|xs| fob(xs)).collect();
        let mor = all_tuples(cat.morphism_count(), arity).iter().map(|fs| fmor(fs)).collect();
        FunctorTable { arity, ob, mor }
    }

    /// Like [`FunctorTable::from_fn`], but the morphism closure also receives
    /// the already tabulated images of the domain and codomain tuples.
    pub fn from_fn_with_ends(cat: &FiniteCategory, arity: usize, fob: impl Fn(&[usize]) -> usize, fmor: impl Fn(&[usize], usize, usize) -> usize) -> Self {
        let nob = cat.object_count();
        let ob: Vec<usize> = all_tuples(nob, arity).iter().map(|xs| fob(xs)).collect();
        let mut dom = vec![0; arity];
        let mut cod = vec![0; arity];
        let mor = all_tuples(cat.morphism_count(), arity)
            .iter()
            .map(|fs| {
                for (j, &f) in fs.iter().enumerate() {
                    dom[j] = cat.dom(f);
                    cod[j] = cat.cod(f);
                }
                fmor(fs, ob[tuple_index(&dom, nob)], ob[tuple_index(&cod, nob)])
            })
            .collect();
        FunctorTable { arity, ob, mor }
    }

    pub fn on_ob(&self, cat: &FiniteCategory, xs: &[usize]) -> usize {
        self.ob[tuple_index(xs, cat.object_count())]
    }

    pub fn on_mor(&self, cat: &FiniteCategory, fs: &[usize]) -> usize {
        self.mor[tuple_index(fs, cat.morphism_count())]
    }

    /// Functoriality on `C^n`: typing, identities, and composites.
    pub fn functor_errors(&self, cat: &FiniteCategory) -> Option<String> {
        if self.ob.len() != cat.object_count().pow(self.arity as u32) || self.mor.len() != cat.morphism_count().pow(self.arity as u32) {
            return Some("table sizes do not match the category".into());
        }
        for fs in all_tuples(cat.morphism_count(), self.arity) {
            let m = self.on_mor(cat, &fs);
            let dom: Vec<usize> = fs.iter().map(|&f| cat.dom(f)).collect();
            let cod: Vec<usize> = fs.iter().map(|&f| cat.cod(f)).collect();
            if m >= cat.morphism_count() || cat.dom(m) != self.on_ob(cat, &dom) || cat.cod(m) != self.on_ob(cat, &cod) {
                return Some(format!("ill-typed image of morphism tuple {fs:?}"));
            }
        }
        for xs in all_tuples(cat.object_count(), self.arity) {
            let ids: Vec<usize> = xs.iter().map(|&x| cat.id(x)).collect();
            if self.on_mor(cat, &ids) != cat.id(self.on_ob(cat, &xs)) {
                return Some(format!("identity not preserved at {xs:?}"));
            }
        }
        // functorial in each variable separately, and every tuple is the
        // composite of its single-variable factors
        let pairs = cat.composable_pairs();
        let with = |xs: &[usize], slot: usize, m: usize| -> Vec<usize> {
            let mut v: Vec<usize> = xs.iter().map(|&x| cat.id(x)).collect();
            v[slot] = m;
            v
        };
        for xs in all_tuples(cat.object_count(), self.arity) {
            for slot in 0..self.arity {
                for &(f, g) in pairs.iter().filter(|p| cat.dom(p.1) == xs[slot]) {
                    let lhs = self.on_mor(cat, &with(&xs, slot, cat.comp(f, g)));
                    let rhs = cat.comp(self.on_mor(cat, &with(&xs, slot, f)), self.on_mor(cat, &with(&xs, slot, g)));
                    if lhs != rhs {
                        return Some(format!("composite not preserved in variable {} at {f} after {g}", slot + 1));
                    }
                }
            }
        }
        for fs in all_tuples(cat.morphism_count(), self.arity) {
            let doms: Vec<usize> = fs.iter().map(|&f| cat.dom(f)).collect();
            let mut acc = self.on_mor(cat, &doms.iter().map(|&x| cat.id(x)).collect::<Vec<_>>());
            for slot in (0..self.arity).rev() {
                let single: Vec<usize> = (0..self.arity)
                    .map(|i| match i.cmp(&slot) {
                        std::cmp::Ordering::Less => cat.id(cat.dom(fs[i])),
                        std::cmp::Ordering::Equal => fs[i],
                        std::cmp::Ordering::Greater => cat.id(cat.cod(fs[i])),
                    })
                    .collect();
                acc = cat.comp(self.on_mor(cat, &single), acc);
            }
            if acc != self.on_mor(cat, &fs) {
                return Some(format!("tuple {fs:?} is not the composite of its factors"));
            }
        }
        None
    }
}
