//! Normed symmetric monoidal structure on a finite G-category: the data
//! tables, the interpretation of trees, basic edges and paths, and the
//! exhaustive axiom validator.

use crate::free_operad::Tree;
use crate::groups::Permutation;
use crate::report::{Check, Report};
use crate::smn::{irreducible, match_redex, BasicEdge, CoherencePath, EdgeKind, GeneratorLabel, PathStep, Smn};

use super::category::{all_tuples, tuple_index, FiniteCategory, FiniteGCategory, FunctorTable};

/// Tables for one exponent T: the norm `⊗_T` and its untwistor `υ_T`
/// (components indexed by object tuples).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormTables {
    pub functor: FunctorTable,
    pub upsilon: Vec<usize>,
}

/// The tuple `(e, ⊗, {⊗_T}, α, λ, ρ, β, {υ_T})` on a finite G-category.
/// `alpha` is indexed by `(x, y, z)`, `beta` by `(x, y)`, `lambda` and
/// `rho` by `x`; `norms[k]` belongs to `smn.exponents.norms[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormedSmc {
    pub carrier: FiniteGCategory,
    pub smn: Smn,
    pub unit: usize,
    pub tensor: FunctorTable,
    pub alpha: Vec<usize>,
    pub lambda: Vec<usize>,
    pub rho: Vec<usize>,
    pub beta: Vec<usize>,
    pub norms: Vec<NormTables>,
}

/// Components of a natural transformation between functors `C^n -> C`,
/// indexed by object tuples.
pub type Components = Vec<usize>;

impl NormedSmc {
    pub fn cat(&self) -> &FiniteCategory {
        &self.carrier.cat
    }

    pub fn nob(&self) -> usize {
        self.cat().object_count()
    }

    pub fn t_ob(&self, x: usize, y: usize) -> usize {
        self.tensor.ob[x * self.nob() + y]
    }

    pub fn t_mor(&self, f: usize, g: usize) -> usize {
        self.tensor.mor[f * self.cat().morphism_count() + g]
    }

    pub fn alpha_at(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.nob();
        self.alpha[(x * n + y) * n + z]
    }

    pub fn beta_at(&self, x: usize, y: usize) -> usize {
        self.beta[x * self.nob() + y]
    }

    pub fn inv(&self, f: usize) -> usize {
        self.cat().inverse(f).unwrap_or_else(|| panic!("{} is not invertible", self.cat().describe_morphism(f)))
    }

    /// ⊗_n on objects: left-associated, `e` for n = 0.
    pub fn tensor_n_ob(&self, xs: &[usize]) -> usize {
        match xs.split_first() {
            None => self.unit,
            Some((&first, rest)) => rest.iter().fold(first, |acc, &x| self.t_ob(acc, x)),
        }
    }

    pub fn tensor_n_mor(&self, fs: &[usize]) -> usize {
        match fs.split_first() {
            None => self.cat().id(self.unit),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &f| self.t_mor(acc, f)),
        }
    }

    fn norm_parts(&self, label: usize) -> (usize, usize) {
        match self.smn.kinds[label] {
            GeneratorLabel::Norm { norm, rep } => (norm, self.smn.exponents.norms[norm].reps[rep]),
            _ => panic!("label {label} is not a norm"),
        }
    }

    /// `g_i ⊗_T (X) = g_i ⊗_T(g_i⁻¹ X)`.
    pub fn norm_label_ob(&self, label: usize, xs: &[usize]) -> usize {
        let (k, g) = self.norm_parts(label);
        let gi = self.carrier.group.inv(g);
        let moved: Vec<usize> = xs.iter().map(|&x| self.carrier.ob(gi, x)).collect();
        self.carrier.ob(g, self.norms[k].functor.on_ob(self.cat(), &moved))
    }

    pub fn norm_label_mor(&self, label: usize, fs: &[usize]) -> usize {
        let (k, g) = self.norm_parts(label);
        let gi = self.carrier.group.inv(g);
        let moved: Vec<usize> = fs.iter().map(|&f| self.carrier.mor(gi, f)).collect();
        self.carrier.mor(g, self.norms[k].functor.on_mor(self.cat(), &moved))
    }

    /// `(g_i υ_T)_X = g_i (υ_T)_{g_i⁻¹ X}`.
    pub fn upsilon_label(&self, label: usize, xs: &[usize]) -> usize {
        let (k, g) = self.norm_parts(label);
        let gi = self.carrier.group.inv(g);
        let moved: Vec<usize> = xs.iter().map(|&x| self.carrier.ob(gi, x)).collect();
        self.carrier.mor(g, self.norms[k].upsilon[tuple_index(&moved, self.nob())])
    }

    pub fn label_ob(&self, label: usize, xs: &[usize]) -> usize {
        match self.smn.kinds[label] {
            GeneratorLabel::Unit => self.unit,
            GeneratorLabel::Tensor => self.t_ob(xs[0], xs[1]),
            GeneratorLabel::Norm { .. } => self.norm_label_ob(label, xs),
        }
    }

    pub fn label_mor(&self, label: usize, fs: &[usize]) -> usize {
        match self.smn.kinds[label] {
            GeneratorLabel::Unit => self.cat().id(self.unit),
            GeneratorLabel::Tensor => self.t_mor(fs[0], fs[1]),
            GeneratorLabel::Norm { .. } => self.norm_label_mor(label, fs),
        }
    }

    /// |t| on an object tuple; leaf `i` reads input `i`.
    pub fn eval_ob(&self, t: &Tree, xs: &[usize]) -> usize {
        match t {
            Tree::Leaf(i) => xs[i - 1],
            Tree::Node(l, cs) => {
                let ys: Vec<usize> = cs.iter().map(|c| self.eval_ob(c, xs)).collect();
                self.label_ob(*l, &ys)
            }
        }
    }

    pub fn eval_mor(&self, t: &Tree, fs: &[usize]) -> usize {
        match t {
            Tree::Leaf(i) => fs[i - 1],
            Tree::Node(l, cs) => {
                let ms: Vec<usize> = cs.iter().map(|c| self.eval_mor(c, fs)).collect();
                self.label_mor(*l, &ms)
            }
        }
    }

    /// |t| as explicit functor tables.
    pub fn interpret_tree(&self, t: &Tree) -> FunctorTable {
        FunctorTable::from_fn(self.cat(), t.arity(), |xs| self.eval_ob(t, xs), |fs| self.eval_mor(t, fs))
    }

    /// Component of an irreducible edge at its input objects.
    pub fn irreducible_component(&self, kind: EdgeKind, ys: &[usize]) -> usize {
        use EdgeKind::*;
        let n = self.nob();
        match kind {
            Id => self.cat().id(ys[0]),
            Alpha => self.alpha_at(ys[0], ys[1], ys[2]),
            AlphaInv => self.inv(self.alpha_at(ys[0], ys[1], ys[2])),
            Lambda => self.lambda[ys[0]],
            LambdaInv => self.inv(self.lambda[ys[0]]),
            Rho => self.rho[ys[0]],
            RhoInv => self.inv(self.rho[ys[0]]),
            Beta => self.beta[ys[0] * n + ys[1]],
            Upsilon(l) => self.upsilon_label(l, ys),
            UpsilonInv(l) => self.inv(self.upsilon_label(l, ys)),
        }
    }

    /// Component at `xs` of a located step: the irreducible component
    /// whiskered by the surrounding tree.
    pub fn step_component(&self, step: &PathStep, xs: &[usize]) -> usize {
        let y = step.source.subtree(&step.pos).expect("step position");
        let parts = match_redex(&self.smn, y, step.kind).expect("step redex");
        let ys: Vec<usize> = parts.iter().map(|p| self.eval_ob(p, xs)).collect();
        let phi = self.irreducible_component(step.kind, &ys);
        self.whisker(&step.source, &step.pos, phi, xs)
    }

    fn whisker(&self, t: &Tree, pos: &[usize], phi: usize, xs: &[usize]) -> usize {
        match (pos.split_first(), t) {
            (None, _) => phi,
            (Some((&j, rest)), Tree::Node(l, cs)) => {
                let ms: Vec<usize> = cs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i == j { self.whisker(c, rest, phi, xs) } else { self.cat().id(self.eval_ob(c, xs)) })
                    .collect();
                self.label_mor(*l, &ms)
            }
            _ => panic!("position below a leaf"),
        }
    }

    /// Component at `xs` of a basic edge in tuple form:
    /// `(σ·δ(id_s; id, …, |(t,t')| ∘ (|u_1|, …, |u_k|), …, id))_X`.
    pub fn edge_component(&self, edge: &BasicEdge, xs: &[usize]) -> usize {
        let (t, _) = irreducible(&self.smn, edge.kind);
        let zsize: usize = edge.us.iter().map(Tree::arity).sum();
        debug_assert_eq!(t.arity(), edge.us.len());
        let ys: Vec<usize> = (0..xs.len()).map(|j| xs[edge.sigma.apply(j)]).collect();
        let m = edge.s.arity();
        let mut blocks = Vec::with_capacity(m);
        let mut offset = 0;
        for leaf in 1..=m {
            let size = if leaf == edge.slot { zsize } else { 1 };
            blocks.push(offset..offset + size);
            offset += size;
        }
        let zin = &ys[blocks[edge.slot - 1].clone()];
        let mut off = 0;
        let mut args = Vec::new();
        for u in &edge.us {
            args.push(self.eval_ob(u, &zin[off..off + u.arity()]));
            off += u.arity();
        }
        let phi = self.irreducible_component(edge.kind, &args);
        let ms: Vec<usize> = (1..=m).map(|leaf| if leaf == edge.slot { phi } else { self.cat().id(ys[blocks[leaf - 1].start]) }).collect();
        self.eval_mor(&edge.s, &ms)
    }

    /// Vertical composite of the step components along the path.
    pub fn path_component(&self, path: &CoherencePath, xs: &[usize]) -> usize {
        let start = self.cat().id(self.eval_ob(&path.start, xs));
        path.steps.iter().fold(start, |acc, s| self.cat().comp(self.step_component(s, xs), acc))
    }

    /// |p| as components over all object tuples of the path's arity.
    pub fn interpret_path(&self, path: &CoherencePath) -> Components {
        all_tuples(self.nob(), path.start.arity()).iter().map(|xs| self.path_component(path, xs)).collect()
    }

    /// The permutation coherence `⊗_n(Y) -> ⊗_n(Y_{π⁻¹1}, …, Y_{π⁻¹n})`,
    /// moving the factor at position i to position π(i). Built by recursive
    /// insertion from α, β and α⁻¹ only.
    pub fn permutation_coherence(&self, ys: &[usize], pi: &Permutation) -> usize {
        let n = ys.len();
        let c = self.cat();
        if n <= 1 {
            return c.id(self.tensor_n_ob(ys));
        }
        let p = pi.apply(n - 1);
        let restricted: Vec<usize> = (0..n - 1).map(|i| if pi.apply(i) < p { pi.apply(i) } else { pi.apply(i) - 1 }).collect();
        let rest = Permutation::from_images(restricted).expect("restriction of a permutation");
        let mut zs = vec![0; n - 1];
        for i in 0..n - 1 {
            zs[rest.apply(i)] = ys[i];
        }
        let first = self.t_mor(self.permutation_coherence(&ys[..n - 1], &rest), c.id(ys[n - 1]));
        c.comp(self.insert_factor(&zs, ys[n - 1], p), first)
    }

    /// `⊗_m(Z) ⊗ W -> ⊗_{m+1}(Z_1, …, Z_p, W, Z_{p+1}, …)`.
    fn insert_factor(&self, zs: &[usize], w: usize, p: usize) -> usize {
        let m = zs.len();
        let c = self.cat();
        if p == m {
            return c.id(self.t_ob(self.tensor_n_ob(zs), w));
        }
        if m == 1 {
            return self.beta_at(zs[0], w);
        }
        let a = self.tensor_n_ob(&zs[..m - 1]);
        let z = zs[m - 1];
        let assoc = self.alpha_at(a, z, w);
        let swap = self.t_mor(c.id(a), self.beta_at(z, w));
        let back = self.inv(self.alpha_at(a, w, z));
        let inner = self.t_mor(self.insert_factor(&zs[..m - 1], w, p), c.id(z));
        c.chain(&[assoc, swap, back, inner])
    }

    /// Replaces the braiding, for mutation tests.
    pub fn with_beta(&self, beta: Vec<usize>) -> Self {
        NormedSmc { beta, ..self.clone() }
    }
}

fn show(xs: &[usize], c: &FiniteCategory) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| c.describe_object(x)).collect();
    format!("({})", names.join(", "))
}

/// Checks that `comp(xs)` is a (iso)morphism `src(xs) -> tgt(xs)` and natural.
#[allow(clippy::too_many_arguments)]
fn check_transformation(
    check: &mut Check,
    c: &FiniteCategory,
    n: usize,
    src_ob: &dyn Fn(&[usize]) -> usize,
    tgt_ob: &dyn Fn(&[usize]) -> usize,
    src_mor: &dyn Fn(&[usize]) -> usize,
    tgt_mor: &dyn Fn(&[usize]) -> usize,
    comp: &dyn Fn(&[usize]) -> usize,
    iso: bool,
) {
    for xs in all_tuples(c.object_count(), n) {
        let f = comp(&xs);
        let ok = f < c.morphism_count() && c.dom(f) == src_ob(&xs) && c.cod(f) == tgt_ob(&xs) && (!iso || c.is_iso(f));
        if !check.test(ok, || format!("component at {} is not a{} morphism of the right type", show(&xs, c), if iso { "n iso" } else { "" })) {
            return;
        }
    }
    for fs in all_tuples(c.morphism_count(), n) {
        let dom: Vec<usize> = fs.iter().map(|&f| c.dom(f)).collect();
        let cod: Vec<usize> = fs.iter().map(|&f| c.cod(f)).collect();
        let ok = c.comp(tgt_mor(&fs), comp(&dom)) == c.comp(comp(&cod), src_mor(&fs));
        if !check.test(ok, || format!("naturality square fails at morphisms {fs:?}")) {
            return;
        }
    }
}

/// Exhaustive check of every normed symmetric monoidal axiom.
pub fn validate_nsmc(d: &NormedSmc) -> Report {
    let mut report = Report::new("normed symmetric monoidal category axioms", "exhaustive over all objects and morphisms");
    let c = d.cat();
    let gc = &d.carrier;
    let group = &gc.group;
    let n = c.object_count();

    let mut action = Check::new("g-action");
    if let Some(err) = gc.action_errors() {
        action.fail(err);
    } else {
        action.instances = group.order();
    }
    report.push(action);

    let mut unit = Check::new("unit-fixed");
    for g in group.elements() {
        unit.test(gc.ob(g, d.unit) == d.unit, || format!("g={g} moves the unit"));
    }
    report.push(unit);

    let mut tensor = Check::new("tensor-functor");
    match d.tensor.functor_errors(c) {
        Some(err) => tensor.fail(err),
        None => tensor.instances = 1,
    }
    let tensor_ok = tensor.passed;
    report.push(tensor);
    if !tensor_ok {
        return report;
    }

    let mut tensor_eq = Check::new("tensor-equivariant");
    'outer: for g in group.elements() {
        for x in 0..n {
            for y in 0..n {
                if !tensor_eq.test(gc.ob(g, d.t_ob(x, y)) == d.t_ob(gc.ob(g, x), gc.ob(g, y)), || format!("g={g} at objects ({x}, {y})")) {
                    break 'outer;
                }
            }
        }
        for (f, h) in all_tuples(c.morphism_count(), 2).iter().map(|v| (v[0], v[1])) {
            if !tensor_eq.test(gc.mor(g, d.t_mor(f, h)) == d.t_mor(gc.mor(g, f), gc.mor(g, h)), || format!("g={g} at morphisms ({f}, {h})")) {
                break 'outer;
            }
        }
    }
    report.push(tensor_eq);

    let t3 = |xs: &[usize]| d.t_ob(d.t_ob(xs[0], xs[1]), xs[2]);
    let t3r = |xs: &[usize]| d.t_ob(xs[0], d.t_ob(xs[1], xs[2]));
    let m3 = |fs: &[usize]| d.t_mor(d.t_mor(fs[0], fs[1]), fs[2]);
    let m3r = |fs: &[usize]| d.t_mor(fs[0], d.t_mor(fs[1], fs[2]));
    let mut alpha = Check::new("alpha-natural-iso");
    check_transformation(&mut alpha, c, 3, &t3, &t3r, &m3, &m3r, &|xs| d.alpha_at(xs[0], xs[1], xs[2]), true);
    report.push(alpha);
    let mut lambda = Check::new("lambda-natural-iso");
    check_transformation(&mut lambda, c, 1, &|xs| d.t_ob(d.unit, xs[0]), &|xs| xs[0], &|fs| d.t_mor(c.id(d.unit), fs[0]), &|fs| fs[0], &|xs| d.lambda[xs[0]], true);
    report.push(lambda);
    let mut rho = Check::new("rho-natural-iso");
    check_transformation(&mut rho, c, 1, &|xs| d.t_ob(xs[0], d.unit), &|xs| xs[0], &|fs| d.t_mor(fs[0], c.id(d.unit)), &|fs| fs[0], &|xs| d.rho[xs[0]], true);
    report.push(rho);
    let mut beta = Check::new("beta-natural-iso");
    check_transformation(
        &mut beta,
        c,
        2,
        &|xs| d.t_ob(xs[0], xs[1]),
        &|xs| d.t_ob(xs[1], xs[0]),
        &|fs| d.t_mor(fs[0], fs[1]),
        &|fs| d.t_mor(fs[1], fs[0]),
        &|xs| d.beta_at(xs[0], xs[1]),
        true,
    );
    report.push(beta);
    let structural_ok = report.passed();
    if !structural_ok {
        return report;
    }

    let mut gnat = Check::new("coherence-g-natural");
    for g in group.elements() {
        for xs in all_tuples(n, 3) {
            let gx = gc.ob_tuple(g, &xs);
            gnat.test(gc.mor(g, d.alpha_at(xs[0], xs[1], xs[2])) == d.alpha_at(gx[0], gx[1], gx[2]), || format!("alpha, g={g}, {}", show(&xs, c)));
        }
        for x in 0..n {
            let gx = gc.ob(g, x);
            gnat.test(gc.mor(g, d.lambda[x]) == d.lambda[gx], || format!("lambda, g={g}, {}", c.objects[x]));
            gnat.test(gc.mor(g, d.rho[x]) == d.rho[gx], || format!("rho, g={g}, {}", c.objects[x]));
            for y in 0..n {
                gnat.test(gc.mor(g, d.beta_at(x, y)) == d.beta_at(gx, gc.ob(g, y)), || format!("beta, g={g}, ({}, {})", c.objects[x], c.objects[y]));
            }
        }
    }
    report.push(gnat);

    let mut pentagon = Check::new("pentagon");
    for xs in all_tuples(n, 4) {
        let (w, x, y, z) = (xs[0], xs[1], xs[2], xs[3]);
        let lhs = c.comp(d.alpha_at(w, x, d.t_ob(y, z)), d.alpha_at(d.t_ob(w, x), y, z));
        let rhs = c.chain(&[d.t_mor(d.alpha_at(w, x, y), c.id(z)), d.alpha_at(w, d.t_ob(x, y), z), d.t_mor(c.id(w), d.alpha_at(x, y, z))]);
        if !pentagon.test(lhs == rhs, || format!("at {}", show(&xs, c))) {
            break;
        }
    }
    report.push(pentagon);

    let mut triangle = Check::new("triangle");
    for x in 0..n {
        for y in 0..n {
            let lhs = c.comp(d.t_mor(c.id(x), d.lambda[y]), d.alpha_at(x, d.unit, y));
            let rhs = d.t_mor(d.rho[x], c.id(y));
            triangle.test(lhs == rhs, || format!("(id ⊗ λ) ∘ α ≠ ρ ⊗ id at ({}, {})", c.objects[x], c.objects[y]));
        }
    }
    report.push(triangle);

    let mut unit_triangle = Check::new("braided-unit-triangle");
    for x in 0..n {
        unit_triangle.test(c.comp(d.lambda[x], d.beta_at(x, d.unit)) == d.rho[x], || format!("λ ∘ β ≠ ρ at {}", c.objects[x]));
    }
    report.push(unit_triangle);

    let mut symmetry = Check::new("symmetry");
    for x in 0..n {
        for y in 0..n {
            symmetry.test(c.comp(d.beta_at(y, x), d.beta_at(x, y)) == c.id(d.t_ob(x, y)), || format!("β ∘ β ≠ id at ({}, {})", c.objects[x], c.objects[y]));
        }
    }
    report.push(symmetry);

    let mut hexagon = Check::new("hexagon");
    for xs in all_tuples(n, 3) {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        let lhs = c.chain(&[d.alpha_at(x, y, z), d.beta_at(x, d.t_ob(y, z)), d.alpha_at(y, z, x)]);
        let rhs = c.chain(&[d.t_mor(d.beta_at(x, y), c.id(z)), d.alpha_at(y, x, z), d.t_mor(c.id(y), d.beta_at(x, z))]);
        if !hexagon.test(lhs == rhs, || format!("at {}", show(&xs, c))) {
            break;
        }
    }
    report.push(hexagon);

    let mut unit_coherence = Check::new("unit-coherence");
    unit_coherence.test(d.lambda[d.unit] == d.rho[d.unit], || "λ_e ≠ ρ_e".into());
    report.push(unit_coherence);

    for (k, spec) in d.smn.exponents.norms.iter().enumerate() {
        report.extend(validate_norm(d, k, &spec.id));
    }
    report
}

/// Functoriality and equivariance of `⊗_T`, and the untwistor axioms.
pub(crate) fn validate_norm(d: &NormedSmc, k: usize, id: &str) -> Report {
    let mut report = Report::default();
    let c = d.cat();
    let gc = &d.carrier;
    let spec = &d.smn.exponents.norms[k];
    let t = &spec.exponent;
    let size = t.size();
    let tables = &d.norms[k];

    let mut functor = Check::new(format!("norm-functor[{id}]"));
    match tables.functor.functor_errors(c) {
        Some(err) => functor.fail(err),
        None => functor.instances = 1,
    }
    let functor_ok = functor.passed;
    report.push(functor);
    if !functor_ok {
        return report;
    }

    // h ⊗_T(C) = ⊗_T(h C_{σ(h)⁻¹ 1}, …): the twisted diagonal action
    let twist_ob = |h: usize, xs: &[usize]| -> Vec<usize> {
        let s = t.sigma(h).inverse();
        (0..size).map(|j| gc.ob(h, xs[s.apply(j)])).collect()
    };
    let twist_mor = |h: usize, fs: &[usize]| -> Vec<usize> {
        let s = t.sigma(h).inverse();
        (0..size).map(|j| gc.mor(h, fs[s.apply(j)])).collect()
    };
    let mut equiv = Check::new(format!("norm-equivariant[{id}]"));
    'outer: for &h in &t.subgroup.elements {
        for xs in all_tuples(c.object_count(), size) {
            let ok = gc.ob(h, tables.functor.on_ob(c, &xs)) == tables.functor.on_ob(c, &twist_ob(h, &xs));
            if !equiv.test(ok, || format!("h={h} at objects {}", show(&xs, c))) {
                break 'outer;
            }
        }
        for fs in all_tuples(c.morphism_count(), size) {
            let ok = gc.mor(h, tables.functor.on_mor(c, &fs)) == tables.functor.on_mor(c, &twist_mor(h, &fs));
            if !equiv.test(ok, || format!("h={h} at morphisms {fs:?}")) {
                break 'outer;
            }
        }
    }
    report.push(equiv);

    let mut ups = Check::new(format!("untwistor-natural-iso[{id}]"));
    let ups_at = |xs: &[usize]| tables.upsilon[tuple_index(xs, c.object_count())];
    check_transformation(
        &mut ups,
        c,
        size,
        &|xs| tables.functor.on_ob(c, xs),
        &|xs| d.tensor_n_ob(xs),
        &|fs| tables.functor.on_mor(c, fs),
        &|fs| d.tensor_n_mor(fs),
        &ups_at,
        true,
    );
    let ups_ok = ups.passed;
    report.push(ups);
    if !ups_ok {
        return report;
    }

    // h υ_T(C) = σ(h)⁻¹ ∘ υ_T(hC_{σ(h)⁻¹ •})
    let mut twisted = Check::new(format!("twisted-equivariance[{id}]"));
    'outer2: for &h in &t.subgroup.elements {
        let sinv = t.sigma(h).inverse();
        for xs in all_tuples(c.object_count(), size) {
            let moved = twist_ob(h, &xs);
            let lhs = gc.mor(h, ups_at(&xs));
            let rhs = c.comp(d.permutation_coherence(&moved, &sinv), ups_at(&moved));
            let ok = lhs == rhs;
            if !twisted.test(ok, || {
                format!(
                    "h={h}, σ(h)={}, at {}: h·υ = {} but σ(h)⁻¹ ∘ υ = {}",
                    t.sigma(h),
                    show(&xs, c),
                    c.morphisms[lhs].name,
                    c.morphisms[rhs].name
                )
            }) {
                break 'outer2;
            }
        }
    }
    report.push(twisted);
    report
}
