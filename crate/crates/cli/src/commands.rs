//! One function per subcommand. Each appends to an [`Output`]; the exit
//! code is decided once the whole report is assembled.

use std::fs;

use operadkit::fincat::builtins::BUILTIN_NAMES;
use operadkit::fincat::io::nsmc_to_json;
use operadkit::fincat::nonexample::trivial_action_obstruction;
use operadkit::fincat::{roundtrip_algebra_nsmc, validate_lax_functor, validate_nsmc, verify_coherence_instance, Bounds, LaxFunctor, NormedSmc};
use operadkit::funtg::{build_funtg, fixed_point_functors, funtg_nsmc, hhr_norm, verify_fixed_points, verify_norm_square, ChoiceContext};
use operadkit::groups::{FiniteGroup, Subgroup};
use operadkit::indexing::{enumerate_indexing_systems, IndexingSystem, SubgroupLattice};
use operadkit::operad_zoo::{change_of_norms, comparison_maps, lattice_check, product_admissibles};
use operadkit::report::Report;
use operadkit::smn::{canonical_path, ExponentSet, Smn};

use crate::args::{BoundFlags, CoherenceCmd, Command, Format, FuntgCmd, IndexingCmd, InstanceArgs, NsmcCmd, PairArgs, SubgroupArgs, ZooCmd};
use crate::inputs::{self, InputResult};

/// The assembled report.
pub struct Output {
    format: Format,
    pub text: String,
    pub failed: bool,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, text: String::new(), failed: false }
    }

    /// A header line, shown in text format only.
    pub fn header(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.text.push_str(line.as_ref());
            self.text.push('\n');
        }
    }

    /// Output that is the result itself (listings, paths), shown always.
    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn report(&mut self, r: &Report) {
        self.failed |= !r.passed();
        match self.format {
            Format::Text => self.text.push_str(&r.to_string()),
            Format::Lines => {
                for c in &r.checks {
                    self.line(c.to_string());
                }
            }
        }
    }
}

/// Defaults filled in, as used by the verifiers.
pub struct Resolved {
    pub bounds: Bounds,
    pub max_level: usize,
    pub max_lambda: usize,
}

impl Resolved {
    pub fn from_flags(f: &BoundFlags) -> Self {
        let d = Bounds::default();
        let u = |x: Option<u64>, default: usize| x.map_or(default, |v| v as usize);
        Resolved {
            bounds: Bounds { depth: u(f.depth, d.depth), arity: u(f.arity, d.arity), path_len: u(f.path_len, d.path_len) },
            max_level: u(f.max_level, 3),
            max_lambda: u(f.max_lambda, usize::MAX),
        }
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn generated(g: &FiniteGroup, specs: &[String]) -> InputResult<IndexingSystem> {
    let exps = specs.iter().map(|s| inputs::exponent(g, s)).collect::<InputResult<Vec<_>>>()?;
    Ok(IndexingSystem::generate(&SubgroupLattice::new(g), &exps))
}

fn pair(args: &PairArgs, meet: bool, out: &mut Output) -> InputResult<()> {
    let g = inputs::group(&args.group.group)?;
    let a = generated(&g, &args.left)?;
    let b = generated(&g, &args.right)?;
    let r = if meet { a.meet(&b) } else { a.join(&b) }.map_err(err)?;
    out.line(format!("left  {}", a.describe()));
    out.line(format!("right {}", b.describe()));
    out.line(format!("{} {}", if meet { "meet " } else { "join " }, r.describe()));
    Ok(())
}

fn indexing(cmd: &IndexingCmd, out: &mut Output) -> InputResult<()> {
    match cmd {
        IndexingCmd::Generate { group, gsets } => {
            let g = inputs::group(&group.group)?;
            out.line(generated(&g, gsets)?.describe());
        }
        IndexingCmd::Lattice { group } => {
            let g = inputs::group(&group.group)?;
            let lattice = enumerate_indexing_systems(&g).map_err(err)?;
            out.line(format!("{} indexing systems", lattice.systems.len()));
            for (i, s) in lattice.systems.iter().enumerate() {
                out.line(format!("system {i}: {}", s.describe()));
            }
            for (a, b) in &lattice.hasse {
                out.line(format!("hasse {a} < {b}"));
            }
        }
        IndexingCmd::Meet(p) => pair(p, true, out)?,
        IndexingCmd::Join(p) => pair(p, false, out)?,
    }
    Ok(())
}

fn coherence(cmd: &CoherenceCmd, res: &Resolved, out: &mut Output) -> InputResult<()> {
    match cmd {
        CoherenceCmd::Canon { group, norms, from, to } => {
            let g = inputs::group(&group.group)?;
            let default = vec!["t1=G/e".to_string()];
            let smn = Smn::build(inputs::exponent_set(&g, if norms.is_empty() { &default } else { norms })?);
            let a = smn.parse_tree(from).map_err(err)?;
            let b = smn.parse_tree(to).map_err(err)?;
            let path = canonical_path(&smn, &a, &b).map_err(err)?;
            out.header("# canonical coherence path");
            out.line(format!("{} basic edges from {} to {}", path.steps.len(), smn.show(&a), smn.show(&b)));
            out.text.push_str(&path.describe(&smn));
        }
        CoherenceCmd::Verify(args) => {
            let d = inputs::instance(args)?;
            out.report(&verify_coherence_instance(&d, res.bounds));
        }
    }
    Ok(())
}

fn nsmc(cmd: &NsmcCmd, res: &Resolved, out: &mut Output) -> InputResult<()> {
    match cmd {
        NsmcCmd::Validate(args) => out.report(&validate_nsmc(&inputs::instance(args)?)),
        NsmcCmd::Coherence(args) => out.report(&verify_coherence_instance(&inputs::instance(args)?, res.bounds)),
        NsmcCmd::Roundtrip(args) => out.report(&roundtrip_algebra_nsmc(&inputs::instance(args)?)),
        NsmcCmd::Export(args) => out.line(nsmc_to_json(&inputs::instance(args)?)),
        NsmcCmd::Nonexample => out.report(&trivial_action_obstruction()),
        NsmcCmd::Functor { source, target, functor } => {
            let c = inputs::instance(source)?;
            let d = match target {
                Some(spec) => inputs::instance_from(spec, &c.smn.exponents)?,
                None => c.clone(),
            };
            let f: LaxFunctor = match functor {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
                }
                None => LaxFunctor::identity(&c),
            };
            check_functor_shape(&c, &d, &f)?;
            out.report(&validate_lax_functor(&c, &d, &f));
        }
    }
    Ok(())
}

/// Table sizes must match before any lookup into them.
fn check_functor_shape(c: &NormedSmc, d: &NormedSmc, f: &LaxFunctor) -> InputResult<()> {
    let n = c.nob();
    let ok = f.ob.len() == n
        && f.mor.len() == c.cat().morphism_count()
        && f.ob.iter().all(|&x| x < d.nob())
        && f.mor.iter().all(|&m| m < d.cat().morphism_count())
        && f.f_e < d.cat().morphism_count()
        && f.f_tensor.len() == n * n
        && f.f_norms.len() == c.norms.len()
        && f.f_norms.iter().zip(&c.smn.exponents.norms).all(|(t, s)| t.len() == n.pow(s.exponent.size() as u32))
        && d.smn.exponents.norms.len() == c.smn.exponents.norms.len();
    if ok {
        Ok(())
    } else {
        Err("functor tables do not match the source and target sizes".into())
    }
}

fn subgroups(g: &FiniteGroup, sub: &SubgroupArgs) -> InputResult<(Subgroup, Subgroup)> {
    let h = inputs::subgroup(g, &sub.h)?;
    let k = inputs::subgroup(g, &sub.k)?;
    if !k.is_subset_of(&h) {
        return Err("K must be contained in H".into());
    }
    Ok((h, k))
}

/// The base category with no norms of its own, and its group.
fn base(args: &InstanceArgs) -> InputResult<(NormedSmc, FiniteGroup)> {
    let g = inputs::group(&args.group.group)?;
    let d = inputs::instance_from(&args.data, &ExponentSet::empty(&g))?;
    let g = d.smn.group().clone();
    Ok((d, g))
}

fn funtg(cmd: &FuntgCmd, out: &mut Output) -> InputResult<()> {
    match cmd {
        FuntgCmd::Build(args) => {
            let (b, g) = base(args)?;
            let smn = Smn::build(inputs::exponent_set(&g, &args.norms)?);
            let (fun, d) = funtg_nsmc(&b, &smn, &ChoiceContext::canonical(&g)).map_err(err)?;
            out.line(format!("Fun(TG, C): {} objects, {} morphisms", fun.cat().object_count(), fun.cat().morphism_count()));
            out.report(&validate_nsmc(&d));
        }
        FuntgCmd::VerifyFixedPoints { instance, sub } => {
            let (b, g) = base(instance)?;
            let (h, _) = subgroups(&g, sub)?;
            let fun = build_funtg(&b.carrier).map_err(err)?;
            if !fun.trivial_base_action {
                return Err("fixed points are compared with H-actions only when C carries the trivial action".into());
            }
            let bundle = fixed_point_functors(&fun, b.cat(), &h, &ChoiceContext::canonical(&g)).map_err(err)?;
            out.report(&verify_fixed_points(&fun, &bundle, "H"));
        }
        FuntgCmd::VerifyNorms { instance, sub } => {
            let (b, g) = base(instance)?;
            let (h, k) = subgroups(&g, sub)?;
            let fun = build_funtg(&b.carrier).map_err(err)?;
            if !fun.trivial_base_action {
                return Err("norms are compared with N_K^H only when C carries the trivial action".into());
            }
            out.report(&verify_norm_square(&b, &fun, &k, &h, &ChoiceContext::canonical(&g)).map_err(err)?);
        }
        FuntgCmd::HhrNorm { instance, sub } => {
            let (b, g) = base(instance)?;
            let (h, k) = subgroups(&g, sub)?;
            if !build_funtg(&b.carrier).map_err(err)?.trivial_base_action {
                return Err("N_K^H is defined here for C with the trivial action".into());
            }
            let n = hhr_norm(&b, &ChoiceContext::canonical(&g), &h, &k).map_err(err)?;
            out.header(format!("# norm N_K^H, K = {:?}, H = {:?}", k.elements, h.elements));
            for (x, &y) in n.functor.ob.iter().enumerate() {
                out.line(format!("N({}) = {}", n.kc.cat.describe_object(x), n.hc.cat.describe_object(y)));
            }
            let mut report = Report::new("the norm N_K^H is a functor", "exhaustive");
            let mut check = operadkit::report::Check::new("hhr-norm-is-functor");
            if let Some(e) = n.functor.errors(&n.kc.cat, &n.hc.cat) {
                check.fail(e);
            } else {
                check.test(true, String::new);
            }
            report.push(check);
            out.report(&report);
        }
    }
    Ok(())
}

fn zoo(cmd: &ZooCmd, res: &Resolved, out: &mut Output) -> InputResult<()> {
    match cmd {
        ZooCmd::ComparePermutativity { group } => {
            let g = inputs::group(&group.group)?;
            out.report(&comparison_maps(&g, res.max_level, res.max_lambda).map_err(err)?);
        }
        ZooCmd::LatticeCheck { group } => {
            let g = inputs::group(&group.group)?;
            out.report(&lattice_check(&g).map_err(err)?);
        }
        ZooCmd::Products { group, left, right } => {
            let g = inputs::group(&group.group)?;
            let a = inputs::exponent_set(&g, left)?;
            let b = inputs::exponent_set(&g, right)?;
            let pairs = |s: &ExponentSet| s.norms.iter().map(|x| (x.id.clone(), x.exponent.clone())).collect::<Vec<_>>();
            out.report(&product_admissibles(&g, &pairs(&a), &pairs(&b)).map_err(err)?);
        }
        ZooCmd::ChangeNorms { group, n, m, data } => {
            let g = inputs::group(&group.group)?;
            let ns = inputs::exponent_set(&g, n)?;
            let ms = inputs::exponent_set(&g, m)?;
            let mut both = n.clone();
            both.extend(m.iter().cloned());
            let union = inputs::exponent_set(&g, &both)?;
            let d = inputs::instance_from(data, &union)?;
            out.report(&change_of_norms(&ns, &ms, &d).map_err(err)?);
        }
    }
    Ok(())
}

pub fn run(command: &Command, res: &Resolved, out: &mut Output) -> InputResult<()> {
    match command {
        Command::Indexing(c) => indexing(c, out),
        Command::Coherence(c) => coherence(c, res, out),
        Command::Nsmc(c) => nsmc(c, res, out),
        Command::Funtg(c) => funtg(c, out),
        Command::Zoo(c) => zoo(c, res, out),
    }
}

/// Shown under `--help`.
pub fn builtin_list() -> String {
    BUILTIN_NAMES.join(", ")
}
