//! Turning flag values into groups, subgroups, exponents and instances.

use std::fs;
use std::path::Path;

use operadkit::fincat::builtins::builtin;
use operadkit::fincat::io::nsmc_from_json;
use operadkit::fincat::NormedSmc;
use operadkit::groups::{FiniteGroup, Subgroup};
use operadkit::gsets::Exponent;
use operadkit::smn::{ExponentSet, Smn};

use crate::args::InstanceArgs;

pub type InputResult<T> = Result<T, String>;

fn read(path: &Path) -> InputResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn named_group(name: &str) -> InputResult<FiniteGroup> {
    let lower = name.to_ascii_lowercase();
    let factor = |s: &str| -> InputResult<FiniteGroup> {
        let order = |rest: &str| rest.parse::<usize>().map_err(|_| format!("unknown group `{name}`"));
        match s {
            "trivial" | "e" => Ok(FiniteGroup::trivial()),
            _ if s.starts_with('c') => Ok(FiniteGroup::cyclic(order(&s[1..])?)),
            _ if s.starts_with('s') => Ok(FiniteGroup::symmetric(order(&s[1..])?).0),
            _ => Err(format!("unknown group `{name}`")),
        }
    };
    let mut parts = lower.split('x');
    let mut g = factor(parts.next().unwrap_or_default())?;
    for p in parts {
        g = g.direct_product(&factor(p)?);
    }
    Ok(g)
}

/// A group file when the path exists, otherwise a group name.
pub fn group(spec: &str) -> InputResult<FiniteGroup> {
    let path = Path::new(spec);
    if path.is_file() {
        return FiniteGroup::parse(&read(path)?).map_err(|e| format!("{spec}: {e}"));
    }
    named_group(spec)
}

fn element_list(group: &FiniteGroup, text: &str) -> InputResult<Vec<usize>> {
    text.split(',')
        .map(|x| {
            let v: usize = x.trim().parse().map_err(|_| format!("`{x}` is not an element"))?;
            if v < group.order() {
                Ok(v)
            } else {
                Err(format!("element {v} outside a group of order {}", group.order()))
            }
        })
        .collect()
}

/// `G`, `e`, an element list `0,2`, or `gen:<list>` for the generated
/// subgroup.
pub fn subgroup(group: &FiniteGroup, spec: &str) -> InputResult<Subgroup> {
    match spec.trim() {
        "G" => Ok(group.whole()),
        "e" => Ok(group.trivial_subgroup()),
        s if s.starts_with("gen:") => Ok(group.generated(&element_list(group, &s[4..])?)),
        s => group.subgroup(element_list(group, s)?).map_err(|e| format!("subgroup `{s}`: {e}")),
    }
}

/// An exponent file when the path exists, otherwise `H/K+H/K+…` with a
/// common H.
pub fn exponent(group: &FiniteGroup, spec: &str) -> InputResult<Exponent> {
    let path = Path::new(spec);
    if path.is_file() {
        return Exponent::parse(group, &read(path)?).map_err(|e| format!("{spec}: {e}"));
    }
    let mut total: Option<Exponent> = None;
    for term in spec.split('+') {
        let (h, k) = term.split_once('/').ok_or_else(|| format!("`{term}` is neither a file nor an orbit H/K"))?;
        let h = subgroup(group, h)?;
        let k = subgroup(group, k)?;
        if !k.is_subset_of(&h) {
            return Err(format!("in `{term}`, K is not contained in H"));
        }
        let orbit = Exponent::coset_space(group, &h, &k);
        total = Some(match total {
            None => orbit,
            Some(t) if t.subgroup == orbit.subgroup => t.disjoint_union(&orbit),
            Some(_) => return Err(format!("the orbits of `{spec}` are over different subgroups")),
        });
    }
    total.ok_or_else(|| format!("empty exponent `{spec}`"))
}

/// `id=SPEC` pairs.
pub fn exponent_set(group: &FiniteGroup, specs: &[String]) -> InputResult<ExponentSet> {
    let mut norms = Vec::new();
    for s in specs {
        let (id, spec) = s.split_once('=').ok_or_else(|| format!("norm `{s}` must be id=SPEC"))?;
        norms.push((id.to_string(), exponent(group, spec)?));
    }
    ExponentSet::new(group, norms).map_err(|e| e.to_string())
}

/// A builtin normed by `norms`, or a JSON file (which carries
/// its own group and norms).
pub fn instance_from(spec: &str, norms: &ExponentSet) -> InputResult<NormedSmc> {
    let path = Path::new(spec);
    if path.is_file() {
        return nsmc_from_json(&read(path)?).map_err(|e| format!("{spec}: {e}"));
    }
    builtin(spec, Smn::build(norms.clone())).map_err(|e| e.to_string())
}

pub fn instance(args: &InstanceArgs) -> InputResult<NormedSmc> {
    let g = group(&args.group.group)?;
    let norms = exponent_set(&g, &args.norms)?;
    instance_from(&args.data, &norms)
}
