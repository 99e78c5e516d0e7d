//! Small carriers used throughout the verifiers: discrete, chaotic, sign
//! and poset categories with their normed symmetric monoidal structure.

use crate::groups::FiniteGroup;
use crate::smn::Smn;

use super::category::{all_tuples, tuple_index, FiniteCategory, FiniteGCategory, FunctorTable};
use super::nsmc::{NormTables, NormedSmc};
use super::FincatError;

/// Structure on a thin carrier (at most one morphism between two objects):
/// every morphism table and coherence component is forced by endpoints.
pub fn thin_nsmc(
    carrier: FiniteGCategory,
    smn: Smn,
    unit: usize,
    tensor: impl Fn(usize, usize) -> usize,
    norm: impl Fn(usize, &[usize]) -> usize,
) -> NormedSmc {
    let c = &carrier.cat;
    let n = c.object_count();
    let arrow = |x: usize, y: usize| -> usize {
        match c.hom(x, y) {
            [f] => *f,
            other => panic!("thin carrier has {} morphisms {} -> {}", other.len(), c.objects[x], c.objects[y]),
        }
    };
    let tensor_table = FunctorTable::from_fn(
        c,
        2,
        |xs| tensor(xs[0], xs[1]),
        |fs| arrow(tensor(c.dom(fs[0]), c.dom(fs[1])), tensor(c.cod(fs[0]), c.cod(fs[1]))),
    );
    let t = |x, y| tensor(x, y);
    let alpha = all_tuples(n, 3).iter().map(|v| arrow(t(t(v[0], v[1]), v[2]), t(v[0], t(v[1], v[2])))).collect();
    let lambda = (0..n).map(|x| arrow(t(unit, x), x)).collect();
    let rho = (0..n).map(|x| arrow(t(x, unit), x)).collect();
    let beta = all_tuples(n, 2).iter().map(|v| arrow(t(v[0], v[1]), t(v[1], v[0]))).collect();
    let tensor_n = |xs: &[usize]| xs.split_first().map(|(&f, r)| r.iter().fold(f, |a, &x| t(a, x))).unwrap_or(unit);
    let norms = smn
        .exponents
        .norms
        .iter()
        .enumerate()
        .map(|(k, spec)| {
            let size = spec.exponent.size();
            let functor = FunctorTable::from_fn(
                c,
                size,
                |xs| norm(k, xs),
                |fs| {
                    let d: Vec<usize> = fs.iter().map(|&f| c.dom(f)).collect();
                    let e: Vec<usize> = fs.iter().map(|&f| c.cod(f)).collect();
                    arrow(norm(k, &d), norm(k, &e))
                },
            );
            let upsilon = all_tuples(n, size).iter().map(|xs| arrow(norm(k, xs), tensor_n(xs))).collect();
            NormTables { functor, upsilon }
        })
        .collect();
    NormedSmc { carrier, smn, unit, tensor: tensor_table, alpha, lambda, rho, beta, norms }
}

/// `Set(G, Z/m)^disc`: functions G -> Z/m under pointwise addition, with
/// `(g·f)(x) = f(xg)`, every norm the iterated sum and every untwistor the
/// identity. Object index = the value tuple `(f(0), …, f(|G|-1))` in base m.
pub fn discrete_functions(smn: Smn, m: usize) -> NormedSmc {
    let g = smn.group().clone();
    let tuples = all_tuples(m, g.order());
    let names = tuples.iter().map(|v| format!("{v:?}").replace(' ', "")).collect();
    let cat = FiniteCategory::discrete(names);
    let act_ob: Vec<Vec<usize>> = g
        .elements()
        .map(|h| tuples.iter().map(|f| tuple_index(&g.elements().map(|x| f[g.mul(x, h)]).collect::<Vec<_>>(), m)).collect())
        .collect();
    let carrier = FiniteGCategory { cat, group: g.clone(), act_mor: act_ob.clone(), act_ob };
    let add = move |a: usize, b: usize| -> usize {
        let (va, vb) = (&tuples[a], &tuples[b]);
        tuple_index(&va.iter().zip(vb).map(|(x, y)| (x + y) % m).collect::<Vec<_>>(), m)
    };
    let sum = add.clone();
    thin_nsmc(carrier, smn, 0, add, move |_, xs| xs.iter().fold(0, |a, &x| sum(a, x)))
}

/// The chaotic category on Z/2 with trivial action, ⊗ = + and norms = sums.
pub fn chaotic_z2(smn: Smn) -> NormedSmc {
    let cat = FiniteCategory::chaotic(vec!["0".into(), "1".into()]);
    let carrier = FiniteGCategory::trivial(cat, smn.group());
    thin_nsmc(carrier, smn, 0, |a, b| (a + b) % 2, |_, xs| xs.iter().sum::<usize>() % 2)
}

/// The poset {0 < 1} with trivial action and ⊗ = max; norms are maxima.
pub fn max_poset(smn: Smn) -> NormedSmc {
    let cat = FiniteCategory::poset(vec!["0".into(), "1".into()], &[vec![true, true], vec![false, true]]);
    let carrier = FiniteGCategory::trivial(cat, smn.group());
    thin_nsmc(carrier, smn, 0, |a, b| a.max(b), |_, xs| xs.iter().copied().max().unwrap_or(0))
}

/// `P × P` for P = {0 < 1}, with C2 swapping the factors; ⊗ and the norms
/// are componentwise maxima. Object `(a, b)` has index `2a + b`.
pub fn max_poset_square(smn: Smn) -> Result<NormedSmc, FincatError> {
    let g = smn.group().clone();
    if g.order() != 2 {
        return Err(FincatError::Invalid("the swap action needs the group C2".into()));
    }
    let p = FiniteCategory::poset(vec!["0".into(), "1".into()], &[vec![true, true], vec![false, true]]);
    let cat = FiniteCategory::product(&p, &p);
    let swap_ob: Vec<usize> = (0..4).map(|x| (x % 2) * 2 + x / 2).collect();
    let mp = p.morphism_count();
    let swap_mor: Vec<usize> = (0..cat.morphism_count()).map(|f| (f % mp) * mp + f / mp).collect();
    let carrier = FiniteGCategory {
        cat,
        group: g,
        act_ob: vec![(0..4).collect(), swap_ob],
        act_mor: vec![(0..mp * mp).collect(), swap_mor],
    };
    let join = |a: usize, b: usize| ((a / 2).max(b / 2)) * 2 + (a % 2).max(b % 2);
    Ok(thin_nsmc(carrier, smn, 0, join, move |_, xs| xs.iter().fold(0, |a, &x| join(a, x))))
}

/// The sign groupoid: objects Z/2, each with automorphisms {±1}; ⊗ adds
/// objects and multiplies signs, `β_{a,b} = (-1)^{ab}`, α = λ = ρ = id,
/// trivial action. Morphism `2a + s` is the sign `(-1)^s` on object a.
/// Each norm is the naive candidate `⊗_T = ⊗_n` with `υ_T = id`.
pub fn sign_z2(smn: Smn) -> NormedSmc {
    let z2 = FiniteGroup::cyclic(2);
    let cat = FiniteCategory::groupoid_of_groups(vec!["0".into(), "1".into()], &[z2.clone(), z2]);
    let carrier = FiniteGCategory::trivial(cat, smn.group());
    sign_structure(carrier, smn)
}

fn sign_structure(carrier: FiniteGCategory, smn: Smn) -> NormedSmc {
    let c = &carrier.cat;
    let tensor = FunctorTable::from_fn(c, 2, |xs| (xs[0] + xs[1]) % 2, |fs| ((fs[0] / 2 + fs[1] / 2) % 2) * 2 + (fs[0] % 2 + fs[1] % 2) % 2);
    let id = |x: usize| 2 * x;
    let tn = |xs: &[usize]| xs.iter().sum::<usize>() % 2;
    let alpha = all_tuples(2, 3).iter().map(|v| id(tn(v))).collect();
    let lambda = vec![0, 2];
    let rho = vec![0, 2];
    let beta = all_tuples(2, 2).iter().map(|v| id((v[0] + v[1]) % 2) + v[0] * v[1]).collect();
    let norms = smn
        .exponents
        .norms
        .iter()
        .map(|spec| {
            let size = spec.exponent.size();
            let functor = FunctorTable::from_fn(c, size, tn, |fs| {
                let obj = fs.iter().map(|f| f / 2).sum::<usize>() % 2;
                obj * 2 + fs.iter().map(|f| f % 2).sum::<usize>() % 2
            });
            let upsilon = all_tuples(2, size).iter().map(|xs| id(tn(xs))).collect();
            NormTables { functor, upsilon }
        })
        .collect();
    NormedSmc { carrier, smn, unit: 0, tensor, alpha, lambda, rho, beta, norms }
}

/// Builtin carrier by name.
pub fn builtin(name: &str, smn: Smn) -> Result<NormedSmc, FincatError> {
    match name {
        "discrete-z2" => Ok(discrete_functions(smn, 2)),
        "chaotic-z2" => Ok(chaotic_z2(smn)),
        "sign-z2" => Ok(sign_z2(smn)),
        "max-poset" => Ok(max_poset(smn)),
        "max-poset-square" => max_poset_square(smn),
        other => Err(FincatError::UnknownBuiltin(other.into())),
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["discrete-z2", "chaotic-z2", "sign-z2", "max-poset", "max-poset-square"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_nsmc;
    use crate::gsets::Exponent;
    use crate::smn::ExponentSet;

    fn c2_smn(with_norm: bool) -> Smn {
        let g = FiniteGroup::cyclic(2);
        let mut ex = Vec::new();
        if with_norm {
            ex.push(("t1".to_string(), Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup())));
        }
        Smn::build(ExponentSet::new(&g, ex).unwrap())
    }

    #[test]
    fn builtin_carriers_are_categories() {
        for name in BUILTIN_NAMES {
            let d = builtin(name, c2_smn(true)).unwrap();
            d.cat().check_laws().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(d.carrier.action_errors().is_none(), "{name} action");
        }
    }

    #[test]
    fn strict_examples_validate() {
        for name in ["discrete-z2", "chaotic-z2", "max-poset", "max-poset-square"] {
            for with_norm in [false, true] {
                let r = validate_nsmc(&builtin(name, c2_smn(with_norm)).unwrap());
                assert!(r.passed(), "{name}: {r}");
            }
        }
    }

    #[test]
    fn discrete_action_is_right_multiplication() {
        let d = discrete_functions(c2_smn(false), 2);
        // f = (f(e), f(g)) = (1, 0) is index 2; g·f = (f(g), f(e)) = (0, 1) is index 1
        assert_eq!(d.carrier.ob(1, 2), 1);
        assert_eq!(d.carrier.ob(1, 3), 3, "constant functions are fixed");
    }

    #[test]
    fn sign_is_symmetric_monoidal_without_norms() {
        let r = validate_nsmc(&sign_z2(c2_smn(false)));
        assert!(r.passed(), "{r}");
        let d = sign_z2(c2_smn(false));
        assert_eq!(d.beta_at(1, 1), 1, "β_{{1,1}} is the sign -1 on the object 0");
    }
}
