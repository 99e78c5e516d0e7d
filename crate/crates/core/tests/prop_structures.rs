//! Properties of the constructions: fixed-point profiles, `Fun(TG, C)` by
//! both routes, the functor/algebra-morphism bijection, and transformation
//! verdicts.

use operadkit::fincat::builtins::{chaotic_z2, max_poset, max_poset_square, sign_z2};
use operadkit::fincat::lax::OperadMorphism;
use operadkit::fincat::{extend_lax_to_operad, validate_lax_functor, validate_monoidal_transformation, validate_nsmc, Bounds, LaxFunctor, NormedSmc};
use operadkit::free_operad::GeneratorSet;
use operadkit::funtg::{funtg_nsmc, operad_pullback_nsmc, ChoiceContext};
use operadkit::groups::{FiniteGroup, Permutation};
use operadkit::operad_zoo::lattice::orbit_exponents_of_group;
use operadkit::operad_zoo::permutativity::graph_subgroups;
use operadkit::operad_zoo::{build_pg_level, fixed_profile, has_fixed_tree};
use operadkit::smn::{standard_tensor, ExponentSet, Smn};
use proptest::prelude::*;
use proptest::sample::{select, Index};

const SMALL: Bounds = Bounds { depth: 2, arity: 3, path_len: 2 };

fn conjugate(group: &FiniteGroup, lambda: &[(usize, Permutation)], k: usize, pi: &Permutation) -> Vec<(usize, Permutation)> {
    lambda.iter().map(|(g, s)| (group.conj(k, *g), pi.compose(s).compose(&pi.inverse()))).collect()
}

fn smn_all(g: &FiniteGroup, mask: u8) -> Smn {
    let orbits: Vec<_> = orbit_exponents_of_group(g).into_iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x).collect();
    Smn::build(ExponentSet::new(g, orbits).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fixed_profiles_are_conjugation_invariant(s3 in any::<bool>(), n in 0..=3usize, l in any::<Index>(), k in any::<Index>(), p in any::<Index>()) {
        let g = if s3 { FiniteGroup::s3() } else { FiniteGroup::cyclic(2) };
        let level = build_pg_level(&g, n).unwrap();
        let subs = graph_subgroups(&g, n);
        let lambda = &subs[l.index(subs.len())];
        let all = Permutation::all(n);
        let (k, pi) = (k.index(g.order()), &all[p.index(all.len())]);
        let conj = conjugate(&g, lambda, k, pi);
        prop_assert_eq!(fixed_profile(&level, lambda), fixed_profile(&level, &conj), "P_G level");
        let gens: &GeneratorSet = &smn_all(&g, u8::MAX).gens;
        prop_assert_eq!(has_fixed_tree(gens, lambda, n), has_fixed_tree(gens, &conj, n), "free operad level");
    }

    #[test]
    fn valid_thin_functors_extend_and_round_trip(square in any::<bool>(), norm in any::<bool>(), obs in prop::collection::vec(0..4usize, 4)) {
        let g = FiniteGroup::cyclic(2);
        let smn = smn_all(&g, u8::from(norm));
        let c = if square { max_poset_square(smn).unwrap() } else { max_poset(smn) };
        let f = LaxFunctor::thin(&c, &c, |x| obs[x] % c.nob());
        prop_assume!(validate_lax_functor(&c, &c, &f).passed());
        let (m, report) = extend_lax_to_operad(&c, &c, &f, SMALL);
        prop_assert!(report.passed(), "{}", report);
        prop_assert_eq!(&m.evaluate_at_generators(), &f, "evaluation at generators");
        for n in 0..=3 {
            for xs in operadkit::fincat::all_tuples(c.nob(), n) {
                prop_assert_eq!(OperadMorphism::new(&c, &c, &f).component(&standard_tensor(n), &xs), f.tensor_n(&c, &c, &xs), "F_⊗{} at {:?}", n, xs);
            }
        }
    }

    #[test]
    fn transformation_verdicts_agree(base in select(vec!["sign", "chaotic"]), omega in prop::collection::vec(any::<Index>(), 2)) {
        let g = FiniteGroup::cyclic(2);
        let c = if base == "sign" { sign_z2(smn_all(&g, 0)) } else { chaotic_z2(smn_all(&g, 1)) };
        let f = LaxFunctor::identity(&c);
        let omega: Vec<usize> = omega.iter().enumerate().map(|(x, i)| {
            let hom = c.cat().hom(x, x);
            hom[i.index(hom.len())]
        }).collect();
        let v = validate_monoidal_transformation(&c, &c, &f, &f, &omega, SMALL);
        prop_assert_eq!(v.monoidal, v.operadic, "{}", v.report);
    }
}

/// The configuration space is small enough to cover exhaustively.
#[test]
fn funtg_is_normed_by_both_routes() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        for base in 0..3 {
            for mask in 0..4u8 {
                let empty = Smn::build(ExponentSet::empty(&g));
                let b: NormedSmc = match base {
                    0 => chaotic_z2(empty),
                    1 => max_poset(empty),
                    _ => sign_z2(empty),
                };
                let smn = smn_all(&g, mask);
                let direct = funtg_nsmc(&b, &smn, &ChoiceContext::canonical(&g)).unwrap().1;
                let r = validate_nsmc(&direct);
                assert!(r.passed(), "direct formulas, |G| = {}, base {base}, orbits {mask:b}: {r}", g.order());
                let pulled = operad_pullback_nsmc(&b, &smn).unwrap().1;
                let r = validate_nsmc(&pulled);
                assert!(r.passed(), "operad route, |G| = {}, base {base}, orbits {mask:b}: {r}", g.order());
            }
        }
    }
}
