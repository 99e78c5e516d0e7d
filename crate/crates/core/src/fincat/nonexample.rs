//! G-objects with the trivial action do not carry norms in general.
//!
//! The carrier is the sign groupoid (objects Z/2, automorphisms ±1, with
//! `β_{1,1} = -1`) with trivial C2-action: the smallest symmetric monoidal
//! fragment of C2-sets in which the swap of `* ⊔ *` is visible. Every
//! functor `C × C -> C` is enumerated as a candidate `C2/e`-norm; those that
//! are Γ-equivariant and admit a natural isomorphism to ⊗ are paired with
//! every such untwistor, and each pair must fail twisted equivariance.

use crate::groups::FiniteGroup;
use crate::gsets::Exponent;
use crate::report::{Check, Report};
use crate::smn::{ExponentSet, Smn};

use super::builtins::sign_z2;
use super::category::{all_tuples, FunctorTable};
use super::nsmc::{validate_nsmc, validate_norm, NormTables, NormedSmc};

/// Counts from the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSearch {
    /// Functors `C × C -> C`.
    pub functors: usize,
    /// Functors fixed by the graph subgroup of C2/e.
    pub equivariant: usize,
    /// Equivariant functors with some natural isomorphism to ⊗.
    pub untwistable: usize,
    /// (norm, untwistor) pairs examined for twisted equivariance.
    pub pairs: usize,
    /// Pairs satisfying twisted equivariance.
    pub twisted: usize,
    /// First twisted-equivariance counterexample.
    pub witness: Option<String>,
}

/// C2 with the single exponent `C2/e`.
pub fn c2_free_orbit_smn() -> Smn {
    let g = FiniteGroup::cyclic(2);
    let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
    Smn::build(ExponentSet::new(&g, vec![("free".into(), t)]).expect("exponent over C2"))
}

/// Every functor `sign × sign -> sign`: an object map on the four pairs and,
/// at each pair, a homomorphism `Z/2 × Z/2 -> Z/2` given by its values
/// `(u, v)` on the two generators. Morphism `2a + s` is `(-1)^s` on `a`.
fn all_binary_functors() -> Vec<FunctorTable> {
    let mut out = Vec::new();
    for obj in all_tuples(2, 4) {
        for homs in all_tuples(4, 4) {
            let ob = obj.clone();
            let mor = all_tuples(4, 2)
                .iter()
                .map(|fs| {
                    let pair = 2 * (fs[0] / 2) + fs[1] / 2;
                    let (u, v) = (homs[pair] / 2, homs[pair] % 2);
                    2 * obj[pair] + (u * (fs[0] % 2) + v * (fs[1] % 2)) % 2
                })
                .collect();
            out.push(FunctorTable { arity: 2, ob, mor });
        }
    }
    out
}

fn with_norm(base: &NormedSmc, functor: FunctorTable, upsilon: Vec<usize>) -> NormedSmc {
    NormedSmc { norms: vec![NormTables { functor, upsilon }], ..base.clone() }
}

/// Exhaustive search over candidate norms and untwistors on the sign groupoid.
pub fn search_sign_norms() -> NormSearch {
    let base = sign_z2(c2_free_orbit_smn());
    let c = base.cat();
    let mut search = NormSearch { functors: 0, equivariant: 0, untwistable: 0, pairs: 0, twisted: 0, witness: None };
    for functor in all_binary_functors() {
        if functor.functor_errors(c).is_some() {
            continue;
        }
        search.functors += 1;
        // the untwistor slot is filled with identities only to reach the
        // equivariance check; it is replaced below
        let probe = with_norm(&base, functor.clone(), vec![0; 4]);
        let r = validate_norm(&probe, 0, "free");
        if !r.check("norm-equivariant[free]").is_some_and(|ch| ch.passed) {
            continue;
        }
        search.equivariant += 1;
        // components live in Aut(x ⊕ y) = {±1}; a natural iso needs the
        // source object there as well
        let targets: Vec<usize> = all_tuples(2, 2).iter().map(|v| (v[0] + v[1]) % 2).collect();
        let mut any = false;
        for signs in all_tuples(2, 4) {
            let upsilon: Vec<usize> = targets.iter().zip(&signs).map(|(&x, &s)| 2 * x + s).collect();
            let cand = with_norm(&base, functor.clone(), upsilon);
            let r = validate_norm(&cand, 0, "free");
            if !r.check("untwistor-natural-iso[free]").is_some_and(|ch| ch.passed) {
                continue;
            }
            any = true;
            search.pairs += 1;
            let tw = r.check("twisted-equivariance[free]").expect("reached after the untwistor check");
            if tw.passed {
                search.twisted += 1;
            } else if search.witness.is_none() {
                search.witness = Some(tw.detail.clone());
            }
        }
        search.untwistable += usize::from(any);
    }
    search
}

/// The obstruction as a report: the base is symmetric monoidal, the swap
/// coherence on two factors is β, `β_{1,1} ≠ id`, and no candidate norm
/// survives.
pub fn trivial_action_obstruction() -> Report {
    let mut report = Report::new("trivial-action G-objects admit no free-orbit norm", "all functors sign x sign -> sign, all untwistors");
    let plain = sign_z2(Smn::build(ExponentSet::empty(&FiniteGroup::cyclic(2))));
    let mut base = Check::new("base-symmetric-monoidal");
    let r = validate_nsmc(&plain);
    base.test(r.passed(), || format!("sign groupoid fails {}", r.first_failure().map(|c| c.id.as_str()).unwrap_or("?")));
    report.push(base);

    let mut swap = Check::new("swap-coherence-is-braiding");
    let tau = crate::groups::Permutation::transposition(2, 0, 1);
    for v in all_tuples(2, 2) {
        swap.test(plain.permutation_coherence(&v, &tau) == plain.beta_at(v[0], v[1]), || format!("at {v:?}"));
    }
    report.push(swap);

    let mut nontrivial = Check::new("braiding-nontrivial");
    let c = plain.cat();
    nontrivial.test(!c.is_identity(plain.beta_at(1, 1)), || "β_{1,1} is the identity".into());
    report.push(nontrivial);

    let s = search_sign_norms();
    let mut enumerated = Check::new("candidates-enumerated");
    enumerated.instances = s.functors;
    report.push(enumerated.with_note(format!("functors={} equivariant={} untwistable={} pairs={}", s.functors, s.equivariant, s.untwistable, s.pairs)));

    let mut obstruction = Check::new("twisted-equivariance-fails");
    obstruction.instances = s.pairs;
    if s.pairs == 0 {
        obstruction.fail("no candidate pair reached the twisted-equivariance check");
    } else if s.twisted > 0 {
        obstruction.fail(format!("{} candidate pairs satisfy twisted equivariance", s.twisted));
    }
    report.push(obstruction.with_note(s.witness.unwrap_or_default()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_counts() {
        let s = search_sign_norms();
        // object maps 2^4, homomorphisms 4 per object pair
        assert_eq!(s.functors, 4096, "every candidate table is a functor");
        // symmetric object map (8) with u = v on the diagonal and mirrored
        // choices off it (2 * 2 * 4)
        assert_eq!(s.equivariant, 128);
        // only ⊕ on objects with F(f, g) = f ⊗ g on morphisms; any signs
        assert_eq!(s.untwistable, 1);
        assert_eq!(s.pairs, 16);
        assert_eq!(s.twisted, 0, "no candidate satisfies twisted equivariance");
        assert!(s.witness.as_deref().is_some_and(|w| w.contains("(1, 1)")), "the obstruction sits at (1, 1): {:?}", s.witness);
    }

    #[test]
    fn obstruction_report_passes() {
        let r = trivial_action_obstruction();
        assert!(r.passed(), "{r}");
    }
}
