//! JSON file format for finite G-categories and normed structures.
//!
//! Groups and exponents are embedded in their text formats; morphism tuples
//! and object tuples are flattened big-endian, as in [`FunctorTable`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::groups::FiniteGroup;
use crate::gsets::Exponent;
use crate::smn::{ExponentSet, Smn};

use super::category::{FiniteCategory, FiniteGCategory, FunctorTable, Morphism};
use super::nsmc::{NormTables, NormedSmc};
use super::FincatError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    /// The group in its text format.
    pub group: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: Vec<usize>,
    /// Triples `[f, g, f∘g]` for every composable pair.
    pub composition: Vec<[usize; 3]>,
    pub act_objects: Vec<Vec<usize>>,
    pub act_morphisms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormFile {
    pub id: String,
    /// The exponent in its text format.
    pub exponent: String,
    pub functor: FunctorTable,
    pub upsilon: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsmcFile {
    pub category: CategoryFile,
    pub unit: usize,
    pub tensor: FunctorTable,
    pub alpha: Vec<usize>,
    pub lambda: Vec<usize>,
    pub rho: Vec<usize>,
    pub beta: Vec<usize>,
    pub norms: Vec<NormFile>,
}

impl CategoryFile {
    pub fn from_gcat(gc: &FiniteGCategory) -> Self {
        let c = &gc.cat;
        CategoryFile {
            group: gc.group.to_text(),
            objects: c.objects.clone(),
            morphisms: c.morphisms.iter().map(|m| MorphismEntry { name: m.name.clone(), dom: m.dom, cod: m.cod }).collect(),
            identities: c.identities.clone(),
            composition: c.composable_pairs().into_iter().map(|(f, g)| [f, g, c.comp(f, g)]).collect(),
            act_objects: gc.act_ob.clone(),
            act_morphisms: gc.act_mor.clone(),
        }
    }

    pub fn to_gcat(&self) -> Result<FiniteGCategory, FincatError> {
        let group = FiniteGroup::parse(&self.group).map_err(|e| FincatError::Parse(e.to_string()))?;
        let morphisms = self.morphisms.iter().map(|m| Morphism { name: m.name.clone(), dom: m.dom, cod: m.cod }).collect();
        let composition: HashMap<(usize, usize), usize> = self.composition.iter().map(|t| ((t[0], t[1]), t[2])).collect();
        let cat = FiniteCategory::new(self.objects.clone(), morphisms, self.identities.clone(), composition)?;
        let shaped = |rows: &Vec<Vec<usize>>, width: usize| rows.len() == group.order() && rows.iter().all(|r| r.len() == width && r.iter().all(|&x| x < width));
        if !shaped(&self.act_objects, cat.object_count()) || !shaped(&self.act_morphisms, cat.morphism_count()) {
            return Err(FincatError::Parse("action tables must have one row per group element over the objects or morphisms".into()));
        }
        let gc = FiniteGCategory { cat, group, act_ob: self.act_objects.clone(), act_mor: self.act_morphisms.clone() };
        if let Some(err) = gc.action_errors() {
            return Err(FincatError::Invalid(err));
        }
        Ok(gc)
    }
}

impl NsmcFile {
    pub fn from_nsmc(d: &NormedSmc) -> Self {
        NsmcFile {
            category: CategoryFile::from_gcat(&d.carrier),
            unit: d.unit,
            tensor: d.tensor.clone(),
            alpha: d.alpha.clone(),
            lambda: d.lambda.clone(),
            rho: d.rho.clone(),
            beta: d.beta.clone(),
            norms: d
                .smn
                .exponents
                .norms
                .iter()
                .zip(&d.norms)
                .map(|(spec, t)| NormFile { id: spec.id.clone(), exponent: spec.exponent.to_text(), functor: t.functor.clone(), upsilon: t.upsilon.clone() })
                .collect(),
        }
    }

    /// Rebuilds the structure; table shapes are checked, axioms are left to
    /// the validator.
    pub fn to_nsmc(&self) -> Result<NormedSmc, FincatError> {
        let carrier = self.category.to_gcat()?;
        let group = carrier.group.clone();
        let (no, nm) = (carrier.cat.object_count(), carrier.cat.morphism_count());
        let mut exps = Vec::new();
        for n in &self.norms {
            let t = Exponent::parse(&group, &n.exponent).map_err(|e| FincatError::Parse(format!("exponent {}: {e}", n.id)))?;
            exps.push((n.id.clone(), t));
        }
        let smn = Smn::build(ExponentSet::new(&group, exps).map_err(|e| FincatError::Parse(e.to_string()))?);
        let table_ok = |t: &FunctorTable, arity: usize| {
            t.arity == arity && t.ob.len() == no.pow(arity as u32) && t.mor.len() == nm.pow(arity as u32) && t.ob.iter().all(|&x| x < no) && t.mor.iter().all(|&f| f < nm)
        };
        let comps_ok = |v: &Vec<usize>, arity: usize| v.len() == no.pow(arity as u32) && v.iter().all(|&f| f < nm);
        if self.unit >= no || !table_ok(&self.tensor, 2) {
            return Err(FincatError::Parse("unit or tensor table has the wrong shape".into()));
        }
        for (name, v, a) in [("alpha", &self.alpha, 3), ("lambda", &self.lambda, 1), ("rho", &self.rho, 1), ("beta", &self.beta, 2)] {
            if !comps_ok(v, a) {
                return Err(FincatError::Parse(format!("{name} needs {} components", no.pow(a as u32))));
            }
        }
        let mut norms = Vec::new();
        for (n, spec) in self.norms.iter().zip(&smn.exponents.norms) {
            let size = spec.exponent.size();
            if !table_ok(&n.functor, size) || !comps_ok(&n.upsilon, size) {
                return Err(FincatError::Parse(format!("norm {} has tables of the wrong shape", n.id)));
            }
            norms.push(NormTables { functor: n.functor.clone(), upsilon: n.upsilon.clone() });
        }
        Ok(NormedSmc {
            carrier,
            smn,
            unit: self.unit,
            tensor: self.tensor.clone(),
            alpha: self.alpha.clone(),
            lambda: self.lambda.clone(),
            rho: self.rho.clone(),
            beta: self.beta.clone(),
            norms,
        })
    }
}

pub fn nsmc_to_json(d: &NormedSmc) -> String {
    serde_json::to_string_pretty(&NsmcFile::from_nsmc(d)).expect("serializable")
}

pub fn nsmc_from_json(text: &str) -> Result<NormedSmc, FincatError> {
    let file: NsmcFile = serde_json::from_str(text).map_err(|e| FincatError::Parse(e.to_string()))?;
    file.to_nsmc()
}

pub fn gcat_to_json(gc: &FiniteGCategory) -> String {
    serde_json::to_string_pretty(&CategoryFile::from_gcat(gc)).expect("serializable")
}

pub fn gcat_from_json(text: &str) -> Result<FiniteGCategory, FincatError> {
    let file: CategoryFile = serde_json::from_str(text).map_err(|e| FincatError::Parse(e.to_string()))?;
    file.to_gcat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::builtins::{chaotic_z2, sign_z2};

    #[test]
    fn json_roundtrip() {
        let g = FiniteGroup::cyclic(2);
        let t = Exponent::coset_space(&g, &g.whole(), &g.trivial_subgroup());
        let smn = Smn::build(ExponentSet::new(&g, vec![("t1".into(), t)]).unwrap());
        for d in [chaotic_z2(smn.clone()), sign_z2(smn)] {
            let back = nsmc_from_json(&nsmc_to_json(&d)).unwrap();
            assert_eq!(back, d, "JSON roundtrip must be exact");
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(nsmc_from_json("{"), Err(FincatError::Parse(_))));
        let g = FiniteGroup::cyclic(2);
        let d = chaotic_z2(Smn::build(ExponentSet::empty(&g)));
        let mut file = NsmcFile::from_nsmc(&d);
        file.alpha.pop();
        assert!(matches!(file.to_nsmc(), Err(FincatError::Parse(m)) if m.contains("alpha")));
    }
}
