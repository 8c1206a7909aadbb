//! Procedurally presented categories and their windowed materialization.
//!
//! A procedural category is given by oracles: an object enumerator, hom-set
//! enumeration, identity selection, and composition. [`materialize`] takes
//! the full subcategory on the first `window` objects and validates it; all
//! downstream algorithms only ever see the materialized window.

use super::{CategoryData, FinCategory, FincatError};
use std::collections::BTreeMap;
use std::sync::Arc;

pub trait ProceduralCategory {
    /// Oracle-private morphism payload (e.g. the underlying isotone map).
    type Mor: Clone + Ord + std::fmt::Debug;

    /// Name of the k-th object, `None` past the end of the enumeration.
    fn object_name(&self, index: usize) -> Option<String>;
    /// All morphisms `dom -> cod` in a fixed deterministic order.
    fn hom(&self, dom: usize, cod: usize) -> Vec<Self::Mor>;
    fn identity(&self, object: usize) -> Self::Mor;
    /// `g` after `f` where `f: a -> b` and `g: b -> c`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn morphism_name(&self, dom: usize, cod: usize, m: &Self::Mor) -> String;
}

/// A materialized window together with the oracle payload per morphism,
/// indexed in `MorId` order as `(dom, cod, payload)`.
#[derive(Debug, Clone)]
pub struct Materialized<M> {
    pub category: Arc<FinCategory>,
    pub morphism_data: Vec<(usize, usize, M)>,
}

/// Full subcategory on the first `window` generated objects, validated.
pub fn materialize<P: ProceduralCategory>(
    oracle: &P,
    window: usize,
) -> Result<Materialized<P::Mor>, FincatError> {
    let mut objects = Vec::with_capacity(window);
    for k in 0..window {
        match oracle.object_name(k) {
            Some(name) => objects.push(name),
            None => return Err(FincatError::WindowExceedsEnumeration { window }),
        }
    }

    let mut morphisms = Vec::new();
    let mut morphism_data = Vec::new();
    let mut lookup: BTreeMap<(usize, usize, P::Mor), String> = BTreeMap::new();
    for a in 0..window {
        for b in 0..window {
            for m in oracle.hom(a, b) {
                let name = oracle.morphism_name(a, b, &m);
                morphisms.push((name.clone(), objects[a].clone(), objects[b].clone()));
                lookup.insert((a, b, m.clone()), name);
                morphism_data.push((a, b, m));
            }
        }
    }

    let mut identities = BTreeMap::new();
    for (k, obj) in objects.iter().enumerate() {
        let id = oracle.identity(k);
        let name = lookup
            .get(&(k, k, id))
            .ok_or_else(|| {
                FincatError::OracleInconsistent(format!(
                    "identity of object `{obj}` not in hom({k},{k})"
                ))
            })?
            .clone();
        identities.insert(obj.clone(), name);
    }

    let mut compose = Vec::new();
    for (fa, fb, f) in &morphism_data {
        for (ga, gb, g) in &morphism_data {
            if ga == fb {
                let gf = oracle.compose(g, f);
                let name = lookup.get(&(*fa, *gb, gf.clone())).ok_or_else(|| {
                    FincatError::OracleInconsistent(format!(
                        "composite of {g:?} after {f:?} missing from hom({fa},{gb})"
                    ))
                })?;
                compose.push((
                    lookup[&(*ga, *gb, g.clone())].clone(),
                    lookup[&(*fa, *fb, f.clone())].clone(),
                    name.clone(),
                ));
            }
        }
    }
    compose.sort();

    let category = FinCategory::validate(&CategoryData {
        objects,
        morphisms,
        identities,
        compose,
    })
    .map_err(|e| FincatError::OracleInconsistent(e.to_string()))?;
    Ok(Materialized {
        category: Arc::new(category),
        morphism_data,
    })
}

/// The ordinal category: objects are finite ordinals (k-element chains),
/// morphisms are isotone maps, enumerated lexicographically.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrdinalCategory;

impl OrdinalCategory {
    /// All weakly increasing tuples of length `a` with values below `b`.
    pub fn isotone_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if a == 0 {
            out.push(Vec::new());
            return out;
        }
        if b == 0 {
            return out;
        }
        let mut current = Vec::with_capacity(a);
        fn rec(a: usize, b: usize, lo: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == a {
                out.push(current.clone());
                return;
            }
            for v in lo..b {
                current.push(v);
                rec(a, b, v, current, out);
                current.pop();
            }
        }
        rec(a, b, 0, &mut current, &mut out);
        out
    }
}

impl ProceduralCategory for OrdinalCategory {
    type Mor = Vec<usize>;

    fn object_name(&self, index: usize) -> Option<String> {
        Some(index.to_string())
    }

    fn hom(&self, dom: usize, cod: usize) -> Vec<Vec<usize>> {
        Self::isotone_maps(dom, cod)
    }

    fn identity(&self, object: usize) -> Vec<usize> {
        (0..object).collect()
    }

    fn compose(&self, g: &Vec<usize>, f: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&i| g[i]).collect()
    }

    fn morphism_name(&self, dom: usize, cod: usize, m: &Vec<usize>) -> String {
        let vals: Vec<String> = m.iter().map(|v| v.to_string()).collect();
        format!("{dom}to{cod}[{}]", vals.join(","))
    }
}
