//! Finitely presented categories with total composition tables.
//!
//! A [`FinCategory`] stores objects and morphisms by name, an identity per
//! object, and a composition table defined exactly on the composable pairs.
//! Validation checks identity laws and associativity exhaustively up to a
//! size threshold (deterministically sampled above it). All downstream
//! structures hold categories behind `Arc` and never mutate them.

mod comma;
mod equiv;
mod functor;
mod procedural;

pub use comma::{comma_category, CommaCategory, CommaObject};
pub use equiv::{equivalent_categories, iso_classes, isomorphic_categories, skeleton};
pub use functor::{Functor, NatTransformation};
pub use procedural::{materialize, Materialized, OrdinalCategory, ProceduralCategory};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Index of an object inside its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub usize);

/// Index of a morphism inside its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// Raw category description, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    /// (name, dom, cod)
    pub morphisms: Vec<(String, String, String)>,
    /// object name -> identity morphism name
    pub identities: BTreeMap<String, String>,
    /// (g, f, g o f) for every composable pair
    pub compose: Vec<(String, String, String)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FincatError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("missing identity for object `{0}`")]
    MissingIdentity(String),
    #[error("identity `{morphism}` of object `{object}` has wrong endpoints")]
    BadIdentity { object: String, morphism: String },
    #[error("missing composite for `{g}` after `{f}`")]
    MissingComposite { g: String, f: String },
    #[error("composite declared for non-composable pair `{g}` after `{f}`")]
    SpuriousComposite { g: String, f: String },
    #[error("composite `{gf}` of `{g}` after `{f}` has wrong endpoints")]
    CompositeMismatch { g: String, f: String, gf: String },
    #[error("composite for `{g}` after `{f}` declared twice")]
    DuplicateComposite { g: String, f: String },
    #[error("identity law fails at `{morphism}`")]
    IdentityLawViolation { morphism: String },
    #[error("associativity fails on `{h}` after `{g}` after `{f}`")]
    NonAssociative { h: String, g: String, f: String },
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidNatTransformation(String),
    #[error("oracle inconsistent on window: {0}")]
    OracleInconsistent(String),
    #[error("window {window} exceeds the object enumeration")]
    WindowExceedsEnumeration { window: usize },
    #[error("search exceeded {limit} nodes")]
    SearchExceeded { limit: u64 },
    #[error("{0}")]
    Mismatch(String),
}

/// Above this many morphisms, associativity is checked on a deterministic
/// pseudo-random sample of triples instead of exhaustively.
pub const ASSOC_EXHAUSTIVE_MAX: usize = 200;
const ASSOC_SAMPLE: usize = 20_000;

/// A validated finitely presented category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    compose: BTreeMap<(MorId, MorId), MorId>,
    obj_index: BTreeMap<String, ObjId>,
    mor_index: BTreeMap<String, MorId>,
    homs: Vec<Vec<MorId>>,
    by_dom: Vec<Vec<MorId>>,
}

impl FinCategory {
    /// Validates a raw description and builds the category.
    pub fn validate(data: &CategoryData) -> Result<Self, FincatError> {
        let mut obj_index = BTreeMap::new();
        for (i, name) in data.objects.iter().enumerate() {
            if obj_index.insert(name.clone(), ObjId(i)).is_some() {
                return Err(FincatError::DuplicateName(name.clone()));
            }
        }
        let mut mor_index = BTreeMap::new();
        let mut morphisms = Vec::with_capacity(data.morphisms.len());
        for (i, (name, dom, cod)) in data.morphisms.iter().enumerate() {
            let dom = *obj_index
                .get(dom)
                .ok_or_else(|| FincatError::UnknownObject(dom.clone()))?;
            let cod = *obj_index
                .get(cod)
                .ok_or_else(|| FincatError::UnknownObject(cod.clone()))?;
            if mor_index.insert(name.clone(), MorId(i)).is_some() {
                return Err(FincatError::DuplicateName(name.clone()));
            }
            morphisms.push(Morphism {
                name: name.clone(),
                dom,
                cod,
            });
        }

        let mut identities = Vec::with_capacity(data.objects.len());
        for (i, obj) in data.objects.iter().enumerate() {
            let id_name = data
                .identities
                .get(obj)
                .ok_or_else(|| FincatError::MissingIdentity(obj.clone()))?;
            let id = *mor_index
                .get(id_name)
                .ok_or_else(|| FincatError::UnknownMorphism(id_name.clone()))?;
            let m = &morphisms[id.0];
            if m.dom != ObjId(i) || m.cod != ObjId(i) {
                return Err(FincatError::BadIdentity {
                    object: obj.clone(),
                    morphism: id_name.clone(),
                });
            }
            identities.push(id);
        }

        let mut compose = BTreeMap::new();
        for (g_name, f_name, gf_name) in &data.compose {
            let g = *mor_index
                .get(g_name)
                .ok_or_else(|| FincatError::UnknownMorphism(g_name.clone()))?;
            let f = *mor_index
                .get(f_name)
                .ok_or_else(|| FincatError::UnknownMorphism(f_name.clone()))?;
            let gf = *mor_index
                .get(gf_name)
                .ok_or_else(|| FincatError::UnknownMorphism(gf_name.clone()))?;
            if morphisms[f.0].cod != morphisms[g.0].dom {
                return Err(FincatError::SpuriousComposite {
                    g: g_name.clone(),
                    f: f_name.clone(),
                });
            }
            if morphisms[gf.0].dom != morphisms[f.0].dom || morphisms[gf.0].cod != morphisms[g.0].cod
            {
                return Err(FincatError::CompositeMismatch {
                    g: g_name.clone(),
                    f: f_name.clone(),
                    gf: gf_name.clone(),
                });
            }
            if compose.insert((g, f), gf).is_some() {
                return Err(FincatError::DuplicateComposite {
                    g: g_name.clone(),
                    f: f_name.clone(),
                });
            }
        }

        let n_obj = data.objects.len();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        let mut by_dom = vec![Vec::new(); n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
            by_dom[m.dom.0].push(MorId(i));
        }

        let cat = FinCategory {
            objects: data.objects.clone(),
            morphisms,
            identities,
            compose,
            obj_index,
            mor_index,
            homs,
            by_dom,
        };
        cat.check_totality()?;
        cat.check_identity_laws()?;
        cat.check_associativity()?;
        Ok(cat)
    }

    fn check_totality(&self) -> Result<(), FincatError> {
        for (fi, f) in self.morphisms.iter().enumerate() {
            for &g in &self.by_dom[f.cod.0] {
                if !self.compose.contains_key(&(g, MorId(fi))) {
                    return Err(FincatError::MissingComposite {
                        g: self.morphisms[g.0].name.clone(),
                        f: f.name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_identity_laws(&self) -> Result<(), FincatError> {
        for (fi, f) in self.morphisms.iter().enumerate() {
            let f_id = MorId(fi);
            let left = self.compose.get(&(self.identities[f.cod.0], f_id));
            let right = self.compose.get(&(f_id, self.identities[f.dom.0]));
            if left != Some(&f_id) || right != Some(&f_id) {
                return Err(FincatError::IdentityLawViolation {
                    morphism: f.name.clone(),
                });
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), FincatError> {
        let check = |f: MorId, g: MorId, h: MorId| -> Result<(), FincatError> {
            let gf = self.compose[&(g, f)];
            let hg = self.compose[&(h, g)];
            if self.compose[&(h, gf)] != self.compose[&(hg, f)] {
                return Err(FincatError::NonAssociative {
                    h: self.morphisms[h.0].name.clone(),
                    g: self.morphisms[g.0].name.clone(),
                    f: self.morphisms[f.0].name.clone(),
                });
            }
            Ok(())
        };
        if self.morphisms.len() <= ASSOC_EXHAUSTIVE_MAX {
            for fi in 0..self.morphisms.len() {
                let f = MorId(fi);
                for &g in &self.by_dom[self.cod(f).0] {
                    for &h in &self.by_dom[self.cod(g).0] {
                        check(f, g, h)?;
                    }
                }
            }
        } else {
            let mut state: u64 = 0x853c_49e6_748f_ea9b;
            let mut sampled = 0usize;
            while sampled < ASSOC_SAMPLE {
                let f = MorId((splitmix64(&mut state) as usize) % self.morphisms.len());
                let gs = &self.by_dom[self.cod(f).0];
                if gs.is_empty() {
                    continue;
                }
                let g = gs[(splitmix64(&mut state) as usize) % gs.len()];
                let hs = &self.by_dom[self.cod(g).0];
                if hs.is_empty() {
                    continue;
                }
                let h = hs[(splitmix64(&mut state) as usize) % hs.len()];
                check(f, g, h)?;
                sampled += 1;
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].cod
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.dom(m).0] == m
    }

    /// `g` after `f`, if composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn morphisms_from(&self, a: ObjId) -> &[MorId] {
        &self.by_dom[a.0]
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(m), self.cod(m));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&w| {
                self.compose(w, m) == Some(self.identity(a))
                    && self.compose(m, w) == Some(self.identity(b))
            })
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    /// Exports back to the raw description (normal form: original orders).
    pub fn to_data(&self) -> CategoryData {
        let mut compose: Vec<(String, String, String)> = self
            .compose
            .iter()
            .map(|(&(g, f), &gf)| {
                (
                    self.morphism_name(g).to_string(),
                    self.morphism_name(f).to_string(),
                    self.morphism_name(gf).to_string(),
                )
            })
            .collect();
        compose.sort();
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| {
                    (
                        m.name.clone(),
                        self.object_name(m.dom).to_string(),
                        self.object_name(m.cod).to_string(),
                    )
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| (o.clone(), self.morphism_name(self.identities[i]).to_string()))
                .collect(),
            compose,
        }
    }

    /// Swaps domains and codomains and transposes the composition table.
    pub fn opposite(&self) -> FinCategory {
        let mut data = self.to_data();
        data.morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                (
                    m.name.clone(),
                    self.object_name(m.cod).to_string(),
                    self.object_name(m.dom).to_string(),
                )
            })
            .collect();
        data.compose = self
            .compose
            .iter()
            .map(|(&(g, f), &gf)| {
                (
                    self.morphism_name(f).to_string(),
                    self.morphism_name(g).to_string(),
                    self.morphism_name(gf).to_string(),
                )
            })
            .collect();
        data.compose.sort();
        FinCategory::validate(&data).expect("opposite of a valid category is valid")
    }
}

/// Splitmix64 step; used only for deterministic associativity sampling.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Full subcategory on the given objects (names preserved, orders preserved).
/// Returns the subcategory and its inclusion functor.
pub fn full_subcategory(
    cat: &Arc<FinCategory>,
    keep: &[ObjId],
) -> (Arc<FinCategory>, Functor) {
    let keep_set: Vec<bool> = {
        let mut v = vec![false; cat.n_objects()];
        for &o in keep {
            v[o.0] = true;
        }
        v
    };
    let objects: Vec<String> = keep
        .iter()
        .map(|&o| cat.object_name(o).to_string())
        .collect();
    let kept_mors: Vec<MorId> = cat
        .morphisms()
        .filter(|&m| keep_set[cat.dom(m).0] && keep_set[cat.cod(m).0])
        .collect();
    let morphisms = kept_mors
        .iter()
        .map(|&m| {
            (
                cat.morphism_name(m).to_string(),
                cat.object_name(cat.dom(m)).to_string(),
                cat.object_name(cat.cod(m)).to_string(),
            )
        })
        .collect();
    let identities = keep
        .iter()
        .map(|&o| {
            (
                cat.object_name(o).to_string(),
                cat.morphism_name(cat.identity(o)).to_string(),
            )
        })
        .collect();
    let mut compose = Vec::new();
    for &f in &kept_mors {
        for &g in &kept_mors {
            if cat.cod(f) == cat.dom(g) {
                let gf = cat.compose(g, f).expect("total table");
                compose.push((
                    cat.morphism_name(g).to_string(),
                    cat.morphism_name(f).to_string(),
                    cat.morphism_name(gf).to_string(),
                ));
            }
        }
    }
    compose.sort();
    let sub = Arc::new(
        FinCategory::validate(&CategoryData {
            objects,
            morphisms,
            identities,
            compose,
        })
        .expect("full subcategory of a valid category is valid"),
    );
    let obj_map = keep.to_vec();
    let mor_map = kept_mors;
    let inclusion = Functor::new(Arc::clone(&sub), Arc::clone(cat), obj_map, mor_map)
        .expect("inclusion is a functor");
    (sub, inclusion)
}

/// The one-object, one-morphism category.
pub fn terminal_category() -> Arc<FinCategory> {
    let data = CategoryData {
        objects: vec!["*".into()],
        morphisms: vec![("id".into(), "*".into(), "*".into())],
        identities: [("*".to_string(), "id".to_string())].into_iter().collect(),
        compose: vec![("id".into(), "id".into(), "id".into())],
    };
    Arc::new(FinCategory::validate(&data).expect("terminal category"))
}

/// Discrete category on the given object names.
pub fn discrete_category(names: &[&str]) -> Arc<FinCategory> {
    let data = CategoryData {
        objects: names.iter().map(|s| s.to_string()).collect(),
        morphisms: names
            .iter()
            .map(|s| (format!("id_{s}"), s.to_string(), s.to_string()))
            .collect(),
        identities: names
            .iter()
            .map(|s| (s.to_string(), format!("id_{s}")))
            .collect(),
        compose: names
            .iter()
            .map(|s| (format!("id_{s}"), format!("id_{s}"), format!("id_{s}")))
            .collect(),
    };
    Arc::new(FinCategory::validate(&data).expect("discrete category"))
}

/// The category `0 -> 1` with a single non-identity arrow.
pub fn walking_arrow() -> Arc<FinCategory> {
    let data = CategoryData {
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![
            ("id0".into(), "0".into(), "0".into()),
            ("id1".into(), "1".into(), "1".into()),
            ("a".into(), "0".into(), "1".into()),
        ],
        identities: [("0", "id0"), ("1", "id1")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        compose: vec![
            ("id0".into(), "id0".into(), "id0".into()),
            ("id1".into(), "id1".into(), "id1".into()),
            ("a".into(), "id0".into(), "a".into()),
            ("id1".into(), "a".into(), "a".into()),
        ],
    };
    Arc::new(FinCategory::validate(&data).expect("walking arrow"))
}

/// One-object category from a monoid multiplication table.
/// `table[i][j]` is the index of element `i * j`; element 0 must be the unit.
pub fn monoid_category(names: &[&str], table: &[Vec<usize>]) -> Result<Arc<FinCategory>, FincatError> {
    let data = CategoryData {
        objects: vec!["*".into()],
        morphisms: names
            .iter()
            .map(|s| (s.to_string(), "*".into(), "*".into()))
            .collect(),
        identities: [("*".to_string(), names[0].to_string())].into_iter().collect(),
        compose: (0..names.len())
            .flat_map(|i| {
                (0..names.len())
                    .map(move |j| (i, j))
            })
            .map(|(i, j)| {
                (
                    names[i].to_string(),
                    names[j].to_string(),
                    names[table[i][j]].to_string(),
                )
            })
            .collect(),
    };
    Ok(Arc::new(FinCategory::validate(&data)?))
}
