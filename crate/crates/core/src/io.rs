//! File formats: categories, presheaves, maps, classes, functors, and
//! factorization certificates as JSON documents.
//!
//! Maps embed their source and target presheaves, and certificates embed
//! every stage object, so a written artifact can be re-verified with no
//! access to the producing run's in-memory state. Bases are interned on
//! load so that equal categories share one allocation.

use crate::fincat::{
    materialize, CategoryData, FinCategory, FincatError, Functor, NatTransformation,
    OrdinalCategory,
};
use crate::presheaf::{FormalColimitPresheaf, PresheafError, PresheafMap, TabularPresheaf};
use crate::soa::{FactorizationCertificate, SoaStage, SoaStatus, Triple};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown builtin category `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown element `{element}` at object `{object}`")]
    UnknownElement { object: String, element: String },
    #[error("missing action for morphism `{0}`")]
    MissingAction(String),
    #[error("maps in one file must share a base")]
    BaseMismatch,
    #[error("bad status value `{0}`")]
    BadStatus(String),
    #[error(transparent)]
    Category(#[from] FincatError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<(String, String, String)>,
}

/// A category reference: a named builtin with a window, or inline data.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CategoryRef {
    Builtin { builtin: String, window: usize },
    Inline(CategoryFile),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresheafFile {
    pub base: CategoryRef,
    /// object name -> element names
    pub sets: BTreeMap<String, Vec<String>>,
    /// morphism name -> (element of the codomain set -> element of the
    /// domain set); identity actions may be omitted
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub source: PresheafFile,
    pub target: PresheafFile,
    /// object name -> (source element -> target element)
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassFile {
    pub generators: Vec<MapFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctorFile {
    pub source: CategoryRef,
    pub target: CategoryRef,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NatFile {
    pub source: FunctorFile,
    pub target: FunctorFile,
    /// object name -> morphism name of the target category
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormalFile {
    pub base: CategoryRef,
    pub shape: CategoryFile,
    /// shape object -> base object
    pub labels: BTreeMap<String, String>,
    /// shape morphism -> base morphism; identities may be omitted
    #[serde(default)]
    pub morphism_labels: BTreeMap<String, String>,
    /// evaluation window; defaults to the full materialized window
    #[serde(default)]
    pub window: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleFile {
    pub generator: usize,
    pub attach: MapFile,
    pub anchor: MapFile,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StageFile {
    pub triples: Vec<TripleFile>,
    pub result: PresheafFile,
    /// the generator bundle out of the attachment coproduct
    pub bundle: MapFile,
    pub stage_map: MapFile,
    pub cocone_leg: MapFile,
    pub residual: MapFile,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateFile {
    pub original: MapFile,
    pub stages: Vec<StageFile>,
    pub composite: MapFile,
    pub residual: MapFile,
    /// `"fixpoint"` or `"budget_exhausted:<k>"`
    pub status: String,
}

/// Interns loaded bases so equal categories share one `Arc`.
#[derive(Debug, Default)]
pub struct Loader {
    bases: Vec<Arc<FinCategory>>,
}

impl Loader {
    pub fn new() -> Loader {
        Loader::default()
    }

    pub fn intern(&mut self, cat: FinCategory) -> Arc<FinCategory> {
        for known in &self.bases {
            if **known == cat {
                return Arc::clone(known);
            }
        }
        let arc = Arc::new(cat);
        self.bases.push(Arc::clone(&arc));
        arc
    }

    pub fn intern_arc(&mut self, cat: Arc<FinCategory>) -> Arc<FinCategory> {
        for known in &self.bases {
            if **known == *cat {
                return Arc::clone(known);
            }
        }
        self.bases.push(Arc::clone(&cat));
        cat
    }

    pub fn category(&mut self, r: &CategoryRef) -> Result<Arc<FinCategory>, IoError> {
        match r {
            CategoryRef::Builtin { builtin, window } => {
                if builtin != "ordinals" {
                    return Err(IoError::UnknownBuiltin(builtin.clone()));
                }
                let m = materialize(&OrdinalCategory, *window)?;
                Ok(self.intern_arc(m.category))
            }
            CategoryRef::Inline(file) => {
                let cat = FinCategory::validate(&category_data(file))?;
                Ok(self.intern(cat))
            }
        }
    }

    pub fn presheaf(&mut self, file: &PresheafFile) -> Result<TabularPresheaf, IoError> {
        let base = self.category(&file.base)?;
        let mut sets: Vec<Vec<String>> = Vec::with_capacity(base.n_objects());
        for a in base.objects() {
            sets.push(
                file.sets
                    .get(base.object_name(a))
                    .cloned()
                    .unwrap_or_default(),
            );
        }
        let elem_index: Vec<BTreeMap<&String, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, n)| (n, i)).collect())
            .collect();
        let mut actions: Vec<Vec<usize>> = Vec::with_capacity(base.n_morphisms());
        for m in base.morphisms() {
            let name = base.morphism_name(m);
            let (a, b) = (base.dom(m), base.cod(m));
            match file.actions.get(name) {
                None if base.is_identity(m) => actions.push((0..sets[a.0].len()).collect()),
                None => return Err(IoError::MissingAction(name.to_string())),
                Some(table) => {
                    let mut act = Vec::with_capacity(sets[b.0].len());
                    for e in &sets[b.0] {
                        let image = table.get(e).ok_or_else(|| IoError::UnknownElement {
                            object: base.object_name(b).to_string(),
                            element: e.clone(),
                        })?;
                        let idx = *elem_index[a.0].get(image).ok_or_else(|| {
                            IoError::UnknownElement {
                                object: base.object_name(a).to_string(),
                                element: image.clone(),
                            }
                        })?;
                        act.push(idx);
                    }
                    actions.push(act);
                }
            }
        }
        Ok(TabularPresheaf::new(base, sets, actions)?)
    }

    pub fn map(&mut self, file: &MapFile) -> Result<PresheafMap, IoError> {
        let source = self.presheaf(&file.source)?;
        let target = self.presheaf(&file.target)?;
        if source.base() != target.base() {
            return Err(IoError::BaseMismatch);
        }
        let base = Arc::clone(source.base());
        let mut components = Vec::with_capacity(base.n_objects());
        for a in base.objects() {
            let obj = base.object_name(a);
            let table = file.components.get(obj);
            let mut comp = Vec::with_capacity(source.size(a));
            for e in source.set(a) {
                let image = table
                    .and_then(|t| t.get(e))
                    .ok_or_else(|| IoError::UnknownElement {
                        object: obj.to_string(),
                        element: e.clone(),
                    })?;
                let idx = target
                    .element(a, image)
                    .ok_or_else(|| IoError::UnknownElement {
                        object: obj.to_string(),
                        element: image.clone(),
                    })?;
                comp.push(idx);
            }
            components.push(comp);
        }
        Ok(PresheafMap::new(source, target, components)?)
    }

    pub fn class(&mut self, file: &ClassFile) -> Result<Vec<PresheafMap>, IoError> {
        file.generators.iter().map(|m| self.map(m)).collect()
    }

    pub fn functor(&mut self, file: &FunctorFile) -> Result<Functor, IoError> {
        let source = self.category(&file.source)?;
        let target = self.category(&file.target)?;
        let mut obj_map = Vec::with_capacity(source.n_objects());
        for a in source.objects() {
            let name = source.object_name(a);
            let image = file
                .objects
                .get(name)
                .ok_or_else(|| IoError::UnknownObject(name.to_string()))?;
            obj_map.push(
                target
                    .object(image)
                    .ok_or_else(|| IoError::UnknownObject(image.clone()))?,
            );
        }
        let mut mor_map = Vec::with_capacity(source.n_morphisms());
        for m in source.morphisms() {
            let name = source.morphism_name(m);
            let image = match file.morphisms.get(name) {
                Some(image) => target
                    .morphism(image)
                    .ok_or_else(|| IoError::UnknownMorphism(image.clone()))?,
                None if source.is_identity(m) => target.identity(obj_map[source.dom(m).0]),
                None => return Err(IoError::UnknownMorphism(name.to_string())),
            };
            mor_map.push(image);
        }
        Ok(Functor::new(source, target, obj_map, mor_map)?)
    }

    pub fn nat(&mut self, file: &NatFile) -> Result<NatTransformation, IoError> {
        let source = self.functor(&file.source)?;
        let target = self.functor(&file.target)?;
        let base = Arc::clone(source.source());
        let cod = Arc::clone(source.target());
        let mut components = Vec::with_capacity(base.n_objects());
        for a in base.objects() {
            let name = base.object_name(a);
            let image = file
                .components
                .get(name)
                .ok_or_else(|| IoError::UnknownObject(name.to_string()))?;
            components.push(
                cod.morphism(image)
                    .ok_or_else(|| IoError::UnknownMorphism(image.clone()))?,
            );
        }
        Ok(NatTransformation::new(source, target, components)?)
    }

    pub fn formal(&mut self, file: &FormalFile) -> Result<FormalColimitPresheaf, IoError> {
        let base = self.category(&file.base)?;
        let shape = Arc::new(FinCategory::validate(&category_data(&file.shape))?);
        let mut obj_map = Vec::with_capacity(shape.n_objects());
        for j in shape.objects() {
            let name = shape.object_name(j);
            let label = file
                .labels
                .get(name)
                .ok_or_else(|| IoError::UnknownObject(name.to_string()))?;
            obj_map.push(
                base.object(label)
                    .ok_or_else(|| IoError::UnknownObject(label.clone()))?,
            );
        }
        let mut mor_map = Vec::with_capacity(shape.n_morphisms());
        for s in shape.morphisms() {
            let name = shape.morphism_name(s);
            let image = match file.morphism_labels.get(name) {
                Some(image) => base
                    .morphism(image)
                    .ok_or_else(|| IoError::UnknownMorphism(image.clone()))?,
                None if shape.is_identity(s) => base.identity(obj_map[shape.dom(s).0]),
                None => return Err(IoError::UnknownMorphism(name.to_string())),
            };
            mor_map.push(image);
        }
        let window = file.window.unwrap_or(base.n_objects());
        let labeling = Functor::new(shape, base, obj_map, mor_map)?;
        Ok(FormalColimitPresheaf::new(labeling, window)?)
    }

    pub fn certificate(
        &mut self,
        file: &CertificateFile,
    ) -> Result<FactorizationCertificate, IoError> {
        let original = self.map(&file.original)?;
        let composite = self.map(&file.composite)?;
        let residual = self.map(&file.residual)?;
        let mut stages = Vec::with_capacity(file.stages.len());
        for sf in &file.stages {
            let triples = sf
                .triples
                .iter()
                .map(|t| {
                    Ok(Triple {
                        generator: t.generator,
                        attach: self.map(&t.attach)?,
                        anchor: self.map(&t.anchor)?,
                    })
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            let stage_map = self.map(&sf.stage_map)?;
            let cocone_leg = self.map(&sf.cocone_leg)?;
            let stage_residual = self.map(&sf.residual)?;
            let bundle = self.map(&sf.bundle)?;
            // recompute the coproducts and the attaching tuple from the triples
            let base = Arc::clone(stage_map.base());
            let doms: Vec<TabularPresheaf> =
                triples.iter().map(|t| t.attach.source().clone()).collect();
            let cods: Vec<TabularPresheaf> =
                triples.iter().map(|t| t.anchor.source().clone()).collect();
            let (cd, dom_inj) = crate::colimits::coproduct(&doms, &base)?;
            let (cc, _) = crate::colimits::coproduct(&cods, &base)?;
            let attach =
                crate::lifting::tuple_map(&cd, stage_map.source(), &dom_inj, |t, a, x| {
                    triples[t].attach.apply(a, x)
                })?;
            stages.push(SoaStage {
                bundle,
                attach,
                coproduct_dom: cd,
                coproduct_cod: cc,
                triples,
                stage_map,
                cocone_leg,
                residual: stage_residual,
            });
        }
        let status = parse_status(&file.status)?;
        Ok(FactorizationCertificate {
            original,
            stages,
            composite,
            residual,
            status,
        })
    }
}

fn parse_status(s: &str) -> Result<SoaStatus, IoError> {
    if s == "fixpoint" {
        return Ok(SoaStatus::Fixpoint);
    }
    if let Some(rest) = s.strip_prefix("budget_exhausted:") {
        if let Ok(k) = rest.parse() {
            return Ok(SoaStatus::BudgetExhausted(k));
        }
    }
    Err(IoError::BadStatus(s.to_string()))
}

fn status_string(s: SoaStatus) -> String {
    match s {
        SoaStatus::Fixpoint => "fixpoint".to_string(),
        SoaStatus::BudgetExhausted(k) => format!("budget_exhausted:{k}"),
    }
}

fn category_data(file: &CategoryFile) -> CategoryData {
    CategoryData {
        objects: file.objects.clone(),
        morphisms: file
            .morphisms
            .iter()
            .map(|m| (m.name.clone(), m.dom.clone(), m.cod.clone()))
            .collect(),
        identities: file.identities.clone(),
        compose: file.compose.clone(),
    }
}

pub fn category_file(cat: &FinCategory) -> CategoryFile {
    let data = cat.to_data();
    CategoryFile {
        objects: data.objects,
        morphisms: data
            .morphisms
            .into_iter()
            .map(|(name, dom, cod)| MorphismEntry { name, dom, cod })
            .collect(),
        identities: data.identities,
        compose: data.compose,
    }
}

/// Writes a presheaf with an inline base; identity actions are included.
pub fn presheaf_file(x: &TabularPresheaf) -> PresheafFile {
    let base = x.base();
    let sets = base
        .objects()
        .map(|a| (base.object_name(a).to_string(), x.set(a).to_vec()))
        .collect();
    let actions = base
        .morphisms()
        .map(|m| {
            let (a, b) = (base.dom(m), base.cod(m));
            let table: BTreeMap<String, String> = (0..x.size(b))
                .map(|e| (x.set(b)[e].clone(), x.set(a)[x.act(m, e)].clone()))
                .collect();
            (base.morphism_name(m).to_string(), table)
        })
        .collect();
    PresheafFile {
        base: CategoryRef::Inline(category_file(base)),
        sets,
        actions,
    }
}

pub fn map_file(f: &PresheafMap) -> MapFile {
    let base = f.base();
    let components = base
        .objects()
        .map(|a| {
            let table: BTreeMap<String, String> = (0..f.source().size(a))
                .map(|e| {
                    (
                        f.source().set(a)[e].clone(),
                        f.target().set(a)[f.apply(a, e)].clone(),
                    )
                })
                .collect();
            (base.object_name(a).to_string(), table)
        })
        .collect();
    MapFile {
        source: presheaf_file(f.source()),
        target: presheaf_file(f.target()),
        components,
    }
}

pub fn class_file(generators: &[PresheafMap]) -> ClassFile {
    ClassFile {
        generators: generators.iter().map(map_file).collect(),
    }
}

pub fn functor_file(f: &Functor) -> FunctorFile {
    let src = f.source();
    let tgt = f.target();
    FunctorFile {
        source: CategoryRef::Inline(category_file(src)),
        target: CategoryRef::Inline(category_file(tgt)),
        objects: src
            .objects()
            .map(|a| {
                (
                    src.object_name(a).to_string(),
                    tgt.object_name(f.apply_obj(a)).to_string(),
                )
            })
            .collect(),
        morphisms: src
            .morphisms()
            .map(|m| {
                (
                    src.morphism_name(m).to_string(),
                    tgt.morphism_name(f.apply_mor(m)).to_string(),
                )
            })
            .collect(),
    }
}

pub fn certificate_file(cert: &FactorizationCertificate) -> CertificateFile {
    CertificateFile {
        original: map_file(&cert.original),
        stages: cert
            .stages
            .iter()
            .map(|s| StageFile {
                triples: s
                    .triples
                    .iter()
                    .map(|t| TripleFile {
                        generator: t.generator,
                        attach: map_file(&t.attach),
                        anchor: map_file(&t.anchor),
                    })
                    .collect(),
                result: presheaf_file(s.stage_map.target()),
                bundle: map_file(&s.bundle),
                stage_map: map_file(&s.stage_map),
                cocone_leg: map_file(&s.cocone_leg),
                residual: map_file(&s.residual),
            })
            .collect(),
        composite: map_file(&cert.composite),
        residual: map_file(&cert.residual),
        status: status_string(cert.status),
    }
}

/// Line-delimited JSON with sorted keys: one value, one line.
pub fn to_json_line<T: Serialize>(value: &T) -> Result<String, IoError> {
    let v = serde_json::to_value(value)?;
    Ok(format!("{v}\n"))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}
