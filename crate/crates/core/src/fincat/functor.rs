//! Functors and natural transformations between finite categories, both
//! validated exhaustively on construction.

use super::{FinCategory, FincatError, MorId, ObjId};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl Functor {
    /// Validates preservation of endpoints, identities, and composition.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, FincatError> {
        if obj_map.len() != source.n_objects() || mor_map.len() != source.n_morphisms() {
            return Err(FincatError::InvalidFunctor(
                "object/morphism map arity mismatch".into(),
            ));
        }
        for &o in &obj_map {
            if o.0 >= target.n_objects() {
                return Err(FincatError::InvalidFunctor(format!(
                    "object image {} out of range",
                    o.0
                )));
            }
        }
        for m in source.morphisms() {
            let fm = mor_map[m.0];
            if fm.0 >= target.n_morphisms() {
                return Err(FincatError::InvalidFunctor(format!(
                    "morphism image {} out of range",
                    fm.0
                )));
            }
            if target.dom(fm) != obj_map[source.dom(m).0]
                || target.cod(fm) != obj_map[source.cod(m).0]
            {
                return Err(FincatError::InvalidFunctor(format!(
                    "image of `{}` has wrong endpoints",
                    source.morphism_name(m)
                )));
            }
        }
        for a in source.objects() {
            if mor_map[source.identity(a).0] != target.identity(obj_map[a.0]) {
                return Err(FincatError::InvalidFunctor(format!(
                    "identity of `{}` not preserved",
                    source.object_name(a)
                )));
            }
        }
        for f in source.morphisms() {
            for &g in source.morphisms_from(source.cod(f)) {
                let gf = source.compose(g, f).expect("total table");
                let image = target
                    .compose(mor_map[g.0], mor_map[f.0])
                    .expect("images are composable");
                if image != mor_map[gf.0] {
                    return Err(FincatError::InvalidFunctor(format!(
                        "composition of `{}` after `{}` not preserved",
                        source.morphism_name(g),
                        source.morphism_name(f)
                    )));
                }
            }
        }
        Ok(Functor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(cat: &Arc<FinCategory>) -> Functor {
        Functor {
            source: Arc::clone(cat),
            target: Arc::clone(cat),
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    /// Constant functor collapsing everything onto one object.
    pub fn constant(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        at: ObjId,
    ) -> Functor {
        let id = target.identity(at);
        Functor {
            obj_map: vec![at; source.n_objects()],
            mor_map: vec![id; source.n_morphisms()],
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn apply_obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.0]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.0]
    }

    /// True when parallel morphisms never collapse.
    pub fn is_faithful(&self) -> bool {
        for a in self.source.objects() {
            for b in self.source.objects() {
                let hom = self.source.hom(a, b);
                for (i, &m) in hom.iter().enumerate() {
                    for &m2 in &hom[i + 1..] {
                        if self.mor_map[m.0] == self.mor_map[m2.0] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    source: Functor,
    target: Functor,
    /// component at each source-category object, a morphism of the target category
    components: Vec<MorId>,
}

impl NatTransformation {
    /// Validates parallelism and every naturality square.
    pub fn new(
        source: Functor,
        target: Functor,
        components: Vec<MorId>,
    ) -> Result<Self, FincatError> {
        if source.source() != target.source() || source.target() != target.target() {
            return Err(FincatError::InvalidNatTransformation(
                "functors are not parallel".into(),
            ));
        }
        let base = source.source();
        let cod_cat = source.target();
        if components.len() != base.n_objects() {
            return Err(FincatError::InvalidNatTransformation(
                "one component per object required".into(),
            ));
        }
        for a in base.objects() {
            let c = components[a.0];
            if cod_cat.dom(c) != source.apply_obj(a) || cod_cat.cod(c) != target.apply_obj(a) {
                return Err(FincatError::InvalidNatTransformation(format!(
                    "component at `{}` has wrong endpoints",
                    base.object_name(a)
                )));
            }
        }
        for m in base.morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            let left = cod_cat.compose(components[b.0], source.apply_mor(m));
            let right = cod_cat.compose(target.apply_mor(m), components[a.0]);
            if left != right || left.is_none() {
                return Err(FincatError::InvalidNatTransformation(format!(
                    "naturality fails at `{}`",
                    base.morphism_name(m)
                )));
            }
        }
        Ok(NatTransformation {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &Functor) -> NatTransformation {
        let components = f
            .source()
            .objects()
            .map(|a| f.target().identity(f.apply_obj(a)))
            .collect();
        NatTransformation {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, a: ObjId) -> MorId {
        self.components[a.0]
    }
}
