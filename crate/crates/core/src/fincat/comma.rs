//! Comma categories `F1 ↓ F2` for functors with a common target.
//!
//! Objects are triples `(K1, K2, f: F1 K1 -> F2 K2)`; morphisms are pairs
//! `(k1, k2)` making the evident square commute. Objects and morphisms of
//! the constructed category are named `gen#k` in enumeration order:
//! objects by (left object, right object, mediator index), morphisms by
//! (source object, target object, k1 index, k2 index).

use super::{CategoryData, FinCategory, Functor, FincatError, MorId, ObjId};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommaObject {
    /// object of the source of `F1`
    pub left: ObjId,
    /// object of the source of `F2`
    pub right: ObjId,
    /// `f: F1(left) -> F2(right)` in the common target
    pub mediator: MorId,
}

#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub category: Arc<FinCategory>,
    /// descriptor for each object, aligned with object indices
    pub objects: Vec<CommaObject>,
    /// component pair for each morphism, aligned with morphism indices
    pub morphisms: Vec<(MorId, MorId)>,
    pub proj_left: Functor,
    pub proj_right: Functor,
}

pub fn comma_category(f1: &Functor, f2: &Functor) -> Result<CommaCategory, FincatError> {
    if f1.target() != f2.target() {
        return Err(FincatError::Mismatch(
            "comma category requires functors with a common target".into(),
        ));
    }
    let a = f1.source();
    let b = f2.source();
    let target = f1.target();

    let mut objects = Vec::new();
    for k1 in a.objects() {
        for k2 in b.objects() {
            for &f in target.hom(f1.apply_obj(k1), f2.apply_obj(k2)) {
                objects.push(CommaObject {
                    left: k1,
                    right: k2,
                    mediator: f,
                });
            }
        }
    }

    let mut morphisms = Vec::new();
    let mut mor_lookup: BTreeMap<(usize, usize, MorId, MorId), usize> = BTreeMap::new();
    for (src_i, src) in objects.iter().enumerate() {
        for (tgt_i, tgt) in objects.iter().enumerate() {
            for &k1 in a.hom(src.left, tgt.left) {
                for &k2 in b.hom(src.right, tgt.right) {
                    let down = target.compose(f2.apply_mor(k2), src.mediator);
                    let over = target.compose(tgt.mediator, f1.apply_mor(k1));
                    if down == over && down.is_some() {
                        mor_lookup.insert((src_i, tgt_i, k1, k2), morphisms.len());
                        morphisms.push((src_i, tgt_i, k1, k2));
                    }
                }
            }
        }
    }

    let obj_names: Vec<String> = (0..objects.len()).map(|i| format!("gen#{i}")).collect();
    let mor_names: Vec<String> = (0..morphisms.len()).map(|i| format!("gen#{i}")).collect();
    let mut identities = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        let key = (i, i, a.identity(o.left), b.identity(o.right));
        identities.insert(obj_names[i].clone(), mor_names[mor_lookup[&key]].clone());
    }
    let mut compose = Vec::new();
    for (mi, &(s1, t1, k1, k2)) in morphisms.iter().enumerate() {
        for (ni, &(s2, t2, l1, l2)) in morphisms.iter().enumerate() {
            if s2 == t1 {
                let c1 = a.compose(l1, k1).expect("total");
                let c2 = b.compose(l2, k2).expect("total");
                let c = mor_lookup[&(s1, t2, c1, c2)];
                compose.push((mor_names[ni].clone(), mor_names[mi].clone(), mor_names[c].clone()));
            }
        }
    }
    compose.sort();

    let category = Arc::new(FinCategory::validate(&CategoryData {
        objects: obj_names,
        morphisms: morphisms
            .iter()
            .enumerate()
            .map(|(i, &(s, t, _, _))| {
                (mor_names[i].clone(), format!("gen#{s}"), format!("gen#{t}"))
            })
            .collect(),
        identities,
        compose,
    })?);

    let proj_left = Functor::new(
        Arc::clone(&category),
        Arc::clone(a),
        objects.iter().map(|o| o.left).collect(),
        morphisms.iter().map(|&(_, _, k1, _)| k1).collect(),
    )?;
    let proj_right = Functor::new(
        Arc::clone(&category),
        Arc::clone(b),
        objects.iter().map(|o| o.right).collect(),
        morphisms.iter().map(|&(_, _, _, k2)| k2).collect(),
    )?;

    Ok(CommaCategory {
        category,
        objects,
        morphisms: morphisms.iter().map(|&(_, _, k1, k2)| (k1, k2)).collect(),
        proj_left,
        proj_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{terminal_category, walking_arrow};

    #[test]
    fn arrow_category_of_terminal() {
        let t = terminal_category();
        let id = Functor::identity(&t);
        let c = comma_category(&id, &id).unwrap();
        assert_eq!(c.category.n_objects(), 1);
        assert_eq!(c.category.n_morphisms(), 1);
    }

    #[test]
    fn arrow_category_of_walking_arrow() {
        // Id ↓ Id over 0 -> 1: three objects (id0, id1, a)
        let c0 = walking_arrow();
        let id = Functor::identity(&c0);
        let c = comma_category(&id, &id).unwrap();
        assert_eq!(c.category.n_objects(), 3);
        // commuting squares counted directly: (id0,id0), (id0,a), (a,a),
        // (a,id1), (id1,id1), and the identity-square on the arrow object
        assert_eq!(c.category.n_morphisms(), 6);
    }

    #[test]
    fn slice_objects_are_hom_sets() {
        // A ↓ K for A the full subcategory on 0, K = 1: objects = hom(0, 1)
        let c0 = walking_arrow();
        let (sub, incl) = crate::fincat::full_subcategory(&c0, &[ObjId(0)]);
        let t = terminal_category();
        let konst = Functor::constant(Arc::clone(&t), Arc::clone(&c0), ObjId(1));
        let _ = sub;
        let c = comma_category(&incl, &konst).unwrap();
        assert_eq!(c.category.n_objects(), c0.hom(ObjId(0), ObjId(1)).len());
    }

    #[test]
    fn comma_identity_object_count_is_morphism_count() {
        for cat in [terminal_category(), walking_arrow()] {
            let id = Functor::identity(&cat);
            let c = comma_category(&id, &id).unwrap();
            assert_eq!(c.category.n_objects(), cat.n_morphisms());
        }
    }
}
