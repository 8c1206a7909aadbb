//! Equivalence of finite categories, decided through skeletons.
//!
//! Two finite categories are equivalent iff their skeletons are isomorphic,
//! so the check computes isomorphism classes of objects, restricts to one
//! representative per class, and searches for a category isomorphism by
//! backtracking over object and morphism bijections.

use super::{full_subcategory, FinCategory, FincatError, MorId, ObjId};
use std::sync::Arc;

/// Isomorphism classes of objects, each sorted, in first-seen order.
pub fn iso_classes(cat: &FinCategory) -> Vec<Vec<ObjId>> {
    let n = cat.n_objects();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<ObjId>> = Vec::new();
    for a in cat.objects() {
        if class_of[a.0].is_some() {
            continue;
        }
        let idx = classes.len();
        class_of[a.0] = Some(idx);
        let mut members = vec![a];
        for b in cat.objects() {
            if class_of[b.0].is_none() && cat.hom(a, b).iter().any(|&m| cat.is_iso(m)) {
                class_of[b.0] = Some(idx);
                members.push(b);
            }
        }
        classes.push(members);
    }
    classes
}

/// Full subcategory on one representative per isomorphism class.
pub fn skeleton(cat: &Arc<FinCategory>) -> Arc<FinCategory> {
    let reps: Vec<ObjId> = iso_classes(cat).into_iter().map(|c| c[0]).collect();
    full_subcategory(cat, &reps).0
}

struct IsoSearch<'a> {
    c1: &'a FinCategory,
    c2: &'a FinCategory,
    obj_map: Vec<Option<ObjId>>,
    obj_used: Vec<bool>,
    mor_map: Vec<Option<MorId>>,
    mor_used: Vec<bool>,
    nodes: u64,
    limit: u64,
}

impl<'a> IsoSearch<'a> {
    fn tick(&mut self) -> Result<(), FincatError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(FincatError::SearchExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    fn hom_profile(cat: &FinCategory, a: ObjId) -> (usize, Vec<usize>, Vec<usize>) {
        let mut outs: Vec<usize> = cat.objects().map(|b| cat.hom(a, b).len()).collect();
        let mut ins: Vec<usize> = cat.objects().map(|b| cat.hom(b, a).len()).collect();
        let endo = cat.hom(a, a).len();
        outs.sort_unstable();
        ins.sort_unstable();
        (endo, outs, ins)
    }

    fn assign_objects(&mut self, next: usize) -> Result<bool, FincatError> {
        if next == self.c1.n_objects() {
            return self.assign_morphisms(0);
        }
        let a = ObjId(next);
        let profile = Self::hom_profile(self.c1, a);
        for b in self.c2.objects() {
            if self.obj_used[b.0] || Self::hom_profile(self.c2, b) != profile {
                continue;
            }
            self.tick()?;
            self.obj_map[a.0] = Some(b);
            self.obj_used[b.0] = true;
            if self.assign_objects(next + 1)? {
                return Ok(true);
            }
            self.obj_map[a.0] = None;
            self.obj_used[b.0] = false;
        }
        Ok(false)
    }

    fn assign_morphisms(&mut self, next: usize) -> Result<bool, FincatError> {
        if next == self.c1.n_morphisms() {
            return Ok(self.check_tables());
        }
        let m = MorId(next);
        let (a, b) = (self.c1.dom(m), self.c1.cod(m));
        let (fa, fb) = (self.obj_map[a.0].unwrap(), self.obj_map[b.0].unwrap());
        if self.c1.is_identity(m) {
            let im = self.c2.identity(fa);
            if self.mor_used[im.0] {
                return Ok(false);
            }
            self.tick()?;
            self.mor_map[m.0] = Some(im);
            self.mor_used[im.0] = true;
            let found = self.assign_morphisms(next + 1)?;
            if found {
                return Ok(true);
            }
            self.mor_map[m.0] = None;
            self.mor_used[im.0] = false;
            return Ok(false);
        }
        for &im in self.c2.hom(fa, fb) {
            if self.mor_used[im.0] || self.c2.is_identity(im) != self.c1.is_identity(m) {
                continue;
            }
            self.tick()?;
            self.mor_map[m.0] = Some(im);
            self.mor_used[im.0] = true;
            if self.check_partial(m) && self.assign_morphisms(next + 1)? {
                return Ok(true);
            }
            self.mor_map[m.0] = None;
            self.mor_used[im.0] = false;
        }
        Ok(false)
    }

    /// Checks every composition triple whose members are all assigned and
    /// involve `latest`.
    fn check_partial(&self, latest: MorId) -> bool {
        for f in self.c1.morphisms() {
            let Some(ff) = self.mor_map[f.0] else { continue };
            for &g in self.c1.morphisms_from(self.c1.cod(f)) {
                if g != latest && f != latest {
                    continue;
                }
                let Some(fg) = self.mor_map[g.0] else { continue };
                let gf = self.c1.compose(g, f).expect("total");
                if let Some(fgf) = self.mor_map[gf.0] {
                    if self.c2.compose(fg, ff) != Some(fgf) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_tables(&self) -> bool {
        for f in self.c1.morphisms() {
            for &g in self.c1.morphisms_from(self.c1.cod(f)) {
                let gf = self.c1.compose(g, f).expect("total");
                let image = self
                    .c2
                    .compose(self.mor_map[g.0].unwrap(), self.mor_map[f.0].unwrap());
                if image != Some(self.mor_map[gf.0].unwrap()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Searches for an isomorphism of categories, with a node cap.
pub fn isomorphic_categories(
    c1: &FinCategory,
    c2: &FinCategory,
    node_limit: u64,
) -> Result<bool, FincatError> {
    if c1.n_objects() != c2.n_objects() || c1.n_morphisms() != c2.n_morphisms() {
        return Ok(false);
    }
    let mut search = IsoSearch {
        c1,
        c2,
        obj_map: vec![None; c1.n_objects()],
        obj_used: vec![false; c1.n_objects()],
        mor_map: vec![None; c1.n_morphisms()],
        mor_used: vec![false; c1.n_morphisms()],
        nodes: 0,
        limit: node_limit,
    };
    search.assign_objects(0)
}

/// Equivalence of categories via skeleton isomorphism.
pub fn equivalent_categories(
    c1: &Arc<FinCategory>,
    c2: &Arc<FinCategory>,
    node_limit: u64,
) -> Result<bool, FincatError> {
    let s1 = skeleton(c1);
    let s2 = skeleton(c2);
    isomorphic_categories(&s1, &s2, node_limit)
}
