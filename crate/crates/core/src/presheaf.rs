//! Tabular presheaves over a finite base and maps between them.
//!
//! A [`TabularPresheaf`] is a contravariant set-valued functor given by an
//! explicit finite set per object and an explicit function per morphism;
//! contravariant functoriality is checked exhaustively on construction.
//! [`FormalColimitPresheaf`] represents a small presheaf as a labeled
//! diagram of representables and is evaluated pointwise as a quotient of
//! hom-sets, never outside its declared window.

use crate::fincat::{FinCategory, FincatError, Functor, MorId, ObjId};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresheafError {
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("action of `{morphism}` has wrong arity")]
    BadActionArity { morphism: String },
    #[error("action of identity `{morphism}` is not the identity")]
    IdentityActionViolation { morphism: String },
    #[error("contravariance fails on `{g}` after `{f}`")]
    ContravarianceViolation { g: String, f: String },
    #[error("component at `{object}` has wrong arity")]
    BadComponentArity { object: String },
    #[error("naturality fails at `{morphism}`")]
    NaturalityViolation { morphism: String },
    #[error("presheaves live over different bases")]
    BaseMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("unknown element `{element}` at object `{object}`")]
    UnknownElement { object: String, element: String },
    #[error(transparent)]
    Category(#[from] FincatError),
}

/// A contravariant functor `base^op -> Set` with finite tabulated values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabularPresheaf {
    base: Arc<FinCategory>,
    /// element names per object
    sets: Vec<Vec<String>>,
    elem_index: Vec<BTreeMap<String, usize>>,
    /// per morphism `m: a -> b`, the function `X(b) -> X(a)` by element index
    actions: Vec<Vec<usize>>,
}

impl TabularPresheaf {
    pub fn new(
        base: Arc<FinCategory>,
        sets: Vec<Vec<String>>,
        actions: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        assert_eq!(sets.len(), base.n_objects(), "one set per object");
        assert_eq!(actions.len(), base.n_morphisms(), "one action per morphism");
        let mut elem_index = Vec::with_capacity(sets.len());
        for names in &sets {
            let mut idx = BTreeMap::new();
            for (i, n) in names.iter().enumerate() {
                if idx.insert(n.clone(), i).is_some() {
                    return Err(PresheafError::DuplicateElement(n.clone()));
                }
            }
            elem_index.push(idx);
        }
        let x = TabularPresheaf {
            base,
            sets,
            elem_index,
            actions,
        };
        x.check_arities()?;
        x.check_functoriality()?;
        Ok(x)
    }

    fn check_arities(&self) -> Result<(), PresheafError> {
        for m in self.base.morphisms() {
            let act = &self.actions[m.0];
            let src_len = self.sets[self.base.cod(m).0].len();
            let tgt_len = self.sets[self.base.dom(m).0].len();
            if act.len() != src_len || act.iter().any(|&v| v >= tgt_len) {
                return Err(PresheafError::BadActionArity {
                    morphism: self.base.morphism_name(m).to_string(),
                });
            }
        }
        Ok(())
    }

    fn check_functoriality(&self) -> Result<(), PresheafError> {
        for a in self.base.objects() {
            let id = self.base.identity(a);
            if self.actions[id.0].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(PresheafError::IdentityActionViolation {
                    morphism: self.base.morphism_name(id).to_string(),
                });
            }
        }
        for f in self.base.morphisms() {
            for &g in self.base.morphisms_from(self.base.cod(f)) {
                let gf = self.base.compose(g, f).expect("total");
                // X(g o f) = X(f) o X(g)
                for (i, &via) in self.actions[gf.0].iter().enumerate() {
                    if self.actions[f.0][self.actions[g.0][i]] != via {
                        return Err(PresheafError::ContravarianceViolation {
                            g: self.base.morphism_name(g).to_string(),
                            f: self.base.morphism_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn set(&self, a: ObjId) -> &[String] {
        &self.sets[a.0]
    }

    pub fn size(&self, a: ObjId) -> usize {
        self.sets[a.0].len()
    }

    pub fn total_elements(&self) -> usize {
        self.sets.iter().map(|s| s.len()).sum()
    }

    pub fn element(&self, a: ObjId, name: &str) -> Option<usize> {
        self.elem_index[a.0].get(name).copied()
    }

    /// Index of `X(m)(x)` for `x` in `X(cod m)`.
    pub fn act(&self, m: MorId, x: usize) -> usize {
        self.actions[m.0][x]
    }

    pub fn action(&self, m: MorId) -> &[usize] {
        &self.actions[m.0]
    }

    /// The empty (initial) presheaf.
    pub fn initial(base: Arc<FinCategory>) -> TabularPresheaf {
        let n_obj = base.n_objects();
        let n_mor = base.n_morphisms();
        TabularPresheaf {
            base,
            sets: vec![Vec::new(); n_obj],
            elem_index: vec![BTreeMap::new(); n_obj],
            actions: vec![Vec::new(); n_mor],
        }
    }

    /// The terminal presheaf: a single point at every object.
    pub fn terminal(base: Arc<FinCategory>) -> TabularPresheaf {
        let n_obj = base.n_objects();
        let n_mor = base.n_morphisms();
        TabularPresheaf {
            base,
            sets: vec![vec!["pt".to_string()]; n_obj],
            elem_index: vec![[("pt".to_string(), 0)].into_iter().collect(); n_obj],
            actions: vec![vec![0]; n_mor],
        }
    }

    /// A presheaf over the terminal category is just a finite set.
    pub fn constant_set(base: Arc<FinCategory>, names: &[&str]) -> TabularPresheaf {
        assert_eq!(base.n_objects(), 1, "constant presheaves live over a point");
        let sets = vec![names.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
        let actions = vec![(0..names.len()).collect()];
        TabularPresheaf::new(base, sets, actions).expect("constant presheaf")
    }
}

/// A natural transformation between tabular presheaves over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMap {
    source: TabularPresheaf,
    target: TabularPresheaf,
    /// per object: function X(a) -> Y(a) by element index
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn new(
        source: TabularPresheaf,
        target: TabularPresheaf,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if source.base != target.base {
            return Err(PresheafError::BaseMismatch);
        }
        let base = source.base.clone();
        if components.len() != base.n_objects() {
            return Err(PresheafError::BadComponentArity {
                object: "<missing>".into(),
            });
        }
        for a in base.objects() {
            let comp = &components[a.0];
            if comp.len() != source.size(a) || comp.iter().any(|&v| v >= target.size(a)) {
                return Err(PresheafError::BadComponentArity {
                    object: base.object_name(a).to_string(),
                });
            }
        }
        for m in base.morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            // component_a o X(m) = Y(m) o component_b
            for x in 0..source.size(b) {
                if components[a.0][source.act(m, x)] != target.act(m, components[b.0][x]) {
                    return Err(PresheafError::NaturalityViolation {
                        morphism: base.morphism_name(m).to_string(),
                    });
                }
            }
        }
        Ok(PresheafMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: &TabularPresheaf) -> PresheafMap {
        PresheafMap {
            source: x.clone(),
            target: x.clone(),
            components: x.sets.iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }

    pub fn source(&self) -> &TabularPresheaf {
        &self.source
    }

    pub fn target(&self) -> &TabularPresheaf {
        &self.target
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.source.base
    }

    pub fn component(&self, a: ObjId) -> &[usize] {
        &self.components[a.0]
    }

    pub fn apply(&self, a: ObjId, x: usize) -> usize {
        self.components[a.0][x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `g` after `f`.
    pub fn compose(g: &PresheafMap, f: &PresheafMap) -> Result<PresheafMap, PresheafError> {
        if f.target != g.source {
            return Err(PresheafError::NotComposable);
        }
        let components = f
            .components
            .iter()
            .enumerate()
            .map(|(a, comp)| comp.iter().map(|&x| g.components[a][x]).collect())
            .collect();
        Ok(PresheafMap {
            source: f.source.clone(),
            target: g.target.clone(),
            components,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .iter()
                .all(|c| c.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Pointwise bijectivity; for natural maps this is invertibility.
    pub fn is_iso(&self) -> bool {
        self.components.iter().enumerate().all(|(a, comp)| {
            let n = self.target.sets[a].len();
            if comp.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        if !self.is_iso() {
            return None;
        }
        let components: Vec<Vec<usize>> = self
            .components
            .iter()
            .enumerate()
            .map(|(a, comp)| {
                let mut inv = vec![0; self.target.sets[a].len()];
                for (i, &v) in comp.iter().enumerate() {
                    inv[v] = i;
                }
                inv
            })
            .collect();
        Some(PresheafMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    pub fn is_pointwise_surjective(&self) -> bool {
        self.components.iter().enumerate().all(|(a, comp)| {
            let mut seen = vec![false; self.target.sets[a].len()];
            for &v in comp {
                seen[v] = true;
            }
            seen.iter().all(|&s| s)
        })
    }

    /// The unique map into the terminal presheaf.
    pub fn to_terminal(x: &TabularPresheaf) -> PresheafMap {
        let terminal = TabularPresheaf::terminal(Arc::clone(&x.base));
        PresheafMap {
            components: x.sets.iter().map(|s| vec![0; s.len()]).collect(),
            source: x.clone(),
            target: terminal,
        }
    }

    /// The unique map out of the initial presheaf.
    pub fn from_initial(x: &TabularPresheaf) -> PresheafMap {
        let initial = TabularPresheaf::initial(Arc::clone(&x.base));
        PresheafMap {
            components: vec![Vec::new(); x.base.n_objects()],
            source: initial,
            target: x.clone(),
        }
    }
}

/// The representable presheaf `hom(-, a)`, with morphism names as elements.
pub fn yoneda(base: &Arc<FinCategory>, a: ObjId) -> TabularPresheaf {
    let sets: Vec<Vec<String>> = base
        .objects()
        .map(|b| {
            base.hom(b, a)
                .iter()
                .map(|&m| base.morphism_name(m).to_string())
                .collect()
        })
        .collect();
    let hom_pos: Vec<BTreeMap<MorId, usize>> = base
        .objects()
        .map(|b| {
            base.hom(b, a)
                .iter()
                .enumerate()
                .map(|(i, &m)| (m, i))
                .collect()
        })
        .collect();
    // action along m: b -> b' sends h in hom(b', a) to h o m in hom(b, a)
    let actions: Vec<Vec<usize>> = base
        .morphisms()
        .map(|m| {
            let (b, b2) = (base.dom(m), base.cod(m));
            base.hom(b2, a)
                .iter()
                .map(|&h| hom_pos[b.0][&base.compose(h, m).expect("total")])
                .collect()
        })
        .collect();
    TabularPresheaf::new(Arc::clone(base), sets, actions).expect("representable presheaf")
}

/// The natural transformation `y(m): y(dom m) -> y(cod m)` by postcomposition.
pub fn yoneda_map(base: &Arc<FinCategory>, m: MorId) -> PresheafMap {
    let src = yoneda(base, base.dom(m));
    let tgt = yoneda(base, base.cod(m));
    let components: Vec<Vec<usize>> = base
        .objects()
        .map(|b| {
            base.hom(b, base.dom(m))
                .iter()
                .map(|&h| {
                    let mh = base.compose(m, h).expect("total");
                    base.hom(b, base.cod(m))
                        .iter()
                        .position(|&k| k == mh)
                        .expect("composite lands in hom")
                })
                .collect()
        })
        .collect();
    PresheafMap::new(src, tgt, components).expect("postcomposition is natural")
}

/// A small presheaf presented as a colimit of representables: a finite shape
/// category whose objects are labeled by base objects via a functor into the
/// materialized window.
#[derive(Debug, Clone)]
pub struct FormalColimitPresheaf {
    /// labeling functor: shape -> window category
    labeling: Functor,
    /// number of window objects the presheaf may be evaluated at
    window: usize,
}

impl FormalColimitPresheaf {
    pub fn new(labeling: Functor, window: usize) -> Result<Self, PresheafError> {
        if window > labeling.target().n_objects() {
            return Err(PresheafError::WindowTooSmall(format!(
                "declared window {window} exceeds the materialized category"
            )));
        }
        Ok(FormalColimitPresheaf { labeling, window })
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        self.labeling.source()
    }

    pub fn window_category(&self) -> &Arc<FinCategory> {
        self.labeling.target()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn labeling(&self) -> &Functor {
        &self.labeling
    }
}

/// Classes of the pointwise colimit `colim_j hom(a, label j)`: pairs
/// `(shape object, hom element)` merged along the zig-zags generated by
/// shape morphisms. Classes are ordered by their least member, which is
/// also the canonical name.
fn formal_classes(p: &FormalColimitPresheaf, a: ObjId) -> Vec<Vec<(usize, MorId)>> {
    let base = p.window_category();
    let shape = p.shape();
    let mut offsets = Vec::with_capacity(shape.n_objects());
    let mut total = 0usize;
    for j in shape.objects() {
        offsets.push(total);
        total += base.hom(a, p.labeling.apply_obj(j)).len();
    }
    let mut uf = UnionFind::new(total);
    for s in shape.morphisms() {
        let (j, j2) = (shape.dom(s), shape.cod(s));
        let ls = p.labeling.apply_mor(s);
        let hom_j = base.hom(a, p.labeling.apply_obj(j));
        let hom_j2 = base.hom(a, p.labeling.apply_obj(j2));
        for (i, &h) in hom_j.iter().enumerate() {
            let lh = base.compose(ls, h).expect("total");
            let k = hom_j2.iter().position(|&x| x == lh).expect("in hom");
            uf.union(offsets[j.0] + i, offsets[j2.0] + k);
        }
    }
    let mut classes: BTreeMap<usize, Vec<(usize, MorId)>> = BTreeMap::new();
    for j in shape.objects() {
        let hom_j = base.hom(a, p.labeling.apply_obj(j));
        for (i, &h) in hom_j.iter().enumerate() {
            classes
                .entry(uf.find(offsets[j.0] + i))
                .or_default()
                .push((j.0, h));
        }
    }
    let mut out: Vec<Vec<(usize, MorId)>> = classes.into_values().collect();
    for c in &mut out {
        c.sort();
    }
    out.sort();
    out
}

fn formal_class_name(base: &FinCategory, class: &[(usize, MorId)]) -> String {
    let (j, h) = class[0];
    format!("{}@{}", j, base.morphism_name(h))
}

/// Pointwise evaluation of a formal presheaf: the colimit of the hom-sets
/// `hom(a, label j)` over the shape, as canonical class names.
pub fn evaluate_formal(p: &FormalColimitPresheaf, a: ObjId) -> Result<Vec<String>, PresheafError> {
    if a.0 >= p.window {
        return Err(PresheafError::WindowTooSmall(format!(
            "object index {} outside declared window {}",
            a.0, p.window
        )));
    }
    let base = p.window_category();
    Ok(formal_classes(p, a)
        .iter()
        .map(|c| formal_class_name(base, c))
        .collect())
}

/// Tabulates a formal presheaf over the first `window` objects.
pub fn tabulate(
    p: &FormalColimitPresheaf,
    window: usize,
) -> Result<TabularPresheaf, PresheafError> {
    if window > p.window {
        return Err(PresheafError::WindowTooSmall(format!(
            "requested window {window} exceeds declared window {}",
            p.window
        )));
    }
    let ambient = p.window_category();
    let keep: Vec<ObjId> = (0..window).map(ObjId).collect();
    let (sub, inclusion) = crate::fincat::full_subcategory(ambient, &keep);

    let mut sets = Vec::with_capacity(window);
    let mut class_index: Vec<BTreeMap<(usize, MorId), usize>> = Vec::with_capacity(window);
    let mut classes_per_obj = Vec::with_capacity(window);
    for a in keep.iter().copied() {
        let classes = formal_classes(p, a);
        let mut index = BTreeMap::new();
        let mut names = Vec::with_capacity(classes.len());
        for (ci, c) in classes.iter().enumerate() {
            names.push(formal_class_name(ambient, c));
            for &member in c {
                index.insert(member, ci);
            }
        }
        sets.push(names);
        class_index.push(index);
        classes_per_obj.push(classes);
    }

    // action along m: a -> b sends the class of (j, h) to the class of (j, h o m)
    let mut actions = Vec::with_capacity(sub.n_morphisms());
    for m in sub.morphisms() {
        let amb_m = inclusion.apply_mor(m);
        let (a, b) = (sub.dom(m), sub.cod(m));
        let mut act = Vec::with_capacity(classes_per_obj[b.0].len());
        for class in &classes_per_obj[b.0] {
            let (j, h) = class[0];
            let hm = ambient.compose(h, amb_m).expect("total");
            act.push(class_index[a.0][&(j, hm)]);
        }
        actions.push(act);
    }
    TabularPresheaf::new(sub, sets, actions)
}

/// Target of the restricted hom functor: a base object or a presheaf.
#[derive(Debug, Clone)]
pub enum HomTarget<'a> {
    Object(ObjId),
    Presheaf(&'a TabularPresheaf),
}

/// The restricted hom functor `E(K)(a) = hom(a, K)` on a chosen full
/// subcategory of the base. For a presheaf `K` the hom-sets are computed by
/// natural-transformation enumeration out of representables, and elements
/// are named by their Yoneda transposes (the value at the identity); for a
/// base object they are the base hom-sets.
pub fn canonical_functor_e(
    base: &Arc<FinCategory>,
    k: HomTarget<'_>,
    subcategory: &[ObjId],
    limit: crate::lifting::SearchLimit,
) -> Result<(Arc<FinCategory>, TabularPresheaf), PresheafError> {
    let (sub, inclusion) = crate::fincat::full_subcategory(base, subcategory);
    match k {
        HomTarget::Object(b) => {
            let full = yoneda(base, b);
            let sets: Vec<Vec<String>> = sub
                .objects()
                .map(|a| full.set(inclusion.apply_obj(a)).to_vec())
                .collect();
            let actions: Vec<Vec<usize>> = sub
                .morphisms()
                .map(|m| full.action(inclusion.apply_mor(m)).to_vec())
                .collect();
            let e = TabularPresheaf::new(Arc::clone(&sub), sets, actions)?;
            Ok((sub, e))
        }
        HomTarget::Presheaf(kp) => {
            if kp.base() != base {
                return Err(PresheafError::BaseMismatch);
            }
            // hom(a, K) = Nat(y a, K), named by the Yoneda transpose
            let mut maps_per_obj = Vec::with_capacity(subcategory.len());
            let mut sets = Vec::with_capacity(subcategory.len());
            for &a in subcategory {
                let ya = yoneda(base, a);
                let maps = crate::lifting::enumerate_maps(&ya, kp, limit)?;
                let id_pos = ya
                    .element(a, base.morphism_name(base.identity(a)))
                    .expect("identity is an element of y(a)(a)");
                let names: Vec<String> = maps
                    .iter()
                    .map(|nu| kp.set(a)[nu.apply(a, id_pos)].to_string())
                    .collect();
                sets.push(names);
                maps_per_obj.push(maps);
            }
            // action along m: a -> a' precomposes with y(m)
            let mut actions = Vec::with_capacity(sub.n_morphisms());
            for m in sub.morphisms() {
                let amb = inclusion.apply_mor(m);
                let (a, a2) = (sub.dom(m), sub.cod(m));
                let ym = yoneda_map(base, amb);
                let mut act = Vec::with_capacity(maps_per_obj[a2.0].len());
                for nu in &maps_per_obj[a2.0] {
                    let pulled = PresheafMap::compose(nu, &ym).expect("composable");
                    let pos = maps_per_obj[a.0]
                        .iter()
                        .position(|cand| *cand == pulled)
                        .expect("precomposition lands among enumerated maps");
                    act.push(pos);
                }
                actions.push(act);
            }
            let e = TabularPresheaf::new(Arc::clone(&sub), sets, actions)?;
            Ok((sub, e))
        }
    }
}

/// Minimal union-find with path compression; the representative is the
/// least index, so canonical names are stable under enumeration order.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    /// Keeps the smaller index as representative.
    pub(crate) fn union(&mut self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return false;
        }
        let (lo, hi) = (ri.min(rj), ri.max(rj));
        self.parent[hi] = lo;
        true
    }
}
