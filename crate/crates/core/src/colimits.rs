//! Finite colimits of tabular presheaves, computed pointwise.
//!
//! Coproducts tag element names with their summand index; quotients run
//! union-find over the tagged names, saturate class merges under presheaf
//! actions to a fixpoint, and name each class by its lexicographically
//! least member. Every constructor returns enough data to verify the
//! universal property against a competing cocone.

use crate::fincat::{FinCategory, ObjId};
use crate::presheaf::{PresheafError, PresheafMap, TabularPresheaf, UnionFind};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite diagram of presheaves over one base.
#[derive(Debug, Clone, Default)]
pub struct Diagram {
    pub nodes: Vec<TabularPresheaf>,
    /// (from node, to node, map)
    pub edges: Vec<(usize, usize, PresheafMap)>,
}

impl Diagram {
    pub fn new(
        nodes: Vec<TabularPresheaf>,
        edges: Vec<(usize, usize, PresheafMap)>,
    ) -> Result<Self, PresheafError> {
        for (from, to, map) in &edges {
            if map.source() != &nodes[*from] || map.target() != &nodes[*to] {
                return Err(PresheafError::NotComposable);
            }
        }
        Ok(Diagram { nodes, edges })
    }
}

/// A commuting cocone under a diagram, with its colimit witness.
#[derive(Debug, Clone)]
pub struct Cocone {
    pub diagram: Diagram,
    pub apex: TabularPresheaf,
    pub legs: Vec<PresheafMap>,
}

impl Cocone {
    /// Checks that every diagram edge commutes with the legs.
    pub fn commutes(&self) -> bool {
        self.diagram.edges.iter().all(|(from, to, map)| {
            PresheafMap::compose(&self.legs[*to], map)
                .map(|c| c == self.legs[*from])
                .unwrap_or(false)
        })
    }

    /// Mediating map to a competing cocone; fails if the candidate legs do
    /// not commute or the mediator would be ill-defined.
    pub fn mediate(&self, competing: &[PresheafMap]) -> Result<PresheafMap, PresheafError> {
        if competing.len() != self.legs.len() {
            return Err(PresheafError::NotComposable);
        }
        let apex_target = competing
            .first()
            .map(|m| m.target().clone())
            .unwrap_or_else(|| {
                TabularPresheaf::initial(Arc::clone(self.apex.base()))
            });
        let base = self.apex.base();
        let mut components: Vec<Vec<Option<usize>>> = base
            .objects()
            .map(|a| vec![None; self.apex.size(a)])
            .collect();
        for (i, leg) in self.legs.iter().enumerate() {
            for a in base.objects() {
                for x in 0..leg.source().size(a) {
                    let class = leg.apply(a, x);
                    let value = competing[i].apply(a, x);
                    match components[a.0][class] {
                        None => components[a.0][class] = Some(value),
                        Some(v) if v == value => {}
                        Some(_) => return Err(PresheafError::NotComposable),
                    }
                }
            }
        }
        let components: Vec<Vec<usize>> = components
            .into_iter()
            .map(|c| c.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(PresheafError::NotComposable)?;
        PresheafMap::new(self.apex.clone(), apex_target, components)
    }
}

fn same_base<'a>(
    xs: impl IntoIterator<Item = &'a TabularPresheaf>,
) -> Result<Arc<FinCategory>, PresheafError> {
    let mut iter = xs.into_iter();
    let first = iter.next().expect("nonempty");
    for x in iter {
        if x.base() != first.base() {
            return Err(PresheafError::BaseMismatch);
        }
    }
    Ok(Arc::clone(first.base()))
}

/// Pointwise disjoint union, elements tagged `"{i}:{name}"`.
pub fn coproduct(
    xs: &[TabularPresheaf],
    base: &Arc<FinCategory>,
) -> Result<(TabularPresheaf, Vec<PresheafMap>), PresheafError> {
    let base = if xs.is_empty() {
        Arc::clone(base)
    } else {
        same_base(xs.iter())?
    };
    let mut sets: Vec<Vec<String>> = base.objects().map(|_| Vec::new()).collect();
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let mut per_obj = Vec::with_capacity(base.n_objects());
        for a in base.objects() {
            per_obj.push(sets[a.0].len());
            for name in x.set(a) {
                sets[a.0].push(format!("{i}:{name}"));
            }
        }
        offsets.push(per_obj);
    }
    let actions: Vec<Vec<usize>> = base
        .morphisms()
        .map(|m| {
            let (a, b) = (base.dom(m), base.cod(m));
            let mut act = Vec::with_capacity(sets[b.0].len());
            for (i, x) in xs.iter().enumerate() {
                for xv in 0..x.size(b) {
                    act.push(offsets[i][a.0] + x.act(m, xv));
                }
            }
            act
        })
        .collect();
    let sum = TabularPresheaf::new(Arc::clone(&base), sets, actions)?;
    let injections = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let components: Vec<Vec<usize>> = base
                .objects()
                .map(|a| (0..x.size(a)).map(|v| offsets[i][a.0] + v).collect())
                .collect();
            PresheafMap::new(x.clone(), sum.clone(), components)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((sum, injections))
}

/// Quotient of `target` by the equivalence generated by `pairs` at each
/// object, saturated under presheaf actions. Returns the quotient presheaf
/// and the projection. Class names are least member names.
fn quotient(
    target: &TabularPresheaf,
    pairs: &[(ObjId, usize, usize)],
) -> Result<(TabularPresheaf, PresheafMap), PresheafError> {
    let base = target.base();
    let mut uf_per_obj: Vec<UnionFind> = base
        .objects()
        .map(|a| UnionFind::new(target.size(a)))
        .collect();
    for &(a, x, y) in pairs {
        uf_per_obj[a.0].union(x, y);
    }
    // saturate: if x ~ y at cod(m) then X(m)x ~ X(m)y at dom(m);
    // iterate morphisms in sorted order to a fixpoint
    loop {
        let mut changed = false;
        for m in base.morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            // group cod-elements by representative, union their images
            let mut rep_to_image: BTreeMap<usize, usize> = BTreeMap::new();
            for x in 0..target.size(b) {
                let r = uf_per_obj[b.0].find(x);
                let image = target.act(m, x);
                match rep_to_image.get(&r) {
                    None => {
                        rep_to_image.insert(r, image);
                    }
                    Some(&first) => {
                        changed |= uf_per_obj[a.0].union(first, image);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // canonical representative per class: least element name
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(base.n_objects());
    let mut names: Vec<Vec<String>> = Vec::with_capacity(base.n_objects());
    for a in base.objects() {
        let n = target.size(a);
        let mut rep_name: BTreeMap<usize, String> = BTreeMap::new();
        for x in 0..n {
            let r = uf_per_obj[a.0].find(x);
            let name = &target.set(a)[x];
            match rep_name.get_mut(&r) {
                None => {
                    rep_name.insert(r, name.clone());
                }
                Some(existing) => {
                    if name < existing {
                        *existing = name.clone();
                    }
                }
            }
        }
        let mut class_names: Vec<String> = rep_name.values().cloned().collect();
        class_names.sort();
        let name_pos: BTreeMap<&String, usize> =
            class_names.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut assignment = vec![0usize; n];
        for x in 0..n {
            let r = uf_per_obj[a.0].find(x);
            assignment[x] = name_pos[&rep_name[&r]];
        }
        class_of.push(assignment);
        names.push(class_names);
    }
    let class_count: Vec<usize> = names.iter().map(|n| n.len()).collect();
    let actions: Vec<Vec<usize>> = base
        .morphisms()
        .map(|m| {
            let (a, b) = (base.dom(m), base.cod(m));
            let mut act = vec![usize::MAX; class_count[b.0]];
            for x in 0..target.size(b) {
                act[class_of[b.0][x]] = class_of[a.0][target.act(m, x)];
            }
            debug_assert!(act.iter().all(|&v| v != usize::MAX));
            act
        })
        .collect();
    let q = TabularPresheaf::new(Arc::clone(base), names, actions)?;
    let projection = PresheafMap::new(target.clone(), q.clone(), class_of)?;
    Ok((q, projection))
}

/// Coequalizer of a parallel pair: the quotient of the common target by
/// `f(x) ~ g(x)`, with its projection.
pub fn coequalizer(
    f: &PresheafMap,
    g: &PresheafMap,
) -> Result<(TabularPresheaf, PresheafMap), PresheafError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(PresheafError::NotComposable);
    }
    let base = f.base();
    let mut pairs = Vec::new();
    for a in base.objects() {
        for x in 0..f.source().size(a) {
            pairs.push((a, f.apply(a, x), g.apply(a, x)));
        }
    }
    quotient(f.target(), &pairs)
}

/// A pushout square with its legs.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: TabularPresheaf,
    /// B -> P
    pub left: PresheafMap,
    /// C -> P
    pub right: PresheafMap,
}

impl Pushout {
    /// Mediating map for a competing cocone `(u: B -> Z, v: C -> Z)`.
    pub fn mediate(
        &self,
        u: &PresheafMap,
        v: &PresheafMap,
    ) -> Result<PresheafMap, PresheafError> {
        let diagram = Diagram {
            nodes: vec![
                self.left.source().clone(),
                self.right.source().clone(),
            ],
            edges: vec![],
        };
        let cocone = Cocone {
            diagram,
            apex: self.object.clone(),
            legs: vec![self.left.clone(), self.right.clone()],
        };
        cocone.mediate(&[u.clone(), v.clone()])
    }
}

/// Pushout of `f: A -> B` along `g: A -> C`, as the coequalizer of the two
/// composites into `B ⊔ C`.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<Pushout, PresheafError> {
    if f.source() != g.source() {
        return Err(PresheafError::NotComposable);
    }
    let (_, injections) = coproduct(&[f.target().clone(), g.target().clone()], f.base())?;
    let into_b = PresheafMap::compose(&injections[0], f)?;
    let into_c = PresheafMap::compose(&injections[1], g)?;
    let (object, projection) = coequalizer(&into_b, &into_c)?;
    let left = PresheafMap::compose(&projection, &injections[0])?;
    let right = PresheafMap::compose(&projection, &injections[1])?;
    Ok(Pushout {
        object,
        left,
        right,
    })
}

/// Colimit of an arbitrary finite diagram: coproduct of the nodes
/// quotiented by all edge relations.
pub fn finite_colimit(diagram: &Diagram, base: &Arc<FinCategory>) -> Result<Cocone, PresheafError> {
    let (sum, injections) = coproduct(&diagram.nodes, base)?;
    let base = Arc::clone(sum.base());
    let mut pairs = Vec::new();
    for (from, to, map) in &diagram.edges {
        for a in base.objects() {
            for x in 0..diagram.nodes[*from].size(a) {
                pairs.push((
                    a,
                    injections[*from].apply(a, x),
                    injections[*to].apply(a, map.apply(a, x)),
                ));
            }
        }
    }
    let (apex, projection) = quotient(&sum, &pairs)?;
    let legs = injections
        .iter()
        .map(|inj| PresheafMap::compose(&projection, inj))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cocone {
        diagram: diagram.clone(),
        apex,
        legs,
    })
}

/// Colimit of a composable chain `X0 -> X1 -> ... -> Xn`: the last object,
/// with composite legs. Finite chains are trivially filtered, so this is
/// provided as the uniform interface for closure checks.
pub fn chain_colimit(
    first: &TabularPresheaf,
    maps: &[PresheafMap],
) -> Result<Cocone, PresheafError> {
    let mut nodes = vec![first.clone()];
    for (i, m) in maps.iter().enumerate() {
        if m.source() != &nodes[i] {
            return Err(PresheafError::NotComposable);
        }
        nodes.push(m.target().clone());
    }
    let apex = nodes.last().unwrap().clone();
    let mut legs = vec![PresheafMap::identity(&apex)];
    for m in maps.iter().rev() {
        let prev = legs.last().unwrap();
        legs.push(PresheafMap::compose(prev, m)?);
    }
    legs.reverse();
    let edges = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (i, i + 1, m.clone()))
        .collect();
    Ok(Cocone {
        diagram: Diagram { nodes, edges },
        apex,
        legs,
    })
}

/// The canonical diagram of `K` with respect to a finite family `A` of
/// presheaves: the comma category `A ↓ K`, its forgetful diagram, the
/// diagram's colimit, and the comparison map into `K`.
#[derive(Debug, Clone)]
pub struct CanonicalDiagram {
    /// objects of `A ↓ K`: (index into `A`, map into `K`)
    pub comma_objects: Vec<(usize, PresheafMap)>,
    /// morphisms of `A ↓ K` as (source object, target object, connecting map)
    pub comma_morphisms: Vec<(usize, usize, PresheafMap)>,
    pub cocone: Cocone,
    /// colim -> K
    pub comparison: PresheafMap,
}

pub fn canonical_diagram(
    family: &[TabularPresheaf],
    k: &TabularPresheaf,
    limit: crate::lifting::SearchLimit,
) -> Result<CanonicalDiagram, PresheafError> {
    let base = Arc::clone(k.base());
    let mut comma_objects = Vec::new();
    for (i, a) in family.iter().enumerate() {
        if a.base() != &base {
            return Err(PresheafError::BaseMismatch);
        }
        for phi in crate::lifting::enumerate_maps(a, k, limit)
            .map_err(crate::lifting::LiftError::into_presheaf)?
        {
            comma_objects.push((i, phi));
        }
    }
    let mut comma_morphisms = Vec::new();
    for (src_idx, (i, phi)) in comma_objects.iter().enumerate() {
        for (tgt_idx, (j, psi)) in comma_objects.iter().enumerate() {
            for connect in crate::lifting::enumerate_maps(&family[*i], &family[*j], limit)
                .map_err(crate::lifting::LiftError::into_presheaf)?
            {
                let around = PresheafMap::compose(psi, &connect)?;
                if &around == phi {
                    comma_morphisms.push((src_idx, tgt_idx, connect));
                }
            }
        }
    }
    let nodes: Vec<TabularPresheaf> = comma_objects
        .iter()
        .map(|(i, _)| family[*i].clone())
        .collect();
    let edges: Vec<(usize, usize, PresheafMap)> = comma_morphisms
        .iter()
        .filter(|(s, t, m)| !(s == t && m.is_identity()))
        .cloned()
        .collect();
    let diagram = Diagram { nodes, edges };
    let cocone = finite_colimit(&diagram, &base)?;
    let competing: Vec<PresheafMap> = comma_objects.iter().map(|(_, phi)| phi.clone()).collect();
    let comparison = cocone.mediate(&competing)?;
    Ok(CanonicalDiagram {
        comma_objects,
        comma_morphisms,
        cocone,
        comparison,
    })
}
