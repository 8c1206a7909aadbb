//! Exhaustive solving of lifting problems and the box/perp relations.
//!
//! Natural transformations are enumerated by backtracking over element
//! images with naturality constraint propagation. Objects are processed in
//! descending set-size order so large components force their faces early;
//! results are normalized by sorting, so the order heuristic never shows in
//! the output. Every search carries a node budget — exceeding it is an
//! error, never a silent `false`.

use crate::colimits;
use crate::fincat::ObjId;
use crate::presheaf::{PresheafError, PresheafMap, TabularPresheaf};
use std::sync::Arc;
use thiserror::Error;

/// Backtracking node budget for one operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimit(pub u64);

impl Default for SearchLimit {
    fn default() -> Self {
        SearchLimit(10_000_000)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("search exceeded {limit} backtracking nodes")]
    SearchExceeded { limit: u64 },
    #[error("square does not commute")]
    NotCommuting,
    #[error("cellular certificate fails at stage {stage}: {reason}")]
    BadStage { stage: usize, reason: String },
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
}

impl From<LiftError> for PresheafError {
    fn from(e: LiftError) -> PresheafError {
        match e {
            LiftError::Presheaf(p) => p,
            other => PresheafError::WindowTooSmall(other.to_string()),
        }
    }
}

impl LiftError {
    pub fn into_presheaf(self) -> PresheafError {
        self.into()
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: SearchLimit) -> Budget {
        Budget {
            used: 0,
            limit: limit.0,
        }
    }

    fn tick(&mut self) -> Result<(), LiftError> {
        self.used += 1;
        if self.used > self.limit {
            Err(LiftError::SearchExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Backtracking enumeration of natural transformations `X -> Y`, optionally
/// pinned on some elements and filtered per element.
struct MapSearch<'a> {
    x: &'a TabularPresheaf,
    y: &'a TabularPresheaf,
    /// variables (object, element) in decision order
    order: Vec<(usize, usize)>,
    assign: Vec<Vec<Option<usize>>>,
    /// out-edges per variable: assigning (b, x) forces (a, x') via morphism m
    edges: Vec<Vec<Vec<(usize, usize, usize)>>>,
    allowed: Option<&'a dyn Fn(ObjId, usize, usize) -> bool>,
    trail: Vec<(usize, usize)>,
    solutions: Vec<Vec<Vec<usize>>>,
    max_solutions: usize,
}

impl<'a> MapSearch<'a> {
    fn new(
        x: &'a TabularPresheaf,
        y: &'a TabularPresheaf,
        allowed: Option<&'a dyn Fn(ObjId, usize, usize) -> bool>,
        max_solutions: usize,
    ) -> Result<MapSearch<'a>, LiftError> {
        if x.base() != y.base() {
            return Err(PresheafError::BaseMismatch.into());
        }
        let base = x.base();
        let mut objs: Vec<usize> = (0..base.n_objects()).collect();
        objs.sort_by_key(|&a| (std::cmp::Reverse(x.size(ObjId(a))), a));
        let order: Vec<(usize, usize)> = objs
            .iter()
            .flat_map(|&a| (0..x.size(ObjId(a))).map(move |e| (a, e)))
            .collect();
        let mut edges: Vec<Vec<Vec<(usize, usize, usize)>>> = base
            .objects()
            .map(|a| vec![Vec::new(); x.size(a)])
            .collect();
        for m in base.morphisms() {
            if base.is_identity(m) {
                continue;
            }
            let (a, b) = (base.dom(m), base.cod(m));
            for xe in 0..x.size(b) {
                edges[b.0][xe].push((a.0, x.act(m, xe), m.0));
            }
        }
        let assign = base.objects().map(|a| vec![None; x.size(a)]).collect();
        Ok(MapSearch {
            x,
            y,
            order,
            assign,
            edges,
            allowed,
            trail: Vec::new(),
            solutions: Vec::new(),
            max_solutions,
        })
    }

    fn value_ok(&self, obj: usize, elem: usize, val: usize) -> bool {
        match self.allowed {
            Some(f) => f(ObjId(obj), elem, val),
            None => true,
        }
    }

    /// Assigns and propagates; returns false on conflict (trail still grows,
    /// callers undo to their mark).
    fn propagate(&mut self, obj: usize, elem: usize, val: usize) -> bool {
        match self.assign[obj][elem] {
            Some(v) => return v == val,
            None => {
                if !self.value_ok(obj, elem, val) {
                    return false;
                }
                self.assign[obj][elem] = Some(val);
                self.trail.push((obj, elem));
            }
        }
        let mut queue = vec![(obj, elem)];
        while let Some((b, xe)) = queue.pop() {
            let yv = self.assign[b][xe].expect("assigned");
            for i in 0..self.edges[b][xe].len() {
                let (a, xf, m) = self.edges[b][xe][i];
                let forced = self.y.act(crate::fincat::MorId(m), yv);
                match self.assign[a][xf] {
                    Some(v) => {
                        if v != forced {
                            return false;
                        }
                    }
                    None => {
                        if !self.value_ok(a, xf, forced) {
                            return false;
                        }
                        self.assign[a][xf] = Some(forced);
                        self.trail.push((a, xf));
                        queue.push((a, xf));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (a, e) = self.trail.pop().unwrap();
            self.assign[a][e] = None;
        }
    }

    fn record(&mut self) {
        let components: Vec<Vec<usize>> = self
            .assign
            .iter()
            .map(|c| c.iter().map(|v| v.expect("complete")).collect())
            .collect();
        self.solutions.push(components);
    }

    fn search(&mut self, pos: usize, budget: &mut Budget) -> Result<(), LiftError> {
        if self.solutions.len() >= self.max_solutions {
            return Ok(());
        }
        let mut i = pos;
        while i < self.order.len() {
            let (a, e) = self.order[i];
            if self.assign[a][e].is_none() {
                break;
            }
            i += 1;
        }
        if i == self.order.len() {
            self.record();
            return Ok(());
        }
        let (a, e) = self.order[i];
        for val in 0..self.y.size(ObjId(a)) {
            budget.tick()?;
            let mark = self.trail.len();
            if self.propagate(a, e, val) {
                self.search(i + 1, budget)?;
                if self.solutions.len() >= self.max_solutions {
                    self.undo(mark);
                    return Ok(());
                }
            }
            self.undo(mark);
        }
        Ok(())
    }

    fn run(
        mut self,
        pins: &[(ObjId, usize, usize)],
        budget: &mut Budget,
    ) -> Result<Vec<PresheafMap>, LiftError> {
        for &(a, e, v) in pins {
            if !self.propagate(a.0, e, v) {
                return Ok(Vec::new());
            }
        }
        self.search(0, budget)?;
        let mut solutions = self.solutions;
        solutions.sort();
        solutions
            .into_iter()
            .map(|components| {
                PresheafMap::new(self.x.clone(), self.y.clone(), components)
                    .map_err(LiftError::from)
            })
            .collect()
    }
}

/// All natural transformations `X -> Y`, sorted by component serialization.
pub fn enumerate_maps(
    x: &TabularPresheaf,
    y: &TabularPresheaf,
    limit: SearchLimit,
) -> Result<Vec<PresheafMap>, LiftError> {
    let mut budget = Budget::new(limit);
    MapSearch::new(x, y, None, usize::MAX)?.run(&[], &mut budget)
}

/// All maps `w: cod(f) -> Z` with `w . f = given`, i.e. extensions of
/// `given: dom(f) -> Z` along `f`.
pub fn maps_extending(
    f: &PresheafMap,
    given: &PresheafMap,
    limit: SearchLimit,
) -> Result<Vec<PresheafMap>, LiftError> {
    if given.source() != f.source() {
        return Err(PresheafError::NotComposable.into());
    }
    let base = Arc::clone(f.base());
    let mut pins = Vec::new();
    for a in base.objects() {
        for x in 0..f.source().size(a) {
            pins.push((a, f.apply(a, x), given.apply(a, x)));
        }
    }
    let mut budget = Budget::new(limit);
    MapSearch::new(f.target(), given.target(), None, usize::MAX)?.run(&pins, &mut budget)
}

/// A commutative square `(f, g, u, v)` with `g o u = v o f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingProblem {
    /// f: A -> B
    pub left: PresheafMap,
    /// g: C -> D
    pub right: PresheafMap,
    /// u: A -> C
    pub top: PresheafMap,
    /// v: B -> D
    pub bottom: PresheafMap,
}

/// A filler `d: B -> C` with `d o f = u` and `g o d = v`.
pub type Diagonal = PresheafMap;

impl LiftingProblem {
    pub fn new(
        left: PresheafMap,
        right: PresheafMap,
        top: PresheafMap,
        bottom: PresheafMap,
    ) -> Result<Self, LiftError> {
        if top.source() != left.source()
            || top.target() != right.source()
            || bottom.source() != left.target()
            || bottom.target() != right.target()
        {
            return Err(PresheafError::NotComposable.into());
        }
        let down = PresheafMap::compose(&right, &top).map_err(LiftError::from)?;
        let over = PresheafMap::compose(&bottom, &left).map_err(LiftError::from)?;
        if down != over {
            return Err(LiftError::NotCommuting);
        }
        Ok(LiftingProblem {
            left,
            right,
            top,
            bottom,
        })
    }
}

/// All diagonals of the square, in deterministic order.
pub fn solve(problem: &LiftingProblem, limit: SearchLimit) -> Result<Vec<Diagonal>, LiftError> {
    let mut budget = Budget::new(limit);
    solve_with_budget(problem, usize::MAX, &mut budget)
}

/// At most `max_solutions` diagonals; used for existence and uniqueness.
pub fn solve_limited(
    problem: &LiftingProblem,
    max_solutions: usize,
    limit: SearchLimit,
) -> Result<Vec<Diagonal>, LiftError> {
    let mut budget = Budget::new(limit);
    solve_with_budget(problem, max_solutions, &mut budget)
}

fn solve_with_budget(
    problem: &LiftingProblem,
    max_solutions: usize,
    budget: &mut Budget,
) -> Result<Vec<Diagonal>, LiftError> {
    let b = problem.left.target();
    let c = problem.right.source();
    let base = Arc::clone(b.base());
    let right = &problem.right;
    let bottom = &problem.bottom;
    let filter = move |a: ObjId, elem: usize, val: usize| -> bool {
        right.apply(a, val) == bottom.apply(a, elem)
    };
    let mut pins = Vec::new();
    for a in base.objects() {
        for x in 0..problem.left.source().size(a) {
            pins.push((a, problem.left.apply(a, x), problem.top.apply(a, x)));
        }
    }
    MapSearch::new(b, c, Some(&filter), max_solutions)?.run(&pins, budget)
}

/// Enumerate all commutative squares `(u, v)` from `f` to `g` and feed each
/// to `check`; stops early when `check` returns false.
fn all_squares(
    f: &PresheafMap,
    g: &PresheafMap,
    budget: &mut Budget,
    mut check: impl FnMut(&LiftingProblem, &mut Budget) -> Result<bool, LiftError>,
) -> Result<bool, LiftError> {
    if f.base() != g.base() {
        return Err(PresheafError::BaseMismatch.into());
    }
    let base = Arc::clone(f.base());
    let tops = MapSearch::new(f.source(), g.source(), None, usize::MAX)?.run(&[], budget)?;
    for u in tops {
        let gu = PresheafMap::compose(g, &u).map_err(LiftError::from)?;
        // bottoms v with v o f = g o u: pin on the image of f
        let mut pins = Vec::new();
        for a in base.objects() {
            for x in 0..f.source().size(a) {
                pins.push((a, f.apply(a, x), gu.apply(a, x)));
            }
        }
        let bottoms =
            MapSearch::new(f.target(), g.target(), None, usize::MAX)?.run(&pins, budget)?;
        for v in bottoms {
            let problem = LiftingProblem {
                left: f.clone(),
                right: g.clone(),
                top: u.clone(),
                bottom: v,
            };
            if !check(&problem, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f □ g`: every commutative square from `f` to `g` has a diagonal.
pub fn box_rel(f: &PresheafMap, g: &PresheafMap, limit: SearchLimit) -> Result<bool, LiftError> {
    let mut budget = Budget::new(limit);
    all_squares(f, g, &mut budget, |p, budget| {
        Ok(!solve_with_budget(p, 1, budget)?.is_empty())
    })
}

/// `f ⊥ g`: every commutative square from `f` to `g` has a unique diagonal.
pub fn perp_rel(f: &PresheafMap, g: &PresheafMap, limit: SearchLimit) -> Result<bool, LiftError> {
    let mut budget = Budget::new(limit);
    all_squares(f, g, &mut budget, |p, budget| {
        Ok(solve_with_budget(p, 2, budget)?.len() == 1)
    })
}

/// `X` is injective to every generator: `h □ (X -> 1)` for all `h`.
pub fn injective(
    x: &TabularPresheaf,
    class: &[PresheafMap],
    limit: SearchLimit,
) -> Result<bool, LiftError> {
    let bang = PresheafMap::to_terminal(x);
    for h in class {
        if !box_rel(h, &bang, limit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X` is orthogonal to every generator: `h ⊥ (X -> 1)` for all `h`.
pub fn orthogonal(
    x: &TabularPresheaf,
    class: &[PresheafMap],
    limit: SearchLimit,
) -> Result<bool, LiftError> {
    let bang = PresheafMap::to_terminal(x);
    for h in class {
        if !perp_rel(h, &bang, limit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Arrow-category section/retraction pair exhibiting `f` as a retract of `f'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractWitness {
    /// section on domains: dom f -> dom f'
    pub section_dom: PresheafMap,
    /// section on codomains: cod f -> cod f'
    pub section_cod: PresheafMap,
    /// retraction on domains: dom f' -> dom f
    pub retraction_dom: PresheafMap,
    /// retraction on codomains: cod f' -> cod f
    pub retraction_cod: PresheafMap,
}

impl RetractWitness {
    pub fn identity(f: &PresheafMap) -> RetractWitness {
        RetractWitness {
            section_dom: PresheafMap::identity(f.source()),
            section_cod: PresheafMap::identity(f.target()),
            retraction_dom: PresheafMap::identity(f.source()),
            retraction_cod: PresheafMap::identity(f.target()),
        }
    }
}

/// Checks the two arrow-category composites: section and retraction are
/// morphisms `f -> f' -> f` composing to the identity on `f`.
pub fn verify_retract(f: &PresheafMap, f_prime: &PresheafMap, w: &RetractWitness) -> bool {
    let sec_square = match (
        PresheafMap::compose(f_prime, &w.section_dom),
        PresheafMap::compose(&w.section_cod, f),
    ) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    let ret_square = match (
        PresheafMap::compose(f, &w.retraction_dom),
        PresheafMap::compose(&w.retraction_cod, f_prime),
    ) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    let dom_id = PresheafMap::compose(&w.retraction_dom, &w.section_dom)
        .map(|c| c.is_identity())
        .unwrap_or(false);
    let cod_id = PresheafMap::compose(&w.retraction_cod, &w.section_cod)
        .map(|c| c.is_identity())
        .unwrap_or(false);
    sec_square && ret_square && dom_id && cod_id
}

/// One stage of a cellular composite: cells attached along generators.
#[derive(Debug, Clone)]
pub struct CellularStage {
    /// (generator index, attaching map `dom(h) -> A_i`)
    pub attachments: Vec<(usize, PresheafMap)>,
    /// the claimed pushout object `A_{i+1}`
    pub result: TabularPresheaf,
    /// `A_i -> A_{i+1}`
    pub stage_map: PresheafMap,
    /// `⊔ cod(h) -> A_{i+1}`
    pub cocone_leg: PresheafMap,
}

/// A staged witness that a morphism is a finite composite of pushouts of
/// generators.
#[derive(Debug, Clone)]
pub struct CellularCertificate {
    pub start: TabularPresheaf,
    pub stages: Vec<CellularStage>,
    /// the claimed composite `A_0 -> A_k`
    pub composite: PresheafMap,
}

/// Re-verifies a cellular certificate against the generator class: each
/// stage square must commute and be a pushout (mediating comparison with the
/// recomputed pushout is an isomorphism), and the stage maps must compose to
/// the claimed morphism.
pub fn verify_cellular(
    cert: &CellularCertificate,
    class: &[PresheafMap],
) -> Result<(), LiftError> {
    let bad = |stage: usize, reason: &str| LiftError::BadStage {
        stage,
        reason: reason.to_string(),
    };
    let mut current = cert.start.clone();
    let mut composite = PresheafMap::identity(&cert.start);
    for (k, stage) in cert.stages.iter().enumerate() {
        let mut doms = Vec::new();
        let mut cods = Vec::new();
        for (gen, u) in &stage.attachments {
            let h = class
                .get(*gen)
                .ok_or_else(|| bad(k, "generator index out of range"))?;
            if u.source() != h.source() {
                return Err(bad(k, "attaching map domain mismatch"));
            }
            if u.target() != &current {
                return Err(bad(k, "attaching map target is not the stage object"));
            }
            doms.push(h.source().clone());
            cods.push(h.target().clone());
        }
        let base = Arc::clone(current.base());
        let (cd, dom_injections) =
            colimits::coproduct(&doms, &base).map_err(LiftError::from)?;
        let (cc, cod_injections) =
            colimits::coproduct(&cods, &base).map_err(LiftError::from)?;
        // attach = <u>: CD -> A_i, bundle = ⊔h: CD -> CC
        let attach = tuple_map(&cd, &current, &dom_injections, |t, a, x| {
            stage.attachments[t].1.apply(a, x)
        })
        .map_err(|_| bad(k, "attaching tuple is not natural"))?;
        let bundle = tuple_map(&cd, &cc, &dom_injections, |t, a, x| {
            cod_injections[t].apply(a, class[stage.attachments[t].0].apply(a, x))
        })
        .map_err(|_| bad(k, "generator bundle is not natural"))?;
        let square_left = PresheafMap::compose(&stage.stage_map, &attach)
            .map_err(|_| bad(k, "stage map does not compose with attachments"))?;
        let square_right = PresheafMap::compose(&stage.cocone_leg, &bundle)
            .map_err(|_| bad(k, "cocone leg does not compose with bundle"))?;
        if square_left != square_right {
            return Err(bad(k, "stage square does not commute"));
        }
        let recomputed = colimits::pushout(&attach, &bundle).map_err(LiftError::from)?;
        let mediating = recomputed
            .mediate(&stage.stage_map, &stage.cocone_leg)
            .map_err(|_| bad(k, "claimed cocone does not factor the pushout"))?;
        if !mediating.is_iso() {
            return Err(bad(k, "stage square is not a pushout"));
        }
        composite = PresheafMap::compose(&stage.stage_map, &composite)
            .map_err(|_| bad(k, "stage map not composable with composite"))?;
        current = stage.result.clone();
    }
    if composite != cert.composite {
        return Err(LiftError::BadStage {
            stage: cert.stages.len(),
            reason: "claimed composite differs from the composed stage maps".into(),
        });
    }
    Ok(())
}

/// Builds the map out of a coproduct whose restriction along injection `t`
/// sends `(a, x)` to `value(t, a, x)` in `target`.
pub(crate) fn tuple_map(
    sum: &TabularPresheaf,
    target: &TabularPresheaf,
    injections: &[PresheafMap],
    value: impl Fn(usize, ObjId, usize) -> usize,
) -> Result<PresheafMap, PresheafError> {
    let base = sum.base();
    let mut components: Vec<Vec<usize>> = base
        .objects()
        .map(|a| vec![usize::MAX; sum.size(a)])
        .collect();
    for (t, inj) in injections.iter().enumerate() {
        for a in base.objects() {
            for x in 0..inj.source().size(a) {
                components[a.0][inj.apply(a, x)] = value(t, a, x);
            }
        }
    }
    PresheafMap::new(sum.clone(), target.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::terminal_category;
    use crate::presheaf::yoneda;

    fn set(names: &[&str]) -> TabularPresheaf {
        TabularPresheaf::constant_set(terminal_category(), names)
    }

    fn set_map(src: &TabularPresheaf, tgt: &TabularPresheaf, images: &[usize]) -> PresheafMap {
        PresheafMap::new(src.clone(), tgt.clone(), vec![images.to_vec()]).unwrap()
    }

    #[test]
    fn initial_source_has_one_map() {
        let x = TabularPresheaf::initial(terminal_category());
        let y = set(&["a", "b"]);
        let maps = enumerate_maps(&x, &y, SearchLimit::default()).unwrap();
        assert_eq!(maps.len(), 1);
    }

    #[test]
    fn terminal_target_has_one_map() {
        let x = set(&["a", "b", "c"]);
        let y = TabularPresheaf::terminal(terminal_category());
        let maps = enumerate_maps(&x, &y, SearchLimit::default()).unwrap();
        assert_eq!(maps.len(), 1);
    }

    #[test]
    fn yoneda_self_maps_match_base_homs() {
        let m = crate::fincat::materialize(&crate::fincat::OrdinalCategory, 4).unwrap();
        for name in ["1", "2", "3"] {
            let a = m.category.object(name).unwrap();
            let ya = yoneda(&m.category, a);
            let maps = enumerate_maps(&ya, &ya, SearchLimit::default()).unwrap();
            assert_eq!(maps.len(), m.category.hom(a, a).len(), "object {name}");
        }
    }

    #[test]
    fn identity_square_contains_identity_diagonal() {
        let x = set(&["a", "b"]);
        let f = set_map(&x, &x, &[0, 1]);
        let p = LiftingProblem::new(f.clone(), f.clone(), f.clone(), f.clone()).unwrap();
        let diagonals = solve(&p, SearchLimit::default()).unwrap();
        assert!(diagonals.iter().any(|d| d.is_identity()));
    }

    #[test]
    fn iso_right_leg_always_solves() {
        let a = set(&["x"]);
        let b = set(&["p", "q"]);
        let c = set(&["c0", "c1"]);
        let d = set(&["d0", "d1"]);
        let f = set_map(&a, &b, &[0]);
        let g = set_map(&c, &d, &[1, 0]); // iso
        let u = set_map(&a, &c, &[0]);
        let v = set_map(&b, &d, &[1, 0]);
        let p = LiftingProblem::new(f, g.clone(), u, v).unwrap();
        let diagonals = solve(&p, SearchLimit::default()).unwrap();
        assert_eq!(diagonals.len(), 1);
        let ginv = g.inverse().unwrap();
        assert_eq!(
            diagonals[0],
            PresheafMap::compose(&ginv, &p.bottom).unwrap()
        );
    }

    #[test]
    fn iso_on_the_right_gives_box_and_perp() {
        let two = set(&["a", "b"]);
        let swap = set_map(&two, &two, &[1, 0]);
        let one = set(&["p"]);
        let f = set_map(&one, &two, &[0]);
        assert!(box_rel(&f, &swap, SearchLimit::default()).unwrap());
        assert!(perp_rel(&f, &swap, SearchLimit::default()).unwrap());
    }

    #[test]
    fn box_and_perp_against_fold() {
        // f = 0 -> 1, g = 2 -> 1 (fold): box holds, perp fails
        let empty = TabularPresheaf::initial(terminal_category());
        let one = set(&["*"]);
        let two = set(&["a", "b"]);
        let f = PresheafMap::new(empty, one.clone(), vec![vec![]]).unwrap();
        let fold = set_map(&two, &one, &[0, 0]);
        assert!(box_rel(&f, &fold, SearchLimit::default()).unwrap());
        assert!(!perp_rel(&f, &fold, SearchLimit::default()).unwrap());
    }

    #[test]
    fn box_fails_for_non_split_epi_vs_itself() {
        // fold: 2 -> 1 against itself: the identity square has no section-like
        // diagonal... actually fold vs fold: diagonal d: 1 -> 2 with fold d = id
        // exists (pick either point) and d fold = u must hold; u: 2 -> 2 is a
        // square side. Use instead f = fold, g = fold with u = swap, v = id:
        // d(fold(x)) = swap(x) is impossible since fold collapses.
        let one = set(&["*"]);
        let two = set(&["a", "b"]);
        let fold = set_map(&two, &one, &[0, 0]);
        let swap = set_map(&two, &two, &[1, 0]);
        let id1 = PresheafMap::identity(&one);
        let p = LiftingProblem::new(fold.clone(), fold.clone(), swap, id1).unwrap();
        assert!(solve(&p, SearchLimit::default()).unwrap().is_empty());
        assert!(!box_rel(&fold, &fold, SearchLimit::default()).unwrap());
    }

    #[test]
    fn injectivity_and_orthogonality_of_constant_presheaves() {
        let empty = TabularPresheaf::initial(terminal_category());
        let one = set(&["*"]);
        let generator = PresheafMap::new(empty, one, vec![vec![]]).unwrap();
        let class = vec![generator];
        let singleton = set(&["s"]);
        let pair = set(&["s", "t"]);
        assert!(orthogonal(&singleton, &class, SearchLimit::default()).unwrap());
        assert!(injective(&pair, &class, SearchLimit::default()).unwrap());
        assert!(!orthogonal(&pair, &class, SearchLimit::default()).unwrap());
        // empty class: everything injective and orthogonal
        assert!(injective(&pair, &[], SearchLimit::default()).unwrap());
        assert!(orthogonal(&pair, &[], SearchLimit::default()).unwrap());
    }

    #[test]
    fn retract_verification() {
        let x = set(&["a", "b"]);
        let f = PresheafMap::identity(&x);
        assert!(verify_retract(&f, &f, &RetractWitness::identity(&f)));

        // a genuine proper retract: f = id on {a}, f' = id on {a,b},
        // section picks a, retraction collapses b to a
        let one = set(&["a"]);
        let id1 = PresheafMap::identity(&one);
        let id2 = PresheafMap::identity(&x);
        let sec = set_map(&one, &x, &[0]);
        let ret = set_map(&x, &one, &[0, 0]);
        let w = RetractWitness {
            section_dom: sec.clone(),
            section_cod: sec.clone(),
            retraction_dom: ret.clone(),
            retraction_cod: ret.clone(),
        };
        assert!(verify_retract(&id1, &id2, &w));
        // swapped witness direction fails (section after retraction is not id)
        let bad = RetractWitness {
            section_dom: ret.clone(),
            section_cod: ret,
            retraction_dom: sec.clone(),
            retraction_cod: sec,
        };
        assert!(!verify_retract(&id2, &id1, &bad));
    }

    #[test]
    fn budget_exceeded_is_an_error() {
        let x = set(&["a", "b", "c"]);
        let y = set(&["p", "q", "r"]);
        let result = enumerate_maps(&x, &y, SearchLimit(5));
        assert!(matches!(result, Err(LiftError::SearchExceeded { .. })));
    }

    #[test]
    fn empty_certificate_verifies_identity() {
        let x = set(&["a"]);
        let cert = CellularCertificate {
            start: x.clone(),
            stages: vec![],
            composite: PresheafMap::identity(&x),
        };
        assert!(verify_cellular(&cert, &[]).is_ok());
    }
}
