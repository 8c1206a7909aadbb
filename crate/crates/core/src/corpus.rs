//! The deterministic verification corpus.
//!
//! Fixed lists of factorization instances, lifting squares, injective
//! chains, reflection cases, correspondence pairs, and fixture categories,
//! plus the checks run over them. The CLI's `corpus run` and the
//! acceptance suite both consume this module, so the corpus is defined
//! once and its ordering never changes.

use crate::colimits;
use crate::construct;
use crate::fincat::{
    self, discrete_category, monoid_category, terminal_category, walking_arrow, CategoryData,
    FinCategory, Functor, NatTransformation,
};
use crate::lifting::{self, LiftingProblem, SearchLimit};
use crate::ofs;
use crate::ordsimp::{self, OrdinalWindow};
use crate::presheaf::{PresheafMap, TabularPresheaf};
use crate::soa::{self, BoundednessConfig, MorphismClassSource, SoaStatus};
use serde::Serialize;
use std::sync::Arc;

/// One corpus check outcome; `detail` is stable across reruns.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusItem {
    pub criterion: u8,
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub items: Vec<CorpusItem>,
}

impl CorpusReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> Vec<&CorpusItem> {
        self.items.iter().filter(|i| !i.pass).collect()
    }
}

/// A factorization instance: a morphism and a generating class.
#[derive(Debug, Clone)]
pub struct WfsInstance {
    pub id: String,
    pub f: PresheafMap,
    pub source: MorphismClassSource,
    pub config: BoundednessConfig,
}

fn set(base: &Arc<FinCategory>, names: &[&str]) -> TabularPresheaf {
    TabularPresheaf::constant_set(Arc::clone(base), names)
}

fn set_map(src: &TabularPresheaf, tgt: &TabularPresheaf, images: &[usize]) -> PresheafMap {
    PresheafMap::new(src.clone(), tgt.clone(), vec![images.to_vec()]).unwrap()
}

/// The set-level generator classes used across the corpus, over one shared
/// terminal base.
pub struct SetClasses {
    pub base: Arc<FinCategory>,
    /// {0 -> 1}
    pub point: Vec<PresheafMap>,
    /// {2 -> 1}
    pub fold: Vec<PresheafMap>,
    /// {1 -> 2}
    pub inclusion: Vec<PresheafMap>,
    /// {0 -> 1, 2 -> 1}
    pub both: Vec<PresheafMap>,
    /// {2 -> 2 swap}
    pub swap: Vec<PresheafMap>,
    /// {2 -> 3 inclusion}
    pub widen: Vec<PresheafMap>,
}

pub fn set_classes() -> SetClasses {
    let base = terminal_category();
    let empty = TabularPresheaf::initial(Arc::clone(&base));
    let one = set(&base, &["p"]);
    let two = set(&base, &["a", "b"]);
    let three = set(&base, &["a", "b", "c"]);
    let point = vec![PresheafMap::new(empty, one.clone(), vec![vec![]]).unwrap()];
    let fold = vec![set_map(&two, &one, &[0, 0])];
    let inclusion = vec![set_map(&one, &two, &[0])];
    let both = vec![point[0].clone(), fold[0].clone()];
    let swap = vec![set_map(&two, &two, &[1, 0])];
    let widen = vec![set_map(&two, &three, &[0, 1])];
    SetClasses {
        base,
        point,
        fold,
        inclusion,
        both,
        swap,
        widen,
    }
}

fn set_level_maps(base: &Arc<FinCategory>) -> Vec<(&'static str, PresheafMap)> {
    let empty = TabularPresheaf::initial(Arc::clone(base));
    let one = set(base, &["p"]);
    let two = set(base, &["a", "b"]);
    let three = set(base, &["a", "b", "c"]);
    let four = set(base, &["a", "b", "c", "d"]);
    vec![
        (
            "empty-to-one",
            PresheafMap::new(empty.clone(), one.clone(), vec![vec![]]).unwrap(),
        ),
        (
            "empty-to-three",
            PresheafMap::new(empty, three.clone(), vec![vec![]]).unwrap(),
        ),
        ("fold-two", set_map(&two, &one, &[0, 0])),
        ("surj-three-two", set_map(&three, &two, &[0, 1, 1])),
        ("incl-two-four", set_map(&two, &four, &[0, 2])),
    ]
}

/// The factorization corpus: every set-level class against every set-level
/// map, plus ordinal-window instances, at least 30 in total.
pub fn wfs_instances() -> Vec<WfsInstance> {
    let classes = set_classes();
    let mut out = Vec::new();
    let named_classes: Vec<(&str, &Vec<PresheafMap>)> = vec![
        ("point", &classes.point),
        ("fold", &classes.fold),
        ("inclusion", &classes.inclusion),
        ("both", &classes.both),
        ("swap", &classes.swap),
        ("widen", &classes.widen),
    ];
    for (cname, class) in &named_classes {
        for (mname, f) in set_level_maps(&classes.base) {
            out.push(WfsInstance {
                id: format!("set/{mname}@{cname}"),
                f,
                source: MorphismClassSource::new((*class).clone()),
                config: BoundednessConfig::default(),
            });
        }
    }

    let w = OrdinalWindow::new(3).expect("window");
    let d0 = ordsimp::delta(&w, 0).expect("delta 0");
    let d1 = ordsimp::delta(&w, 1).expect("delta 1");
    let d2 = ordsimp::delta(&w, 2).expect("delta 2");
    let (_, j) = ordsimp::delta_1s(&w).expect("symmetric simplex");
    let vertex = crate::presheaf::yoneda_map(
        &w.category,
        w.morphism(1, 2, &[0]).expect("vertex inclusion"),
    );
    let boundary = boundary_inclusion(&w);
    let short = |n| BoundednessConfig {
        max_stages: n,
        prune_solved: true,
    };
    out.push(WfsInstance {
        id: "ord/point-to-terminal@j".into(),
        f: PresheafMap::to_terminal(&d0),
        source: MorphismClassSource::new(vec![j.clone()]),
        config: BoundednessConfig::default(),
    });
    out.push(WfsInstance {
        id: "ord/edge-to-terminal@j".into(),
        f: PresheafMap::to_terminal(&d1),
        source: MorphismClassSource::new(vec![j.clone()]),
        config: short(2),
    });
    out.push(WfsInstance {
        id: "ord/face-to-terminal@j".into(),
        f: PresheafMap::to_terminal(&d2),
        source: MorphismClassSource::new(vec![j.clone()]),
        config: short(1),
    });
    out.push(WfsInstance {
        id: "ord/edge-to-terminal@vertex".into(),
        f: PresheafMap::to_terminal(&d1),
        source: MorphismClassSource::new(vec![vertex.clone()]),
        config: BoundednessConfig::default(),
    });
    out.push(WfsInstance {
        id: "ord/vertex-map@vertex".into(),
        f: vertex.clone(),
        source: MorphismClassSource::new(vec![vertex.clone()]),
        config: short(3),
    });
    out.push(WfsInstance {
        id: "ord/edge-to-terminal@boundary".into(),
        f: PresheafMap::to_terminal(&d1),
        source: MorphismClassSource::new(vec![boundary]),
        config: short(3),
    });
    out
}

/// The boundary inclusion of the 1-simplex: both endpoints into the edge.
pub fn boundary_inclusion(w: &OrdinalWindow) -> PresheafMap {
    let d0 = ordsimp::delta(w, 0).expect("delta 0");
    let (two_points, injections) =
        colimits::coproduct(&[d0.clone(), d0], &w.category).expect("coproduct");
    let v0 = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[0]).expect("v0"));
    let v1 = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[1]).expect("v1"));
    lifting::tuple_map(&two_points, v0.target(), &injections, |t, a, x| {
        if t == 0 {
            v0.apply(a, x)
        } else {
            v1.apply(a, x)
        }
    })
    .expect("boundary tuple")
}

/// Criterion 1: every certificate factors exactly and re-verifies as
/// cellular, and every fixpoint residual has the lifting property against
/// all generators.
pub fn check_wfs_instance(instance: &WfsInstance, limit: SearchLimit) -> CorpusItem {
    let run = || -> Result<(bool, String), String> {
        let cert = soa::factorize(&instance.f, &instance.source, &instance.config, limit)
            .map_err(|e| e.to_string())?;
        if !cert.factors_exactly() {
            return Ok((false, "composite does not reproduce the morphism".into()));
        }
        if let Err(e) = lifting::verify_cellular(&cert.cellular(), &instance.source.generators) {
            return Ok((false, format!("cellular verification failed: {e}")));
        }
        let status = match cert.status {
            SoaStatus::Fixpoint => {
                for (gen, h) in instance.source.generators.iter().enumerate() {
                    if !lifting::box_rel(h, &cert.residual, limit).map_err(|e| e.to_string())? {
                        return Ok((false, format!("generator {gen} fails lifting")));
                    }
                }
                "fixpoint".to_string()
            }
            SoaStatus::BudgetExhausted(k) => format!("budget_exhausted:{k}"),
        };
        Ok((true, format!("{status} stages={}", cert.stages.len())))
    };
    match run() {
        Ok((pass, detail)) => CorpusItem {
            criterion: 1,
            id: instance.id.clone(),
            pass,
            detail,
        },
        Err(e) => CorpusItem {
            criterion: 1,
            id: instance.id.clone(),
            pass: false,
            detail: e,
        },
    }
}

/// The square corpus for solver/oracle equivalence: all commutative squares
/// of each listed (left, right) pair. Sizes are chosen so unpruned brute
/// force stays cheap and total elements stay at or below 64.
pub fn oracle_square_corpus(limit: SearchLimit) -> Vec<(String, LiftingProblem)> {
    let classes = set_classes();
    let base = &classes.base;
    let empty = TabularPresheaf::initial(Arc::clone(base));
    let one = set(base, &["p"]);
    let two = set(base, &["a", "b"]);
    let three = set(base, &["a", "b", "c"]);
    let mut pairs: Vec<(String, PresheafMap, PresheafMap)> = Vec::new();
    let f_list = vec![
        (
            "empty-one",
            PresheafMap::new(empty, one.clone(), vec![vec![]]).unwrap(),
        ),
        ("fold", set_map(&two, &one, &[0, 0])),
        ("incl", set_map(&one, &two, &[1])),
        ("swap", set_map(&two, &two, &[1, 0])),
    ];
    let g_list = vec![
        ("surj", set_map(&three, &two, &[0, 0, 1])),
        ("fold", set_map(&two, &one, &[0, 0])),
        ("diag", set_map(&one, &three, &[2])),
    ];
    for (fname, f) in &f_list {
        for (gname, g) in &g_list {
            pairs.push((format!("set/{fname}-vs-{gname}"), f.clone(), g.clone()));
        }
    }
    let w = OrdinalWindow::new(3).expect("window");
    let d0 = ordsimp::delta(&w, 0).expect("delta 0");
    let d1 = ordsimp::delta(&w, 1).expect("delta 1");
    // the unique map to the 0-simplex, which is the terminal presheaf here
    let collapse = lifting::enumerate_maps(&d1, &d0, limit).expect("unique map")[0].clone();
    let vertex = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[0]).expect("v0"));
    pairs.push(("ord/vertex-vs-collapse".into(), vertex, collapse.clone()));
    pairs.push((
        "ord/boundary-vs-collapse".into(),
        boundary_inclusion(&w),
        collapse,
    ));

    let mut squares = Vec::new();
    for (id, f, g) in pairs {
        let tops = lifting::enumerate_maps(f.source(), g.source(), limit).expect("tops");
        for (ui, u) in tops.iter().enumerate() {
            let through = PresheafMap::compose(&g, u).expect("compose");
            let bottoms = lifting::maps_extending(&f, &through, limit).expect("bottoms");
            for (vi, v) in bottoms.iter().enumerate() {
                let problem = LiftingProblem::new(f.clone(), g.clone(), u.clone(), v.clone())
                    .expect("square commutes by construction");
                squares.push((format!("{id}/u{ui}v{vi}"), problem));
            }
        }
    }
    squares
}

/// Independent reference solver used only for cross-checking: unpruned
/// brute force over every family of component functions, with naturality
/// and the diagonal equations checked after the fact. Shares no code with
/// the search engine.
pub mod oracle {
    use super::*;

    /// Every diagonal of the square, as component tables, sorted.
    pub fn brute_force_diagonals(p: &LiftingProblem) -> Vec<Vec<Vec<usize>>> {
        let b = p.left.target();
        let c = p.right.source();
        let base = b.base();
        let obj_count = base.n_objects();
        let sizes: Vec<usize> = base.objects().map(|a| b.size(a)).collect();
        let targets: Vec<usize> = base.objects().map(|a| c.size(a)).collect();
        // odometer over all component functions
        let mut assignment: Vec<Vec<usize>> = sizes.iter().map(|&n| vec![0; n]).collect();
        if sizes.iter().zip(&targets).any(|(&n, &t)| n > 0 && t == 0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        loop {
            if is_natural(&assignment, b, c) && satisfies_square(&assignment, p) {
                out.push(assignment.clone());
            }
            // advance
            let mut done = true;
            'adv: for a in 0..obj_count {
                for i in 0..sizes[a] {
                    assignment[a][i] += 1;
                    if assignment[a][i] < targets[a] {
                        done = false;
                        break 'adv;
                    }
                    assignment[a][i] = 0;
                }
            }
            if done {
                break;
            }
        }
        out.sort();
        out
    }

    fn is_natural(
        components: &[Vec<usize>],
        x: &TabularPresheaf,
        y: &TabularPresheaf,
    ) -> bool {
        let base = x.base();
        for m in base.morphisms() {
            let (a, bb) = (base.dom(m), base.cod(m));
            for e in 0..x.size(bb) {
                if components[a.0][x.act(m, e)] != y.act(m, components[bb.0][e]) {
                    return false;
                }
            }
        }
        true
    }

    fn satisfies_square(components: &[Vec<usize>], p: &LiftingProblem) -> bool {
        let base = p.left.base();
        for a in base.objects() {
            for x in 0..p.left.source().size(a) {
                if components[a.0][p.left.apply(a, x)] != p.top.apply(a, x) {
                    return false;
                }
            }
            for e in 0..p.left.target().size(a) {
                if p.right.apply(a, components[a.0][e]) != p.bottom.apply(a, e) {
                    return false;
                }
            }
        }
        true
    }

    /// Product over objects of |C(a)|^|B(a)|: the odometer length.
    pub fn brute_force_cost(p: &LiftingProblem) -> u128 {
        let b = p.left.target();
        let c = p.right.source();
        let mut cost: u128 = 1;
        for a in b.base().objects() {
            let t = c.size(a) as u128;
            for _ in 0..b.size(a) {
                cost = cost.saturating_mul(t.max(1));
            }
        }
        cost
    }
}

/// Criterion 2: the solver agrees with unpruned brute force on every square.
pub fn check_oracle_square(
    id: &str,
    problem: &LiftingProblem,
    limit: SearchLimit,
) -> CorpusItem {
    let total: usize = [
        problem.left.source(),
        problem.left.target(),
        problem.right.source(),
        problem.right.target(),
    ]
    .iter()
    .map(|x| x.total_elements())
    .sum();
    let run = || -> Result<(bool, String), String> {
        let solved = lifting::solve(problem, limit).map_err(|e| e.to_string())?;
        let mine: Vec<Vec<Vec<usize>>> =
            solved.iter().map(|d| d.components().to_vec()).collect();
        let reference = oracle::brute_force_diagonals(problem);
        if mine == reference {
            Ok((true, format!("{} diagonals, {} elements", mine.len(), total)))
        } else {
            Ok((
                false,
                format!("solver found {}, oracle found {}", mine.len(), reference.len()),
            ))
        }
    };
    match run() {
        Ok((pass, detail)) => CorpusItem {
            criterion: 2,
            id: id.to_string(),
            pass,
            detail,
        },
        Err(e) => CorpusItem {
            criterion: 2,
            id: id.to_string(),
            pass: false,
            detail: e,
        },
    }
}

/// A chain of injectives for the colimit-closure check.
#[derive(Debug, Clone)]
pub struct InjectiveChain {
    pub id: String,
    pub first: TabularPresheaf,
    pub maps: Vec<PresheafMap>,
    pub source: MorphismClassSource,
}

pub fn injective_chains() -> Vec<InjectiveChain> {
    let classes = set_classes();
    let base = &classes.base;
    let one = set(base, &["p"]);
    let two = set(base, &["a", "b"]);
    let three = set(base, &["a", "b", "c"]);
    let four = set(base, &["a", "b", "c", "d"]);
    let five = set(base, &["a", "b", "c", "d", "e"]);
    let empty = TabularPresheaf::initial(Arc::clone(base));
    let point_class = MorphismClassSource::new(classes.point.clone());
    let fold_class = MorphismClassSource::new(classes.fold.clone());
    let empty_class = MorphismClassSource::new(vec![]);
    let mut out = vec![
        InjectiveChain {
            id: "point/constant-singleton".into(),
            first: one.clone(),
            maps: vec![],
            source: point_class.clone(),
        },
        InjectiveChain {
            id: "point/growing-2".into(),
            first: one.clone(),
            maps: vec![set_map(&one, &two, &[0])],
            source: point_class.clone(),
        },
        InjectiveChain {
            id: "point/growing-3".into(),
            first: one.clone(),
            maps: vec![set_map(&one, &two, &[1]), set_map(&two, &three, &[0, 1])],
            source: point_class.clone(),
        },
        InjectiveChain {
            id: "point/growing-5".into(),
            first: one.clone(),
            maps: vec![
                set_map(&one, &two, &[0]),
                set_map(&two, &three, &[0, 2]),
                set_map(&three, &four, &[0, 1, 2]),
                set_map(&four, &five, &[0, 1, 2, 3]),
            ],
            source: point_class.clone(),
        },
        InjectiveChain {
            id: "point/swap-automorphisms".into(),
            first: two.clone(),
            maps: vec![set_map(&two, &two, &[1, 0]), set_map(&two, &two, &[1, 0])],
            source: point_class.clone(),
        },
        InjectiveChain {
            id: "fold/empty".into(),
            first: empty.clone(),
            maps: vec![],
            source: fold_class.clone(),
        },
        InjectiveChain {
            id: "fold/empty-to-empty".into(),
            first: empty.clone(),
            maps: vec![PresheafMap::identity(&empty)],
            source: fold_class.clone(),
        },
        InjectiveChain {
            id: "fold/singletons".into(),
            first: one.clone(),
            maps: vec![PresheafMap::identity(&one), PresheafMap::identity(&one)],
            source: fold_class.clone(),
        },
        InjectiveChain {
            id: "empty-class/any-chain".into(),
            first: two.clone(),
            maps: vec![set_map(&two, &three, &[2, 0])],
            source: empty_class,
        },
    ];
    let w = OrdinalWindow::new(3).expect("window");
    let d0 = ordsimp::delta(&w, 0).expect("delta 0");
    let (_, j) = ordsimp::delta_1s(&w).expect("j");
    let vertex = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[0]).expect("v0"));
    out.push(InjectiveChain {
        id: "j/discrete-point".into(),
        first: d0.clone(),
        maps: vec![],
        source: MorphismClassSource::new(vec![j]),
    });
    out.push(InjectiveChain {
        id: "vertex/point-into-edge".into(),
        first: d0,
        maps: vec![vertex.clone()],
        source: MorphismClassSource::new(vec![vertex]),
    });
    out
}

/// Criterion 3: chain colimits of injectives stay injective.
pub fn check_injective_chain(chain: &InjectiveChain, limit: SearchLimit) -> CorpusItem {
    match soa::injectivity_colimit_check(&chain.first, &chain.maps, &chain.source, limit) {
        Ok(true) => CorpusItem {
            criterion: 3,
            id: chain.id.clone(),
            pass: true,
            detail: format!("chain length {}", chain.maps.len()),
        },
        Ok(false) => CorpusItem {
            criterion: 3,
            id: chain.id.clone(),
            pass: false,
            detail: "colimit lost injectivity".into(),
        },
        Err(e) => CorpusItem {
            criterion: 3,
            id: chain.id.clone(),
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// A reflection case with its expected outcome.
#[derive(Debug, Clone)]
pub struct ReflectionCase {
    pub id: String,
    pub object: TabularPresheaf,
    pub class: Vec<PresheafMap>,
    pub test_family: Vec<TabularPresheaf>,
    pub expected_size: usize,
}

pub fn reflection_cases() -> Vec<ReflectionCase> {
    let classes = set_classes();
    let base = &classes.base;
    let empty = TabularPresheaf::initial(Arc::clone(base));
    let one = set(base, &["z"]);
    let three = set(base, &["a", "b", "c"]);
    let two = set(base, &["a", "b"]);
    vec![
        ReflectionCase {
            id: "point-class/empty".into(),
            object: empty.clone(),
            class: classes.point.clone(),
            test_family: vec![one.clone()],
            expected_size: 1,
        },
        ReflectionCase {
            id: "point-class/singleton".into(),
            object: set(base, &["k"]),
            class: classes.point.clone(),
            test_family: vec![one.clone()],
            expected_size: 1,
        },
        ReflectionCase {
            id: "point-class/three".into(),
            object: three.clone(),
            class: classes.point.clone(),
            test_family: vec![one.clone()],
            expected_size: 1,
        },
        ReflectionCase {
            id: "fold-class/empty".into(),
            object: empty.clone(),
            class: classes.fold.clone(),
            test_family: vec![empty.clone(), one.clone()],
            expected_size: 0,
        },
        ReflectionCase {
            id: "fold-class/two".into(),
            object: two,
            class: classes.fold.clone(),
            test_family: vec![empty.clone(), one.clone()],
            expected_size: 1,
        },
        ReflectionCase {
            id: "fold-class/three".into(),
            object: three,
            class: classes.fold.clone(),
            test_family: vec![empty, one],
            expected_size: 1,
        },
    ]
}

/// Criterion 4a: reflections land on the derived fixed points with unique
/// universal factorizations.
pub fn check_reflection(case: &ReflectionCase, limit: SearchLimit) -> CorpusItem {
    let run = || -> Result<(bool, String), String> {
        let r = ofs::reflect_ort(
            &case.object,
            &case.class,
            &BoundednessConfig::default(),
            limit,
            &case.test_family,
        )
        .map_err(|e| e.to_string())?;
        if r.certificate.status != SoaStatus::Fixpoint {
            return Ok((false, "did not reach a fixpoint".into()));
        }
        if r.reflection.total_elements() != case.expected_size {
            return Ok((
                false,
                format!(
                    "reflection has {} elements, expected {}",
                    r.reflection.total_elements(),
                    case.expected_size
                ),
            ));
        }
        let orthogonal =
            lifting::orthogonal(&r.reflection, &case.class, limit).map_err(|e| e.to_string())?;
        if !orthogonal {
            return Ok((false, "reflection is not orthogonal to the class".into()));
        }
        if r.universal_counts.iter().flatten().any(|&c| c != 1) {
            return Ok((false, "universal factorization count differs from 1".into()));
        }
        let maps_checked: usize = r.universal_counts.iter().map(|v| v.len()).sum();
        Ok((true, format!("universal checks: {maps_checked}")))
    };
    match run() {
        Ok((pass, detail)) => CorpusItem {
            criterion: 4,
            id: format!("reflect/{}", case.id),
            pass,
            detail,
        },
        Err(e) => CorpusItem {
            criterion: 4,
            id: format!("reflect/{}", case.id),
            pass: false,
            detail: e,
        },
    }
}

/// The (f, g) pairs for the square-transposition correspondence.
pub fn correspondence_pairs() -> Vec<(String, PresheafMap, PresheafMap)> {
    let classes = set_classes();
    let base = &classes.base;
    let empty = TabularPresheaf::initial(Arc::clone(base));
    let one = set(base, &["p"]);
    let two = set(base, &["a", "b"]);
    let three = set(base, &["a", "b", "c"]);
    let f_list: Vec<(&str, PresheafMap)> = vec![
        ("id1", PresheafMap::identity(&one)),
        (
            "empty-one",
            PresheafMap::new(empty.clone(), one.clone(), vec![vec![]]).unwrap(),
        ),
        ("incl12", set_map(&one, &two, &[0])),
        ("fold", set_map(&two, &one, &[0, 0])),
        ("swap", set_map(&two, &two, &[1, 0])),
        ("incl13", set_map(&one, &three, &[2])),
        ("surj32", set_map(&three, &two, &[0, 1, 0])),
    ];
    let g_list: Vec<(&str, PresheafMap)> = vec![
        ("fold", set_map(&two, &one, &[0, 0])),
        ("id2", PresheafMap::identity(&two)),
        ("incl12", set_map(&one, &two, &[1])),
    ];
    let mut out = Vec::new();
    for (fname, f) in &f_list {
        for (gname, g) in &g_list {
            out.push((format!("set/{fname}-vs-{gname}"), f.clone(), g.clone()));
        }
    }
    let w = OrdinalWindow::new(3).expect("window");
    let vertex0 = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[0]).expect("v0"));
    let vertex1 = crate::presheaf::yoneda_map(&w.category, w.morphism(1, 2, &[1]).expect("v1"));
    out.push(("ord/v0-vs-v1".into(), vertex0.clone(), vertex1));
    let d1 = ordsimp::delta(&w, 1).expect("delta 1");
    out.push((
        "ord/v0-vs-edge-terminal".into(),
        vertex0,
        PresheafMap::to_terminal(&d1),
    ));
    out
}

/// Criterion 4b: square transposition is a bijection on every pair.
pub fn check_correspondence(
    id: &str,
    f: &PresheafMap,
    g: &PresheafMap,
    limit: SearchLimit,
) -> CorpusItem {
    match ofs::square_correspondence_check(f, g, limit) {
        Ok(true) => CorpusItem {
            criterion: 4,
            id: format!("square-corr/{id}"),
            pass: true,
            detail: "bijection verified".into(),
        },
        Ok(false) => CorpusItem {
            criterion: 4,
            id: format!("square-corr/{id}"),
            pass: false,
            detail: "correspondence failed".into(),
        },
        Err(e) => CorpusItem {
            criterion: 4,
            id: format!("square-corr/{id}"),
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// Criterion 5: the symmetric-simplex anchors and the non-termination
/// phenomenon of the symmetrization tower.
pub fn check_symmetric_simplex(limit: SearchLimit) -> Vec<CorpusItem> {
    let mut items = Vec::new();
    let run = || -> Result<Vec<CorpusItem>, String> {
        let w = OrdinalWindow::new(5).map_err(|e| e.to_string())?;
        let (d1s, _) = ordsimp::delta_1s(&w).map_err(|e| e.to_string())?;
        let census = ordsimp::census(&w, &d1s).map_err(|e| e.to_string())?;
        let mut items = Vec::new();
        items.push(CorpusItem {
            criterion: 5,
            id: "delta1s/vertices".into(),
            pass: census.dimension(0) == 2,
            detail: format!("dimension 0 count {}", census.dimension(0)),
        });
        items.push(CorpusItem {
            criterion: 5,
            id: "delta1s/edges".into(),
            pass: census.dimension(1) == 2,
            detail: format!("dimension 1 count {}", census.dimension(1)),
        });
        let w3 = OrdinalWindow::new(3).map_err(|e| e.to_string())?;
        let d1 = ordsimp::delta(&w3, 1).map_err(|e| e.to_string())?;
        let s = ordsimp::symmetrize(&w3, &d1, 3, limit).map_err(|e| e.to_string())?;
        let edge_counts: Vec<usize> = s.censuses.iter().map(|c| c.dimension(1)).collect();
        let strictly_increasing = edge_counts.windows(2).all(|p| p[0] < p[1]);
        items.push(CorpusItem {
            criterion: 5,
            id: "symmetrize/growth".into(),
            pass: strictly_increasing && s.tower.len() == 4,
            detail: format!("edge census {edge_counts:?}"),
        });
        items.push(CorpusItem {
            criterion: 5,
            id: "symmetrize/budget".into(),
            pass: matches!(s.certificate.status, SoaStatus::BudgetExhausted(3)),
            detail: "tower keeps needing partners".into(),
        });
        Ok(items)
    };
    match run() {
        Ok(mut ok) => items.append(&mut ok),
        Err(e) => items.push(CorpusItem {
            criterion: 5,
            id: "delta1s".into(),
            pass: false,
            detail: e,
        }),
    }
    items
}

/// The fixture categories for the construction identities.
pub fn fixture_categories() -> Vec<(String, Arc<FinCategory>)> {
    let mut out: Vec<(String, Arc<FinCategory>)> = vec![
        ("terminal".into(), terminal_category()),
        ("walking-arrow".into(), walking_arrow()),
        ("discrete-2".into(), discrete_category(&["x", "y"])),
        ("discrete-3".into(), discrete_category(&["x", "y", "z"])),
        (
            "cyclic-3".into(),
            monoid_category(
                &["e", "g", "h"],
                &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            )
            .expect("monoid"),
        ),
        (
            "cyclic-2".into(),
            monoid_category(&["e", "s"], &[vec![0, 1], vec![1, 0]]).expect("monoid"),
        ),
        (
            "idempotent".into(),
            monoid_category(&["e", "a"], &[vec![0, 1], vec![1, 1]]).expect("monoid"),
        ),
    ];
    // two-object groupoid with inverse isos
    let groupoid = CategoryData {
        objects: vec!["A".into(), "B".into()],
        morphisms: vec![
            ("idA".into(), "A".into(), "A".into()),
            ("idB".into(), "B".into(), "B".into()),
            ("u".into(), "A".into(), "B".into()),
            ("v".into(), "B".into(), "A".into()),
        ],
        identities: [("A", "idA"), ("B", "idB")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        compose: vec![
            ("idA".into(), "idA".into(), "idA".into()),
            ("idB".into(), "idB".into(), "idB".into()),
            ("u".into(), "idA".into(), "u".into()),
            ("idB".into(), "u".into(), "u".into()),
            ("v".into(), "idB".into(), "v".into()),
            ("idA".into(), "v".into(), "v".into()),
            ("v".into(), "u".into(), "idA".into()),
            ("u".into(), "v".into(), "idB".into()),
        ],
    };
    out.push((
        "iso-pair".into(),
        Arc::new(FinCategory::validate(&groupoid).expect("groupoid")),
    ));
    // three-element chain poset 0 <= 1 <= 2
    let chain = CategoryData {
        objects: vec!["0".into(), "1".into(), "2".into()],
        morphisms: vec![
            ("id0".into(), "0".into(), "0".into()),
            ("id1".into(), "1".into(), "1".into()),
            ("id2".into(), "2".into(), "2".into()),
            ("a01".into(), "0".into(), "1".into()),
            ("a12".into(), "1".into(), "2".into()),
            ("a02".into(), "0".into(), "2".into()),
        ],
        identities: [("0", "id0"), ("1", "id1"), ("2", "id2")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        compose: vec![
            ("id0".into(), "id0".into(), "id0".into()),
            ("id1".into(), "id1".into(), "id1".into()),
            ("id2".into(), "id2".into(), "id2".into()),
            ("a01".into(), "id0".into(), "a01".into()),
            ("id1".into(), "a01".into(), "a01".into()),
            ("a12".into(), "id1".into(), "a12".into()),
            ("id2".into(), "a12".into(), "a12".into()),
            ("a02".into(), "id0".into(), "a02".into()),
            ("id2".into(), "a02".into(), "a02".into()),
            ("a12".into(), "a01".into(), "a02".into()),
        ],
    };
    out.push((
        "chain-3".into(),
        Arc::new(FinCategory::validate(&chain).expect("chain")),
    ));
    // parallel pair
    let parallel = CategoryData {
        objects: vec!["a".into(), "b".into()],
        morphisms: vec![
            ("ida".into(), "a".into(), "a".into()),
            ("idb".into(), "b".into(), "b".into()),
            ("f".into(), "a".into(), "b".into()),
            ("g".into(), "a".into(), "b".into()),
        ],
        identities: [("a", "ida"), ("b", "idb")]
            .into_iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        compose: vec![
            ("ida".into(), "ida".into(), "ida".into()),
            ("idb".into(), "idb".into(), "idb".into()),
            ("f".into(), "ida".into(), "f".into()),
            ("idb".into(), "f".into(), "f".into()),
            ("g".into(), "ida".into(), "g".into()),
            ("idb".into(), "g".into(), "g".into()),
        ],
    };
    out.push((
        "parallel-pair".into(),
        Arc::new(FinCategory::validate(&parallel).expect("parallel")),
    ));
    let w = fincat::materialize(&fincat::OrdinalCategory, 3).expect("window");
    out.push(("ordinal-window-3".into(), w.category));
    out
}

/// Direct 5-tuple count: pairs of isomorphisms with a common codomain,
/// computed straight from the composition table.
pub fn direct_pspb_identity_count(cat: &FinCategory) -> usize {
    let mut count = 0;
    for m in cat.objects() {
        let mut isos_into = 0;
        for k in cat.objects() {
            for &f in cat.hom(k, m) {
                let has_inverse = cat.hom(m, k).iter().any(|&g| {
                    cat.compose(g, f) == Some(cat.identity(k))
                        && cat.compose(f, g) == Some(cat.identity(m))
                });
                if has_inverse {
                    isos_into += 1;
                }
            }
        }
        count += isos_into * isos_into;
    }
    count
}

/// Criterion 6: the construction identities on one fixture category.
pub fn check_construction_identities(name: &str, cat: &Arc<FinCategory>) -> Vec<CorpusItem> {
    let mut items = Vec::new();
    let id_functor = Functor::identity(cat);
    let nat = NatTransformation::identity(&id_functor);
    match construct::equifier(&nat, &nat) {
        Ok((eq, _)) => items.push(CorpusItem {
            criterion: 6,
            id: format!("equifier/{name}"),
            pass: *eq == **cat,
            detail: format!("{} objects", eq.n_objects()),
        }),
        Err(e) => items.push(CorpusItem {
            criterion: 6,
            id: format!("equifier/{name}"),
            pass: false,
            detail: e.to_string(),
        }),
    }
    match fincat::comma_category(&id_functor, &id_functor) {
        Ok(comma) => items.push(CorpusItem {
            criterion: 6,
            id: format!("comma/{name}"),
            pass: comma.category.n_objects() == cat.n_morphisms(),
            detail: format!(
                "{} objects vs {} morphisms",
                comma.category.n_objects(),
                cat.n_morphisms()
            ),
        }),
        Err(e) => items.push(CorpusItem {
            criterion: 6,
            id: format!("comma/{name}"),
            pass: false,
            detail: e.to_string(),
        }),
    }
    match construct::pseudopullback(&id_functor, &id_functor) {
        Ok(pspb) => {
            let direct = direct_pspb_identity_count(cat);
            items.push(CorpusItem {
                criterion: 6,
                id: format!("pspb/{name}"),
                pass: pspb.category.n_objects() == direct,
                detail: format!(
                    "{} objects vs {} direct 5-tuples",
                    pspb.category.n_objects(),
                    direct
                ),
            });
        }
        Err(e) => items.push(CorpusItem {
            criterion: 6,
            id: format!("pspb/{name}"),
            pass: false,
            detail: e.to_string(),
        }),
    }
    items
}

/// Runs criteria 1 through 6 over the whole corpus; criterion 7
/// (byte-identical reruns) is checked by the caller by running this twice
/// and comparing serialized output.
pub fn run_corpus(limit: SearchLimit) -> CorpusReport {
    let mut items = Vec::new();
    for instance in wfs_instances() {
        items.push(check_wfs_instance(&instance, limit));
    }
    for (id, square) in oracle_square_corpus(limit) {
        items.push(check_oracle_square(&id, &square, limit));
    }
    for chain in injective_chains() {
        items.push(check_injective_chain(&chain, limit));
    }
    for case in reflection_cases() {
        items.push(check_reflection(&case, limit));
    }
    for (id, f, g) in correspondence_pairs() {
        items.push(check_correspondence(&id, &f, &g, limit));
    }
    items.extend(check_symmetric_simplex(limit));
    for (name, cat) in fixture_categories() {
        items.extend(check_construction_identities(&name, &cat));
    }
    CorpusReport { items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes_meet_the_required_minimums() {
        assert!(wfs_instances().len() >= 30, "factorization instances");
        assert!(injective_chains().len() >= 10, "injective chains");
        assert!(correspondence_pairs().len() >= 20, "correspondence pairs");
        assert!(fixture_categories().len() >= 10, "fixture categories");
    }

    #[test]
    fn oracle_cost_is_bounded() {
        for (id, square) in oracle_square_corpus(SearchLimit::default()) {
            let cost = oracle::brute_force_cost(&square);
            assert!(cost <= 2_000_000, "{id} has oracle cost {cost}");
            let total: usize = [
                square.left.source(),
                square.left.target(),
                square.right.source(),
                square.right.target(),
            ]
            .iter()
            .map(|x| x.total_elements())
            .sum();
            assert!(total <= 64, "{id} has {total} elements");
        }
    }

    #[test]
    fn ids_are_unique_and_ordering_is_stable() {
        let a = run_ids();
        let b = run_ids();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), a.len(), "duplicate corpus ids");
    }

    fn run_ids() -> Vec<String> {
        let mut ids: Vec<String> = wfs_instances().iter().map(|i| i.id.clone()).collect();
        ids.extend(
            oracle_square_corpus(SearchLimit::default())
                .iter()
                .map(|(id, _)| id.clone()),
        );
        ids.extend(injective_chains().iter().map(|c| c.id.clone()));
        ids.extend(reflection_cases().iter().map(|c| c.id.clone()));
        ids.extend(correspondence_pairs().iter().map(|(id, _, _)| id.clone()));
        ids
    }
}

