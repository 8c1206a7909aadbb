//! The generalized small object argument at finite scale.
//!
//! One stage collects the commuting triples `(u, h, v)` of a morphism
//! against a generator class, prunes those that already admit a lift, and
//! pushes out the coproduct of the surviving attachments. Iteration stops
//! at the first stage with no surviving triples (a fixpoint, at which point
//! right-class membership of the residual is verified literally) or at the
//! configured stage bound, in which case the certificate says so and claims
//! nothing more.

use crate::colimits;
use crate::lifting::{
    self, CellularCertificate, CellularStage, LiftError, LiftingProblem, SearchLimit,
};
use crate::presheaf::{PresheafError, PresheafMap, TabularPresheaf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SoaError {
    #[error("max_stages must be at least 1")]
    BadConfig,
    #[error("generator {generator} and the factorized morphism live over different bases")]
    GeneratorBaseMismatch { generator: usize },
    #[error(
        "fixpoint reached but generator {generator} fails the lifting check; \
         the coreflection rule does not cover the class"
    )]
    RuleUnsound { generator: usize },
    #[error(transparent)]
    Lift(#[from] LiftError),
}

impl From<PresheafError> for SoaError {
    fn from(e: PresheafError) -> SoaError {
        SoaError::Lift(LiftError::Presheaf(e))
    }
}

/// Per-morphism choice of the generators to attach, as indices into the
/// generator list. The default covers the whole list, which is always a
/// valid cone-coreflection for a finite class.
#[derive(Debug, Clone, Copy, Default)]
pub enum CoreflectionRule {
    #[default]
    All,
    Custom(fn(&PresheafMap, &[PresheafMap]) -> Vec<usize>),
}

/// A finite generating class together with its cone-coreflection rule.
#[derive(Debug, Clone)]
pub struct MorphismClassSource {
    pub generators: Vec<PresheafMap>,
    pub rule: CoreflectionRule,
}

impl MorphismClassSource {
    pub fn new(generators: Vec<PresheafMap>) -> MorphismClassSource {
        MorphismClassSource {
            generators,
            rule: CoreflectionRule::All,
        }
    }

    /// The sublist of generator indices chosen for `f`; always a sublist of
    /// the full list, with out-of-range indices discarded.
    pub fn chosen_for(&self, f: &PresheafMap) -> Vec<usize> {
        match self.rule {
            CoreflectionRule::All => (0..self.generators.len()).collect(),
            CoreflectionRule::Custom(rule) => {
                let mut picked = rule(f, &self.generators);
                picked.retain(|&i| i < self.generators.len());
                picked.dedup();
                picked
            }
        }
    }
}

/// An attachment datum: a commuting square `f . u = v . h` for a generator
/// `h`, recorded by its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub generator: usize,
    /// `u: dom(h) -> A`
    pub attach: PresheafMap,
    /// `v: cod(h) -> B`
    pub anchor: PresheafMap,
}

/// Stage bound and pruning switch for an iterated factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundednessConfig {
    pub max_stages: usize,
    pub prune_solved: bool,
}

impl Default for BoundednessConfig {
    fn default() -> Self {
        BoundednessConfig {
            max_stages: 8,
            prune_solved: true,
        }
    }
}

impl BoundednessConfig {
    pub fn validate(&self) -> Result<(), SoaError> {
        if self.max_stages == 0 {
            return Err(SoaError::BadConfig);
        }
        Ok(())
    }
}

/// Termination status of a factorization run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoaStatus {
    /// no surviving triples; residual verified in the right class
    Fixpoint,
    /// stopped after the stated number of stages with triples remaining
    BudgetExhausted(usize),
}

/// One pushout stage of the construction, with everything needed to
/// re-verify it: the triples, both coproducts, the attaching tuple, the
/// generator bundle, the pushout square, and the residual.
#[derive(Debug, Clone)]
pub struct SoaStage {
    pub triples: Vec<Triple>,
    pub coproduct_dom: TabularPresheaf,
    pub coproduct_cod: TabularPresheaf,
    /// `<u>: coproduct_dom -> A_i`
    pub attach: PresheafMap,
    /// `⊔ h: coproduct_dom -> coproduct_cod`
    pub bundle: PresheafMap,
    /// `f_{i,i+1}: A_i -> A_{i+1}`
    pub stage_map: PresheafMap,
    /// `coproduct_cod -> A_{i+1}`
    pub cocone_leg: PresheafMap,
    /// `f_{i+1}: A_{i+1} -> B`
    pub residual: PresheafMap,
}

/// Certificate of a (possibly partial) factorization `f = residual . composite`.
#[derive(Debug, Clone)]
pub struct FactorizationCertificate {
    /// the factorized morphism
    pub original: PresheafMap,
    pub stages: Vec<SoaStage>,
    /// cellular part `f_{0k}: A -> A_k`
    pub composite: PresheafMap,
    /// right part `f_k: A_k -> B`
    pub residual: PresheafMap,
    pub status: SoaStatus,
}

impl FactorizationCertificate {
    /// The cellular half, in the shape the certificate verifier consumes.
    pub fn cellular(&self) -> CellularCertificate {
        CellularCertificate {
            start: self.original.source().clone(),
            stages: self
                .stages
                .iter()
                .map(|s| CellularStage {
                    attachments: s
                        .triples
                        .iter()
                        .map(|t| (t.generator, t.attach.clone()))
                        .collect(),
                    result: s.stage_map.target().clone(),
                    stage_map: s.stage_map.clone(),
                    cocone_leg: s.cocone_leg.clone(),
                })
                .collect(),
            composite: self.composite.clone(),
        }
    }

    /// `residual . composite` must reproduce the original, componentwise.
    pub fn factors_exactly(&self) -> bool {
        PresheafMap::compose(&self.residual, &self.composite)
            .map(|c| c == self.original)
            .unwrap_or(false)
    }

    pub fn middle_object(&self) -> &TabularPresheaf {
        self.composite.target()
    }
}

/// All commuting triples `(u, h, v)` over the chosen generators, ordered by
/// (generator index, serialized u, serialized v). With `prune` set, triples
/// that already admit a lift `w` (`w . h = u`, `f . w = v`) are dropped.
pub fn collect_triples(
    f: &PresheafMap,
    source: &MorphismClassSource,
    prune: bool,
    limit: SearchLimit,
) -> Result<Vec<Triple>, SoaError> {
    let mut triples = Vec::new();
    for gen in source.chosen_for(f) {
        let h = &source.generators[gen];
        if h.base() != f.base() {
            return Err(SoaError::GeneratorBaseMismatch { generator: gen });
        }
        let attaches = lifting::enumerate_maps(h.source(), f.source(), limit)?;
        for u in attaches {
            let fu = PresheafMap::compose(f, &u)?;
            // anchors v with v . h = f . u
            let anchors = lifting::maps_extending(h, &fu, limit)?;
            for v in anchors {
                if prune {
                    let problem = LiftingProblem::new(h.clone(), f.clone(), u.clone(), v.clone())?;
                    if !lifting::solve_limited(&problem, 1, limit)?.is_empty() {
                        continue;
                    }
                }
                triples.push(Triple {
                    generator: gen,
                    attach: u.clone(),
                    anchor: v,
                });
            }
        }
    }
    Ok(triples)
}

/// One pushout step: attaches every triple at once and induces the residual.
/// With no triples the factorization is `(id, f)` and no stage is recorded.
pub fn one_step(
    f: &PresheafMap,
    source: &MorphismClassSource,
    prune: bool,
    limit: SearchLimit,
) -> Result<(PresheafMap, PresheafMap, Option<SoaStage>), SoaError> {
    let triples = collect_triples(f, source, prune, limit)?;
    if triples.is_empty() {
        return Ok((
            PresheafMap::identity(f.source()),
            f.clone(),
            None,
        ));
    }
    let stage = push_stage(f, source, triples)?;
    Ok((
        stage.stage_map.clone(),
        stage.residual.clone(),
        Some(stage),
    ))
}

fn push_stage(
    f: &PresheafMap,
    source: &MorphismClassSource,
    triples: Vec<Triple>,
) -> Result<SoaStage, SoaError> {
    let base = Arc::clone(f.base());
    let doms: Vec<TabularPresheaf> = triples
        .iter()
        .map(|t| source.generators[t.generator].source().clone())
        .collect();
    let cods: Vec<TabularPresheaf> = triples
        .iter()
        .map(|t| source.generators[t.generator].target().clone())
        .collect();
    let (cd, dom_inj) = colimits::coproduct(&doms, &base)?;
    let (cc, cod_inj) = colimits::coproduct(&cods, &base)?;
    let attach = lifting::tuple_map(&cd, f.source(), &dom_inj, |t, a, x| {
        triples[t].attach.apply(a, x)
    })?;
    let bundle = lifting::tuple_map(&cd, &cc, &dom_inj, |t, a, x| {
        cod_inj[t].apply(a, source.generators[triples[t].generator].apply(a, x))
    })?;
    let pushout = colimits::pushout(&attach, &bundle)?;
    // residual induced by (f, <v>): commutes because each triple commutes
    let anchors = lifting::tuple_map(&cc, f.target(), &cod_inj, |t, a, x| {
        triples[t].anchor.apply(a, x)
    })?;
    let residual = pushout.mediate(f, &anchors)?;
    Ok(SoaStage {
        triples,
        coproduct_dom: cd,
        coproduct_cod: cc,
        attach,
        bundle,
        stage_map: pushout.left,
        cocone_leg: pushout.right,
        residual,
    })
}

/// Iterated one-step factorization with solved-triple pruning.
///
/// Stops at the first stage with zero surviving triples (Fixpoint; the
/// residual's lifting property against every generator is then verified
/// outright) or after `max_stages` stages (BudgetExhausted; the certificate
/// carries the partial composite and claims nothing about the residual).
pub fn factorize(
    f: &PresheafMap,
    source: &MorphismClassSource,
    cfg: &BoundednessConfig,
    limit: SearchLimit,
) -> Result<FactorizationCertificate, SoaError> {
    cfg.validate()?;
    let mut stages: Vec<SoaStage> = Vec::new();
    let mut composite = PresheafMap::identity(f.source());
    let mut residual = f.clone();
    let status = loop {
        let triples = collect_triples(&residual, source, cfg.prune_solved, limit)?;
        if triples.is_empty() {
            break SoaStatus::Fixpoint;
        }
        if stages.len() >= cfg.max_stages {
            break SoaStatus::BudgetExhausted(stages.len());
        }
        let stage = push_stage(&residual, source, triples)?;
        composite = PresheafMap::compose(&stage.stage_map, &composite)?;
        residual = stage.residual.clone();
        stages.push(stage);
    };
    if status == SoaStatus::Fixpoint {
        for (gen, h) in source.generators.iter().enumerate() {
            if !lifting::box_rel(h, &residual, limit)? {
                return Err(SoaError::RuleUnsound { generator: gen });
            }
        }
    }
    Ok(FactorizationCertificate {
        original: f.clone(),
        stages,
        composite,
        residual,
        status,
    })
}

/// Weak reflection of `K` into the injectives: the factorization of `K -> 1`.
#[derive(Debug, Clone)]
pub struct WeakReflection {
    /// `r: K -> K*`, the cellular part
    pub map: PresheafMap,
    pub reflection: TabularPresheaf,
    pub certificate: FactorizationCertificate,
}

pub fn weak_reflection(
    k: &TabularPresheaf,
    source: &MorphismClassSource,
    cfg: &BoundednessConfig,
    limit: SearchLimit,
) -> Result<WeakReflection, SoaError> {
    let bang = PresheafMap::to_terminal(k);
    let certificate = factorize(&bang, source, cfg, limit)?;
    Ok(WeakReflection {
        map: certificate.composite.clone(),
        reflection: certificate.middle_object().clone(),
        certificate,
    })
}

/// Checks that the colimit of a chain of injectives is injective. Each
/// chain object is required to pass the injectivity check up front; a
/// `false` answer for the apex would witness an implementation bug rather
/// than a mathematical possibility, so callers treat it as a failure.
pub fn injectivity_colimit_check(
    first: &TabularPresheaf,
    chain: &[PresheafMap],
    source: &MorphismClassSource,
    limit: SearchLimit,
) -> Result<bool, SoaError> {
    let mut objects = vec![first.clone()];
    for m in chain {
        objects.push(m.target().clone());
    }
    for x in &objects {
        if !lifting::injective(x, &source.generators, limit)? {
            return Ok(false);
        }
    }
    let cocone = colimits::chain_colimit(first, chain)?;
    Ok(lifting::injective(&cocone.apex, &source.generators, limit)?)
}

/// Alternating factorization against a union of two classes: full
/// factorization passes against `source_a` and `source_b` in turn, until a
/// round attaches nothing (Fixpoint, with the residual verified against
/// both classes) or the round bound is hit. The certificate is expressed
/// over the concatenated generator list `a ++ b`.
pub fn union_factorize(
    f: &PresheafMap,
    source_a: &MorphismClassSource,
    source_b: &MorphismClassSource,
    cfg: &BoundednessConfig,
    limit: SearchLimit,
) -> Result<FactorizationCertificate, SoaError> {
    cfg.validate()?;
    let offset = source_a.generators.len();
    let mut stages: Vec<SoaStage> = Vec::new();
    let mut composite = PresheafMap::identity(f.source());
    let mut residual = f.clone();
    let mut status = SoaStatus::BudgetExhausted(0);
    for _round in 0..cfg.max_stages {
        let mut attached = 0usize;
        for (which, src) in [(0usize, source_a), (1usize, source_b)] {
            let pass = factorize(&residual, src, cfg, limit)?;
            attached += pass.stages.len();
            for mut stage in pass.stages {
                if which == 1 {
                    for t in &mut stage.triples {
                        t.generator += offset;
                    }
                }
                stages.push(stage);
            }
            composite = PresheafMap::compose(&pass.composite, &composite)?;
            residual = pass.residual.clone();
        }
        if attached == 0 {
            status = SoaStatus::Fixpoint;
            break;
        }
        status = SoaStatus::BudgetExhausted(stages.len());
    }
    if status == SoaStatus::Fixpoint {
        let all: Vec<&PresheafMap> = source_a
            .generators
            .iter()
            .chain(source_b.generators.iter())
            .collect();
        for (gen, h) in all.iter().enumerate() {
            if !lifting::box_rel(h, &residual, limit)? {
                return Err(SoaError::RuleUnsound { generator: gen });
            }
        }
    }
    Ok(FactorizationCertificate {
        original: f.clone(),
        stages,
        composite,
        residual,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::terminal_category;
    use crate::lifting::verify_cellular;

    fn set(names: &[&str]) -> TabularPresheaf {
        TabularPresheaf::constant_set(terminal_category(), names)
    }

    fn set_map(src: &TabularPresheaf, tgt: &TabularPresheaf, images: &[usize]) -> PresheafMap {
        PresheafMap::new(src.clone(), tgt.clone(), vec![images.to_vec()]).unwrap()
    }

    fn point_generator() -> MorphismClassSource {
        let empty = TabularPresheaf::initial(terminal_category());
        let one = set(&["c"]);
        MorphismClassSource::new(vec![PresheafMap::new(empty, one, vec![vec![]]).unwrap()])
    }

    #[test]
    fn empty_class_fixpoint_immediately() {
        let a = set(&["a"]);
        let b = set(&["b0", "b1"]);
        let f = set_map(&a, &b, &[0]);
        let cert = factorize(
            &f,
            &MorphismClassSource::new(vec![]),
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(cert.status, SoaStatus::Fixpoint);
        assert!(cert.stages.is_empty());
        assert!(cert.composite.is_identity());
        assert_eq!(cert.residual, f);
        assert!(cert.factors_exactly());
    }

    #[test]
    fn iso_has_no_unsolved_triples() {
        let a = set(&["a", "b"]);
        let f = PresheafMap::identity(&a);
        let triples =
            collect_triples(&f, &point_generator(), true, SearchLimit::default()).unwrap();
        assert!(triples.is_empty());
    }

    #[test]
    fn point_attachments_fill_empty_source() {
        // f: 0 -> T with |T| = 3 over C = {0 -> 1}: three unsolved triples,
        // one stage, and the middle object is T-sized
        let empty = TabularPresheaf::initial(terminal_category());
        let t3 = set(&["t0", "t1", "t2"]);
        let f = PresheafMap::new(empty, t3.clone(), vec![vec![]]).unwrap();
        let src = point_generator();
        let triples = collect_triples(&f, &src, true, SearchLimit::default()).unwrap();
        assert_eq!(triples.len(), 3);
        let cert = factorize(
            &f,
            &src,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(cert.status, SoaStatus::Fixpoint);
        assert_eq!(cert.stages.len(), 1);
        assert_eq!(cert.middle_object().total_elements(), 3);
        assert!(cert.residual.is_iso());
        assert!(cert.factors_exactly());
        assert!(verify_cellular(&cert.cellular(), &src.generators).is_ok());
    }

    #[test]
    fn one_step_without_triples_is_identity_factorization() {
        let a = set(&["a"]);
        let b = set(&["b0", "b1"]);
        let f = set_map(&a, &b, &[1]);
        let (first, second, stage) = one_step(
            &f,
            &MorphismClassSource::new(vec![]),
            true,
            SearchLimit::default(),
        )
        .unwrap();
        assert!(first.is_identity());
        assert_eq!(second, f);
        assert!(stage.is_none());
    }

    #[test]
    fn perturbed_certificate_fails_at_the_right_stage() {
        use crate::lifting::{verify_cellular, LiftError};
        let empty = TabularPresheaf::initial(terminal_category());
        let t3 = set(&["t0", "t1", "t2"]);
        let f = PresheafMap::new(empty, t3, vec![vec![]]).unwrap();
        let src = point_generator();
        let cert = factorize(
            &f,
            &src,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        let mut cellular = cert.cellular();
        // dropping an attachment shrinks the recomputed pushout, so the
        // claimed square is no longer a pushout
        cellular.stages[0].attachments.pop();
        match verify_cellular(&cellular, &src.generators) {
            Err(LiftError::BadStage { stage: 0, .. }) => {}
            other => panic!("expected BadStage(0), got {other:?}"),
        }
    }

    #[test]
    fn weak_reflection_of_empty_is_singleton() {
        let empty = TabularPresheaf::initial(terminal_category());
        let r = weak_reflection(
            &empty,
            &point_generator(),
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(r.certificate.status, SoaStatus::Fixpoint);
        assert_eq!(r.reflection.total_elements(), 1);
    }

    #[test]
    fn already_injective_reflects_along_identity() {
        let x = set(&["x0", "x1"]);
        let r = weak_reflection(
            &x,
            &point_generator(),
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(r.certificate.stages.len(), 0);
        assert!(r.map.is_identity());
    }

    #[test]
    fn injectivity_closed_under_chain_colimits() {
        let src = point_generator();
        let x0 = set(&["a"]);
        let x1 = set(&["a", "b"]);
        let x2 = set(&["a", "b", "c"]);
        let chain = vec![set_map(&x0, &x1, &[0]), set_map(&x1, &x2, &[0, 1])];
        assert!(
            injectivity_colimit_check(&x0, &chain, &src, SearchLimit::default()).unwrap()
        );
        // single-object chain reduces to plain injectivity
        assert!(injectivity_colimit_check(&x0, &[], &src, SearchLimit::default()).unwrap());
    }

    #[test]
    fn union_with_empty_class_agrees_with_plain_factorize() {
        let empty = TabularPresheaf::initial(terminal_category());
        let t2 = set(&["t0", "t1"]);
        let f = PresheafMap::new(empty, t2, vec![vec![]]).unwrap();
        let a = point_generator();
        let b = MorphismClassSource::new(vec![]);
        let plain = factorize(
            &f,
            &a,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        let union = union_factorize(
            &f,
            &a,
            &b,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(union.status, SoaStatus::Fixpoint);
        assert_eq!(
            union.middle_object().total_elements(),
            plain.middle_object().total_elements()
        );
        assert_eq!(union.stages.len(), plain.stages.len());
    }

    #[test]
    fn union_of_equal_classes_matches_plain_factorize() {
        let empty = TabularPresheaf::initial(terminal_category());
        let t2 = set(&["t0", "t1"]);
        let f = PresheafMap::new(empty, t2, vec![vec![]]).unwrap();
        let src = point_generator();
        let plain = factorize(
            &f,
            &src,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        let union = union_factorize(
            &f,
            &src,
            &src,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(union.status, SoaStatus::Fixpoint);
        assert_eq!(
            union.middle_object().total_elements(),
            plain.middle_object().total_elements()
        );
        for h in &src.generators {
            assert_eq!(
                lifting::box_rel(h, &union.residual, SearchLimit::default()).unwrap(),
                lifting::box_rel(h, &plain.residual, SearchLimit::default()).unwrap()
            );
        }
    }

    #[test]
    fn union_residual_lands_in_both_right_classes() {
        // srcA = {0 -> 1}, srcB = {2 -> 1}: factorize 0 -> 1
        let empty = TabularPresheaf::initial(terminal_category());
        let one = set(&["p"]);
        let two = set(&["x", "y"]);
        let a = point_generator();
        let fold = set_map(&two, &one, &[0, 0]);
        let b = MorphismClassSource::new(vec![fold]);
        let f = PresheafMap::new(empty, one, vec![vec![]]).unwrap();
        let cert = union_factorize(
            &f,
            &a,
            &b,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(cert.status, SoaStatus::Fixpoint);
        for h in a.generators.iter().chain(&b.generators) {
            assert!(lifting::box_rel(h, &cert.residual, SearchLimit::default()).unwrap());
        }
        assert!(cert.factors_exactly());
    }

    #[test]
    fn reruns_serialize_byte_identically() {
        let empty = TabularPresheaf::initial(terminal_category());
        let t3 = set(&["t0", "t1", "t2"]);
        let f = PresheafMap::new(empty, t3, vec![vec![]]).unwrap();
        let src = point_generator();
        let serialize = || {
            let cert = factorize(
                &f,
                &src,
                &BoundednessConfig::default(),
                SearchLimit::default(),
            )
            .unwrap();
            crate::io::to_json_line(&crate::io::certificate_file(&cert)).unwrap()
        };
        assert_eq!(serialize(), serialize());
    }

    #[test]
    fn zero_max_stages_is_a_config_error() {
        let cfg = BoundednessConfig {
            max_stages: 0,
            prune_solved: true,
        };
        assert!(matches!(cfg.validate(), Err(SoaError::BadConfig)));
    }

    #[test]
    fn idempotent_on_right_class() {
        // f already has the lifting property against the fold generator
        let one = set(&["p"]);
        let two = set(&["x", "y"]);
        let fold = set_map(&two, &one.clone(), &[0, 0]);
        let src = MorphismClassSource::new(vec![fold]);
        let iso = PresheafMap::identity(&one);
        let cert = factorize(
            &iso,
            &src,
            &BoundednessConfig::default(),
            SearchLimit::default(),
        )
        .unwrap();
        assert_eq!(cert.status, SoaStatus::Fixpoint);
        assert_eq!(cert.stages.len(), 0);
    }
}
